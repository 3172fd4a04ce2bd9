// Compares the OpenMP kernels against their single-threaded reference
// implementations and reports speedups.  Results must match exactly; a
// mismatch aborts.
#include <chrono>
#include <cstdio>
#include <vector>

#include "shadowcert/certificate.hpp"
#include "shadowcert/realize.hpp"
#include "shadowcert/systems.hpp"
#include "shadowcert/verify.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

using namespace shadowcert;
using Clock = std::chrono::steady_clock;

namespace {

double seconds(Clock::time_point a, Clock::time_point b) {
  return std::chrono::duration<double>(b - a).count();
}

void row(const char* kernel, double serial, double parallel) {
  std::printf("%-24s %10.3fs %10.3fs %8.2fx\n", kernel, serial, parallel,
              parallel > 0 ? serial / parallel : 0.0);
}

}  // namespace

int main(int argc, char** argv) {
  int samples = 12, orbits = 8, length = 60;
  long resolution = 1 << 12;
  if (argc > 1 && std::string(argv[1]) == "--quick") {
    samples = 4;
    orbits = 3;
    length = 25;
    resolution = 1 << 10;
  }

#ifdef _OPENMP
  std::printf("threads: %d\n", omp_get_max_threads());
#else
  std::printf("threads: 1 (no OpenMP)\n");
#endif

  auto sys = systems::by_name("tent");
  ShadowingCertificate cert = certify_perturbation(sys.map, Rat(1, 4), 2, {});

  auto t0 = Clock::now();
  VerificationReport rs = verify_ball_serial(cert, samples, orbits, length, 2024);
  auto t1 = Clock::now();
  VerificationReport rp = verify_ball(cert, samples, orbits, length, 2024);
  auto t2 = Clock::now();
  if (rs.to_json() != rp.to_json()) {
    std::fprintf(stderr, "verify_ball parallel/serial reports differ\n");
    return 1;
  }
  std::printf("%-24s %10s %10s %8s\n", "kernel", "serial", "parallel", "speedup");
  row("verify_ball", seconds(t0, t1), seconds(t1, t2));

  // Oracle scans over a spread of stored patterns from the certified relation.
  std::vector<std::vector<int>> patterns;
  PatternStream stream(cert.phi, std::nullopt, 3);
  std::vector<int> p;
  while (patterns.size() < 24 && stream.next(p)) patterns.push_back(p);

  t0 = Clock::now();
  std::vector<OracleResult> serial_res;
  for (const auto& pat : patterns)
    serial_res.push_back(grid_oracle_serial(cert.g, cert.cover, pat, resolution));
  t1 = Clock::now();
  std::vector<OracleResult> parallel_res;
  for (const auto& pat : patterns)
    parallel_res.push_back(grid_oracle(cert.g, cert.cover, pat, resolution));
  t2 = Clock::now();
  for (std::size_t i = 0; i < patterns.size(); ++i) {
    if (serial_res[i].realized != parallel_res[i].realized ||
        serial_res[i].witness != parallel_res[i].witness) {
      std::fprintf(stderr, "grid_oracle parallel/serial results differ on pattern %zu\n", i);
      return 1;
    }
  }
  row("grid_oracle", seconds(t0, t1), seconds(t1, t2));
  std::printf("results identical across implementations\n");
  return 0;
}
