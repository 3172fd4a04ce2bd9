#include "shadowcert/system_io.hpp"

#include <cstdio>
#include <functional>
#include <string>

#include "helpers.hpp"

using namespace shadowcert;
using namespace shadowcert::test;

namespace {

std::string message_of(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const std::exception& e) {
    return e.what();
  }
  return "";
}

bool mentions(const std::string& text, const std::string& needle) {
  return text.find(needle) != std::string::npos;
}

}  // namespace

TEST_CASE("descriptions round-trip byte for byte") {
  GraphPtr g = systems::unit_interval();
  SystemDescription sd;
  sd.graph = g;
  sd.maps.emplace_back("tent", systems::tent_map(g));
  sd.covers.emplace_back("c3", systems::tent_cover3(g));
  PseudoOrbit po = generate_pseudo_orbit(systems::tent_map(g), q("1/20"), 8,
                                         OrbitStrategy::Random, 2);
  po.generator = "tent";
  sd.orbits.emplace_back("walk", po);
  sd.patterns.emplace_back("pat", std::vector<int>{0, 1, 1, 2});
  add_certificate(sd, "cert", certify_perturbation(systems::tent_map(g), q("1/3"), 2));

  std::string once = format_system(sd);
  SystemDescription back = parse_system(once, "mem");
  CHECK(format_system(back) == once);

  CHECK(back.graph->same_shape(*g));
  CHECK(sup_distance(back.find_map("tent"), sd.find_map("tent")) == 0);
  CHECK(back.find_pattern("pat") == std::vector<int>{0, 1, 1, 2});
  CHECK(back.find_orbit("walk").points == po.points);
  ShadowingCertificate cert = materialize(back, back.find_certificate("cert"));
  validate_certificate(cert);
}

TEST_CASE("parse failures carry origin, line, and column") {
  std::string base =
      "%sysdesc 1\n"
      "graph\n"
      "  vertices 2\n"
      "  edge 1 2 1\n"
      "end\n";

  CHECK(mentions(message_of([&] { parse_system("%sysdesc 2\n", "f"); }),
                 "expected version line"));

  CHECK(mentions(message_of([&] { parse_system(base + "blargh\nend\n", "f"); }), "f:6:1"));

  std::string bad_offset = base +
      "orbit walk\n"
      "  delta 1/20\n"
      "  point 1 5/4\n"
      "end\n";
  std::string msg = message_of([&] { parse_system(bad_offset, "f"); });
  CHECK(mentions(msg, "edge 1"));
  CHECK(mentions(msg, "f:8:"));

  std::string dangling = base +
      "certificate c\n"
      "  cover missing\n"
      "  map g\n"
      "  source g\n"
      "  eps 1/4\n  n 2\n  gamma 1/100\n  delta 1/50\n  tau 1/10\n"
      "  xi 1/20\n  eta 1/30\n  lambda 1/60\n  surjective 0\n  seed 0\n"
      "end\n";
  CHECK(mentions(message_of([&] { parse_system(dangling, "f"); }),
                 "unknown cover 'missing'"));

  CHECK(mentions(message_of([&] { parse_system("%sysdesc 1\nmap m\nend\n", "f"); }),
                 "graph"));

  std::string no_delta = base +
      "orbit walk\n"
      "  point 1 1/2\n"
      "end\n";
  CHECK(mentions(message_of([&] { parse_system(no_delta, "f"); }), "delta"));
}

TEST_CASE("certificates survive a disk round-trip intact") {
  GraphPtr g = systems::unit_interval();
  PLMap t = systems::tent_map(g);
  ShadowingCertificate cert = certify_perturbation(t, q("1/4"), 2);
  std::string path = "roundtrip_cert.desc";
  save_certificate(cert, path);
  ShadowingCertificate back = load_certificate(path);
  std::remove(path.c_str());

  validate_certificate(back);
  CHECK(back.gamma == cert.gamma);
  CHECK(back.delta == cert.delta);
  CHECK(sup_distance(back.g, cert.g) == 0);
  CHECK(verify_ball(back, 4, 3, 20, 9).to_json() == verify_ball(cert, 4, 3, 20, 9).to_json());
}
