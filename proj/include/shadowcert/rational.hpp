// Exact rational scalars and small helpers shared across the library.
#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>

namespace shadowcert {

using Rat = mpq_class;

struct input_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct construction_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct certificate_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// "p/q" with q omitted when 1.  Always canonical.
std::string rat_str(const Rat& r);

// Parses "p", "p/q" or decimal "a.b" (exact).  Empty optional on malformed input.
std::optional<Rat> rat_parse(const std::string& s);

inline Rat rat_abs(const Rat& r) { return r < 0 ? Rat(-r) : r; }

inline Rat rat_min(const Rat& a, const Rat& b) { return a < b ? a : b; }
inline Rat rat_max(const Rat& a, const Rat& b) { return a > b ? a : b; }

// floor(r) as an integer rational.
Rat rat_floor(const Rat& r);

// A point of the open interval (lo, hi) whose denominator is a power of two,
// biased toward the left end.  Requires lo < hi.
Rat dyadic_inside(const Rat& lo, const Rat& hi);

// As above but the k-th dyadic grid point inside (lo, hi), with k reduced
// modulo the number of available grid points.  Used for seeded sampling.
Rat dyadic_inside_at(const Rat& lo, const Rat& hi, std::uint64_t k);

double rat_double(const Rat& r);

// Deterministic splitmix-style stream; used wherever sampling must be
// reproducible across platforms and thread schedules.
struct SplitMix {
  std::uint64_t state;
  explicit SplitMix(std::uint64_t seed) : state(seed) {}
  std::uint64_t next() {
    state += 0x9e3779b97f4a7c15ull;
    std::uint64_t z = state;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
  }
  // Uniform in [0, n).
  std::uint64_t below(std::uint64_t n) { return n ? next() % n : 0; }
};

inline std::uint64_t mix_seed(std::uint64_t a, std::uint64_t b) {
  SplitMix s(a ^ (0x516cc61c074a2ec1ull + (b << 1)));
  s.next();
  return s.next();
}

}  // namespace shadowcert
