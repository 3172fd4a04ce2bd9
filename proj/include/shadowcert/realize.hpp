// Exact pattern realization via backward preimage intersection, exact
// finite-horizon shadowing verdicts, plus an independent grid brute-force
// oracle.
#pragma once

#include "shadowcert/pseudo_orbit.hpp"

namespace shadowcert {

struct RealizationResult {
  bool realized = false;
  std::optional<GraphPoint> witness;  // lexicographically least point of the
                                      // realizing region when realized
  // trace[i]: points z at pattern position i with h^m(z) in cl U_{pattern[i+m]}
  // for the rest of the pattern.  trace[0] is the realizing region.
  std::vector<Region> trace;
};

// Nonempty intersection cl U_{j0} ∩ h^{-1}(cl U_{j1}) ∩ ... computed
// backwards; exact.  Returned witnesses are re-verified by iteration.
RealizationResult realize_pattern(const PLMap& h, const TautCover& c,
                                  const std::vector<int>& pattern);

struct ShadowingResult {
  bool shadowed = false;
  std::optional<GraphPoint> witness;
};

// Is some true orbit of f within eps of every orbit point?  Exact; the
// witness satisfies d(f^i(z), x_i) < eps for all i.
ShadowingResult check_shadowing(const PLMap& f, const PseudoOrbit& po, const Rat& eps);

struct OracleResult {
  bool realized = false;                    // a grid point passed the fattened chain
  std::optional<GraphPoint> witness;        // first such grid point
  bool exact_membership = false;            // witness also passes exact closures
};

// Tests every grid point at spacing edge_length/resolution against the
// pattern's member closures fattened by one grid cell.  One-sided: an exact
// realization with interior width above the grid spacing is always found.
OracleResult grid_oracle(const PLMap& h, const TautCover& c, const std::vector<int>& pattern,
                         long resolution);
// Single-threaded reference with identical results.
OracleResult grid_oracle_serial(const PLMap& h, const TautCover& c,
                                const std::vector<int>& pattern, long resolution);

}  // namespace shadowcert
