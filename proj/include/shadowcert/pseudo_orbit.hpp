// Finite pseudo-orbits: point sequences whose steps land within delta of the
// image of the previous point.  Generation strategies and exact validation.
#pragma once

#include "shadowcert/cover.hpp"
#include "shadowcert/transition.hpp"

namespace shadowcert {

struct PseudoOrbit {
  std::vector<GraphPoint> points;
  Rat delta;
  std::string generator;  // informational: name of the producing map
};

enum class OrbitStrategy { Random, Drift, PatternGuided };

// d(x_{i+1}, f(x_i)) < delta for every consecutive pair; exact.
bool pseudo_orbit_valid(const PLMap& f, const PseudoOrbit& po);

// Deterministic sample of a nonempty region (dyadic offsets, seeded).
GraphPoint region_sample(const Region& r, SplitMix& rng);

// Strategies:
//   Random        seeded point in the open delta-ball around each image;
//   Drift         steps at distance 99/100*delta maximizing distance from the
//                 start point (adversarial for maps close to the identity);
//   PatternGuided points follow a given cover-pattern walk; the orbit visits
//                 U_{pattern[i]} at step i.  Requires cover and pattern.
// The result always validates exactly; infeasible guided patterns throw
// construction_error.
PseudoOrbit generate_pseudo_orbit(const PLMap& f, const Rat& delta, int length,
                                  OrbitStrategy strategy, std::uint64_t seed,
                                  std::optional<GraphPoint> start = std::nullopt,
                                  const TautCover* cover = nullptr,
                                  const std::vector<int>* pattern = nullptr);

// Least cover index per point with x_i in U_j and, past the first point,
// f(x_{i-1}) in U_j as well.  Requires delta at most the Lebesgue number.
std::vector<int> assign_pattern(const PseudoOrbit& po, const PLMap& f, const TautCover& c);

}  // namespace shadowcert
