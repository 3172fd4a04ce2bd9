// Finite taut open covers of a metric graph by connected sets.
//
// Tautness: (1) whenever two member closures meet, the members themselves
// meet; (2) every member contains a point outside all other member closures.
// Both conditions, the covering property, and all diameters are validated
// with exact arithmetic at construction time.
#pragma once

#include "shadowcert/pl_map.hpp"

namespace shadowcert {

class TautCover {
 public:
  // Validates: every member open, connected, nonempty; the union covers the
  // graph; both tautness conditions hold.  Throws construction_error.
  TautCover(GraphPtr g, std::vector<Region> members);

  const GraphPtr& graph() const { return g_; }
  int size() const { return static_cast<int>(members_.size()); }
  const Region& member(int i) const { return members_[i]; }
  const Region& closure_of(int i) const { return closures_[i]; }
  bool closures_meet(int i, int j) const { return meet_[i * size() + j] != 0; }
  const Rat& member_diameter(int i) const { return diam_[i]; }
  Rat max_member_diameter() const;

  // inf_x max_i d(x, complement of U_i); every set of diameter below this
  // lies inside a single member.  Cached.
  const Rat& lebesgue() const;

  // Least index whose open member contains p, or -1.
  int member_containing(const GraphPoint& p) const;
  std::vector<int> members_containing(const GraphPoint& p) const;

 private:
  GraphPtr g_;
  std::vector<Region> members_;
  std::vector<Region> closures_;
  std::vector<char> meet_;
  std::vector<Rat> diam_;
  mutable std::optional<Rat> lebesgue_;
};

// Lebesgue number of an arbitrary finite open cover of the graph (members
// need not be taut).  When a member is the whole graph the value degenerates
// to half the graph diameter.
Rat lebesgue_number(GraphPtr g, const std::vector<Region>& members);

// Points of U_i at distance more than eta from every other member closure.
// May be empty (eta too large); exact.
Region core_set(const TautCover& c, int i, const Rat& eta);
// All core sets at once; shares the eta-neighborhood computations.
std::vector<Region> core_sets(const TautCover& c, const Rat& eta);

// Builds a taut cover whose member diameters and image diameters under f are
// below eps/5: a ball around every vertex plus a chain of overlapping
// intervals along every edge, sized from eps and the Lipschitz modulus of f.
// A request with eps/5 above the graph diameter yields the one-member cover.
TautCover build_taut_cover(const PLMap& f, const Rat& eps);

}  // namespace shadowcert
