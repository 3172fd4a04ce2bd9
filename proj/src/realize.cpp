#include "shadowcert/realize.hpp"

#include <algorithm>

#include "shadowcert/geometry.hpp"

namespace shadowcert {

namespace {

void check_pattern(const TautCover& c, const std::vector<int>& pattern) {
  if (pattern.empty()) throw input_error("pattern is empty");
  for (int j : pattern)
    if (j < 0 || j >= c.size()) throw input_error("pattern index out of cover range");
}

}  // namespace

RealizationResult realize_pattern(const PLMap& h, const TautCover& c,
                                  const std::vector<int>& pattern) {
  if (h.graph() != c.graph()) throw input_error("map and cover live on different graphs");
  check_pattern(c, pattern);
  const int n = static_cast<int>(pattern.size());
  RealizationResult res;
  res.trace.assign(n, Region::empty(h.graph()));
  res.trace[n - 1] = c.closure_of(pattern[n - 1]);
  for (int i = n - 2; i >= 0; --i) {
    res.trace[i] = c.closure_of(pattern[i]).intersected(h.preimage_region(res.trace[i + 1]));
    if (res.trace[i].empty()) return res;  // dead already; earlier entries stay empty
  }
  res.realized = true;
  // Closed nonempty region, so the minimum is attained.
  GraphPoint z = res.trace[0].min_point();
  GraphPoint w = z;
  for (int i = 0; i < n; ++i) {
    if (!c.closure_of(pattern[i]).contains(w))
      throw construction_error("realization witness failed exact re-verification");
    if (i + 1 < n) w = h.evaluate(w);
  }
  res.witness = z;
  return res;
}

// The nested-preimage set ∩_i f^{-i}(B(x_i, eps)) is detected through its
// forward sweep V_i = f(V_{i-1}) ∩ B(x_i, eps): V_i collects the step-i
// positions of orbits viable so far, so the intersection is nonempty exactly
// when every V_i is.  The sweep keeps region sizes linear where the raw
// preimage chain multiplies parts at every fold of f.
ShadowingResult check_shadowing(const PLMap& f, const PseudoOrbit& po, const Rat& eps) {
  if (eps <= 0) throw input_error("shadowing radius must be positive");
  if (po.points.empty()) throw input_error("pseudo-orbit is empty");
  const GraphPtr& g = f.graph();
  const int n = static_cast<int>(po.points.size());
  std::vector<Region> viable;
  viable.reserve(n);
  viable.push_back(ball(g, po.points[0], eps));
  ShadowingResult res;
  for (int i = 1; i < n; ++i) {
    if (viable.back().empty()) return res;
    viable.push_back(f.image_region(viable.back()).intersected(ball(g, po.points[i], eps)));
  }
  if (viable.back().empty()) return res;
  res.shadowed = true;
  // Witness: pull a point of V_{n-1} back one exact preimage at a time.
  GraphPoint z = viable[n - 1].representative();
  for (int i = n - 2; i >= 0; --i) {
    Region pre = f.preimage_region(Region::point(g, z)).intersected(viable[i]);
    if (pre.empty()) throw construction_error("shadowing witness extraction lost its preimage");
    z = pre.representative();
  }
  GraphPoint y = z;
  for (int i = 0; i < n; ++i) {
    if (!(g->distance(y, po.points[i]) < eps))
      throw construction_error("shadowing witness failed exact re-verification");
    if (i + 1 < n) y = f.evaluate(y);
  }
  res.witness = z;
  return res;
}

namespace {

// Flattened enumeration of grid points: vertices first, then the
// resolution-1 interior points of each edge in id order.
struct GridIndex {
  GraphPtr g;
  long resolution;
  std::vector<long> base;
  long total = 0;

  GridIndex(GraphPtr gp, long res) : g(std::move(gp)), resolution(res) {
    total = g->vertex_count();
    base.resize(g->edge_count());
    for (int e = 0; e < g->edge_count(); ++e) {
      base[e] = total;
      total += resolution - 1;
    }
  }

  GraphPoint point_at(long idx) const {
    if (idx < g->vertex_count()) return g->vertex_point(static_cast<int>(idx));
    int e = static_cast<int>(std::upper_bound(base.begin(), base.end(), idx) - base.begin()) - 1;
    long k = idx - base[e] + 1;
    return g->point(e, g->edge(e).length * k / resolution);
  }
};

bool passes_chain(const PLMap& h, const std::vector<const Region*>& fat, const GraphPoint& z) {
  GraphPoint w = z;
  for (std::size_t i = 0; i < fat.size(); ++i) {
    if (!fat[i]->contains(w)) return false;
    if (i + 1 < fat.size()) w = h.evaluate(w);
  }
  return true;
}

OracleResult grid_oracle_impl(const PLMap& h, const TautCover& c,
                              const std::vector<int>& pattern, long resolution, bool parallel) {
  if (h.graph() != c.graph()) throw input_error("map and cover live on different graphs");
  check_pattern(c, pattern);
  if (resolution < 1) throw input_error("resolution must be at least 1");
  const GraphPtr& g = h.graph();

  Rat cell(0);
  for (int e = 0; e < g->edge_count(); ++e) cell = rat_max(cell, g->edge(e).length / resolution);
  std::vector<std::optional<Region>> fat_member(c.size());
  std::vector<const Region*> fat;
  fat.reserve(pattern.size());
  for (int j : pattern) {
    if (!fat_member[j]) fat_member[j] = closed_neighborhood(c.closure_of(j), cell);
    fat.push_back(&*fat_member[j]);
  }

  GridIndex gi(g, resolution);
  const long block = 4096;
  OracleResult res;
  for (long b0 = 0; b0 < gi.total && !res.realized; b0 += block) {
    const long b1 = std::min(gi.total, b0 + block);
    long found = b1;
    if (parallel) {
#pragma omp parallel for schedule(dynamic, 64) reduction(min : found)
      for (long idx = b0; idx < b1; ++idx)
        if (passes_chain(h, fat, gi.point_at(idx))) found = std::min(found, idx);
    } else {
      for (long idx = b0; idx < b1; ++idx)
        if (passes_chain(h, fat, gi.point_at(idx))) {
          found = idx;
          break;
        }
    }
    if (found < b1) {
      res.realized = true;
      GraphPoint z = gi.point_at(found);
      res.witness = z;
      res.exact_membership = true;
      GraphPoint w = z;
      for (std::size_t i = 0; i < pattern.size(); ++i) {
        if (!c.closure_of(pattern[i]).contains(w)) {
          res.exact_membership = false;
          break;
        }
        if (i + 1 < pattern.size()) w = h.evaluate(w);
      }
    }
  }
  return res;
}

}  // namespace

OracleResult grid_oracle(const PLMap& h, const TautCover& c, const std::vector<int>& pattern,
                         long resolution) {
  return grid_oracle_impl(h, c, pattern, resolution, true);
}

OracleResult grid_oracle_serial(const PLMap& h, const TautCover& c,
                                const std::vector<int>& pattern, long resolution) {
  return grid_oracle_impl(h, c, pattern, resolution, false);
}

}  // namespace shadowcert
