// Finitely-described subsets of a metric graph: on every edge a finite union
// of intervals with open/closed endpoint flags, plus a set of vertices.
// Canonical form keeps interval interiors strictly inside the open edge, so
// set equality is structural equality.
#pragma once

#include <memory>
#include <optional>
#include <vector>

#include "shadowcert/metric_graph.hpp"

namespace shadowcert {

using GraphPtr = std::shared_ptr<const MetricGraph>;

struct Interval {
  Rat lo, hi;
  bool lo_closed = false;
  bool hi_closed = false;

  bool operator==(const Interval& o) const {
    return lo == o.lo && hi == o.hi && lo_closed == o.lo_closed && hi_closed == o.hi_closed;
  }
  bool contains(const Rat& t) const {
    if (t < lo || t > hi) return false;
    if (t == lo && !lo_closed) return false;
    if (t == hi && !hi_closed) return false;
    return true;
  }
  Rat length() const { return hi - lo; }
};

// Sorted, disjoint, non-mergeable intervals.  Only describes interior points
// of an edge: canonical intervals satisfy lo_closed => lo > 0 and
// hi_closed => hi < L for the owning edge.
struct IntervalSet {
  std::vector<Interval> parts;

  bool empty() const { return parts.empty(); }
  bool contains(const Rat& t) const;
  Rat total_length() const;
  bool operator==(const IntervalSet& o) const { return parts == o.parts; }
};

IntervalSet iv_normalize(std::vector<Interval> raw);
IntervalSet iv_union(const IntervalSet& a, const IntervalSet& b);
IntervalSet iv_intersect(const IntervalSet& a, const IntervalSet& b);
// Complement within the open interval (0, L).
IntervalSet iv_complement(const IntervalSet& a, const Rat& L);
IntervalSet iv_subtract(const IntervalSet& a, const IntervalSet& b, const Rat& L);

class Region {
 public:
  Region() = default;
  explicit Region(GraphPtr g);

  static Region empty(GraphPtr g) { return Region(std::move(g)); }
  static Region full(GraphPtr g);
  static Region point(GraphPtr g, const GraphPoint& p);
  // Subset of the closed edge [0, L]; endpoint flags at 0/L admit the vertex.
  static Region edge_interval(GraphPtr g, int e, const Rat& lo, const Rat& hi, bool lo_closed,
                              bool hi_closed);

  const GraphPtr& graph() const { return g_; }
  bool empty() const;
  bool contains(const GraphPoint& p) const;
  const IntervalSet& on_edge(int e) const { return by_edge_[e]; }
  bool has_vertex(int v) const { return verts_[v] != 0; }
  const std::vector<char>& vertex_flags() const { return verts_; }

  Region united(const Region& o) const;
  Region intersected(const Region& o) const;
  Region subtracted(const Region& o) const;
  Region complemented() const;
  Region closure() const;

  bool is_open() const;
  bool is_closed() const;
  bool intersects(const Region& o) const;
  bool contains_region(const Region& o) const;
  bool operator==(const Region& o) const;

  bool connected() const;
  std::vector<Region> components() const;

  // Least point under GraphPoint order; requires the minimum to be attained.
  GraphPoint min_point() const;
  // Deterministic member of a nonempty region (open regions included).
  GraphPoint representative() const;

  // Builders; call normalize() once after a batch of adds.
  void add_interval(int e, const Rat& lo, const Rat& hi, bool lo_closed, bool hi_closed);
  void add_vertex(int v);
  void add_point(const GraphPoint& p);
  void normalize();

 private:
  void check_compatible(const Region& o) const;

  GraphPtr g_;
  std::vector<IntervalSet> by_edge_;
  std::vector<char> verts_;
  std::vector<Interval> pending_;          // raw adds per edge, folded in by normalize()
  std::vector<int> pending_edge_;
  mutable std::optional<bool> connected_;  // cache
};

}  // namespace shadowcert
