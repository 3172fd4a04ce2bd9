// Piecewise-linear self-maps of a metric graph.  Each edge carries segments;
// a segment sends its domain interval at constant speed along a walk, an
// oriented chain of edge sub-arcs.  All queries are exact.
#pragma once

#include <functional>
#include <optional>

#include "shadowcert/geometry.hpp"
#include "shadowcert/region.hpp"

namespace shadowcert {

struct WalkStep {
  int edge = -1;
  Rat a, b;  // traversed from offset a to offset b; a == b only in a point walk

  bool operator==(const WalkStep& o) const { return edge == o.edge && a == o.a && b == o.b; }
  Rat span() const { return rat_abs(b - a); }
};

struct Walk {
  std::vector<WalkStep> steps;

  bool operator==(const Walk& o) const { return steps == o.steps; }
  Rat length() const;
  GraphPoint start(const MetricGraph& g) const;
  GraphPoint end(const MetricGraph& g) const;
  Walk reversed() const;

  // Appends a step, fusing with the previous one when collinear.
  void push(const MetricGraph& g, int edge, const Rat& a, const Rat& b);
};

struct Segment {
  Rat lo, hi;  // domain on the owning edge, lo < hi
  Walk walk;

  bool operator==(const Segment& o) const { return lo == o.lo && hi == o.hi && walk == o.walk; }
};

// Index entry: one walk step and the span it covers on its image edge.
struct StepRef {
  Rat lo, hi;   // covered offsets, lo <= hi
  Rat pos0;     // walk position at the step start within its segment
  int dom_edge;
  int seg;
  int step;
};

class PLMap {
 public:
  // Validates coverage, walk well-formedness, and continuity (adjacent
  // segments and all edge ends at every vertex).
  PLMap(GraphPtr g, std::vector<std::vector<Segment>> by_edge);

  static PLMap identity(GraphPtr g);
  static PLMap constant(GraphPtr g, const GraphPoint& value);
  // Convenience for single-edge graphs: breakpoints (x, y) with straight
  // monotone walks between consecutive images.
  static PLMap interval_map(GraphPtr g, const std::vector<std::pair<Rat, Rat>>& points);

  const GraphPtr& graph() const { return g_; }
  const std::vector<Segment>& on_edge(int e) const { return by_edge_[e]; }
  GraphPoint vertex_image(int v) const { return vertex_val_[v]; }

  GraphPoint evaluate(const GraphPoint& p) const;
  GraphPoint iterate(const GraphPoint& p, int n) const;

  Region image_region(const Region& r) const;
  Region preimage_region(const Region& r) const;
  Region image_full() const;
  bool is_surjective() const;

  // Maximum speed: exact Lipschitz constant of the map.
  Rat lipschitz_modulus() const;
  // Largest delta with d(x,y) < delta => d(f(x), f(y)) < eps; empty when the
  // map is constant (any delta works).
  std::optional<Rat> continuity_modulus(const Rat& eps) const;

  PLMap compose_after(const PLMap& inner) const;  // x -> this(inner(x))

  int segment_count() const;

  // Segment covering parameter t on edge e (ties resolve to the later one).
  const Segment& segment_at(int e, const Rat& t, int* index = nullptr) const;
  // Walk position of parameter t within segment seg_index of edge e.
  Rat position_of(int e, int seg_index, const Rat& t) const;
  // Point reached at walk position pos within a segment.
  GraphPoint walk_point(int e, int seg_index, const Rat& pos) const;
  // Total walk length of a segment.
  const Rat& walk_length(int e, int seg_index) const { return prefix_[e][seg_index]; }

  // Calls fn for every walk step whose span on image edge e meets [qlo, qhi].
  void steps_overlapping(int e, const Rat& qlo, const Rat& qhi,
                         const std::function<void(const StepRef&)>& fn) const;

 private:
  GraphPtr g_;
  std::vector<std::vector<Segment>> by_edge_;
  std::vector<std::vector<Rat>> prefix_;  // per edge, per segment: total walk length
  std::vector<GraphPoint> vertex_val_;
  std::vector<std::vector<StepRef>> hits_;  // per image edge, sorted by span lo
  std::vector<std::vector<Rat>> hits_maxhi_;  // prefix maxima of span hi
};

// sup_x d(f(x), g(x)); exact.  Structurally identical segments are skipped.
Rat sup_distance(const PLMap& f, const PLMap& g);
// Same restricted to the closure of r.
Rat sup_distance_on(const PLMap& f, const PLMap& g, const Region& r);

// Extracts the sub-walk between positions p0 <= p1 of a segment walk.
Walk subwalk(const MetricGraph& g, const Walk& w, const std::vector<Rat>& prefix, const Rat& p0,
             const Rat& p1);
std::vector<Rat> walk_prefix(const Walk& w);

// A PL retraction r onto a closed target region: r(X) inside the target,
// r restricted to the target is the identity, and every fiber has diameter
// at most fiber_bound.  All three conditions are checked exactly.
struct Retraction {
  PLMap map;
  Region target;
  Rat fiber_bound;

  static Retraction validate(PLMap map, Region target, const Rat& fiber_bound);
  static Retraction identity(GraphPtr g);
  bool is_identity() const;
};

}  // namespace shadowcert
