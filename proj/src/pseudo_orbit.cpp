#include "shadowcert/pseudo_orbit.hpp"

#include "shadowcert/geometry.hpp"

namespace shadowcert {

bool pseudo_orbit_valid(const PLMap& f, const PseudoOrbit& po) {
  if (po.points.empty() || po.delta <= 0) return false;
  for (size_t i = 0; i + 1 < po.points.size(); ++i) {
    Rat gap = graph_distance(*f.graph(), po.points[i + 1], f.evaluate(po.points[i]));
    if (!(gap < po.delta)) return false;
  }
  return true;
}

GraphPoint region_sample(const Region& r, SplitMix& rng) {
  if (r.empty()) throw input_error("region_sample: empty region");
  const GraphPtr& g = r.graph();
  std::vector<GraphPoint> verts;
  for (int v = 0; v < g->vertex_count(); ++v)
    if (r.has_vertex(v)) verts.push_back(g->vertex_point(v));
  std::uint64_t n_intervals = 0;
  for (int e = 0; e < g->edge_count(); ++e) n_intervals += r.on_edge(e).parts.size();
  std::uint64_t pick = rng.below(verts.size() + n_intervals);
  if (pick < verts.size()) return verts[pick];
  pick -= verts.size();
  for (int e = 0; e < g->edge_count(); ++e) {
    const auto& parts = r.on_edge(e).parts;
    if (pick >= parts.size()) {
      pick -= parts.size();
      continue;
    }
    const Interval& iv = parts[pick];
    if (iv.lo == iv.hi) return g->point(e, iv.lo);
    return g->point(e, dyadic_inside_at(iv.lo, iv.hi, rng.next()));
  }
  throw construction_error("region_sample: inconsistent region");
}

PseudoOrbit generate_pseudo_orbit(const PLMap& f, const Rat& delta, int length,
                                  OrbitStrategy strategy, std::uint64_t seed,
                                  std::optional<GraphPoint> start, const TautCover* cover,
                                  const std::vector<int>* pattern) {
  if (delta <= 0) throw input_error("generate_pseudo_orbit: delta must be positive");
  if (length < 1) throw input_error("generate_pseudo_orbit: length must be positive");
  GraphPtr g = f.graph();
  SplitMix rng(mix_seed(seed, 0x70b1u));
  PseudoOrbit po;
  po.delta = delta;
  switch (strategy) {
    case OrbitStrategy::Random: {
      po.points.push_back(start ? *start : region_sample(Region::full(g), rng));
      for (int i = 1; i < length; ++i) {
        Region b = ball(g, f.evaluate(po.points.back()), delta);
        po.points.push_back(region_sample(b, rng));
      }
      break;
    }
    case OrbitStrategy::Drift: {
      GraphPoint anchor = start ? *start : g->vertex_point(0);
      po.points.push_back(anchor);
      Rat step = delta * 99 / 100;
      for (int i = 1; i < length; ++i) {
        Region b = closed_ball(g, f.evaluate(po.points.back()), step);
        po.points.push_back(farthest_point(b, anchor).first);
      }
      break;
    }
    case OrbitStrategy::PatternGuided: {
      if (!cover || !pattern) throw input_error("pattern-guided generation needs cover + pattern");
      if (static_cast<int>(pattern->size()) < length)
        throw input_error("pattern-guided generation: pattern shorter than orbit");
      for (int j : *pattern)
        if (j < 0 || j >= cover->size()) throw input_error("pattern index out of range");
      // Backward feasibility regions: from F[i] the rest of the pattern is
      // reachable with delta-gaps.
      std::vector<Region> feas(length, Region::empty(g));
      feas[length - 1] = cover->member((*pattern)[length - 1]);
      for (int i = length - 2; i >= 0; --i) {
        Region reach = f.preimage_region(neighborhood(feas[i + 1], delta));
        feas[i] = cover->member((*pattern)[i]).intersected(reach);
        if (feas[i].empty())
          throw construction_error("pattern-guided generation: step " + std::to_string(i) +
                                   " infeasible");
      }
      po.points.push_back(region_sample(feas[0], rng));
      for (int i = 1; i < length; ++i) {
        Region b = ball(g, f.evaluate(po.points.back()), delta);
        Region choice = feas[i].intersected(b);
        if (choice.empty())
          throw construction_error("pattern-guided generation: empty forward choice");
        po.points.push_back(region_sample(choice, rng));
      }
      break;
    }
  }
  if (!pseudo_orbit_valid(f, po))
    throw construction_error("generate_pseudo_orbit: gap invariant violated");
  return po;
}

std::vector<int> assign_pattern(const PseudoOrbit& po, const PLMap& f, const TautCover& c) {
  if (!(po.delta <= c.lebesgue()))
    throw input_error("assign_pattern: delta exceeds the Lebesgue number");
  std::vector<int> out;
  out.reserve(po.points.size());
  for (size_t i = 0; i < po.points.size(); ++i) {
    std::optional<GraphPoint> prev_image;
    if (i > 0) prev_image = f.evaluate(po.points[i - 1]);
    int found = -1;
    for (int j = 0; j < c.size() && found < 0; ++j) {
      if (!c.member(j).contains(po.points[i])) continue;
      if (prev_image && !c.member(j).contains(*prev_image)) continue;
      found = j;
    }
    if (found < 0) throw construction_error("assign_pattern: no member admits the pair");
    out.push_back(found);
  }
  return out;
}

}  // namespace shadowcert
