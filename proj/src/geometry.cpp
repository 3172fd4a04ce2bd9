#include "shadowcert/geometry.hpp"

#include <algorithm>
#include <array>

namespace shadowcert {

Rat graph_distance(const MetricGraph& g, const GraphPoint& a, const GraphPoint& b) {
  return g.distance(a, b);
}

namespace {

// Closure of a region as explicit elements: member vertices plus closed boxes.
struct ClosedElems {
  std::vector<int> verts;
  struct Box {
    int edge;
    Rat lo, hi;
  };
  std::vector<Box> boxes;
};

ClosedElems closed_elements(const Region& r) {
  Region cl = r.closure();
  const MetricGraph& g = *r.graph();
  ClosedElems out;
  for (int v = 0; v < g.vertex_count(); ++v)
    if (cl.has_vertex(v)) out.verts.push_back(v);
  for (int e = 0; e < g.edge_count(); ++e)
    for (const Interval& iv : cl.on_edge(e).parts) out.boxes.push_back({e, iv.lo, iv.hi});
  return out;
}

Rat vert_interval_distance(const MetricGraph& g, int v, int e, const Rat& lo, const Rat& hi) {
  const Edge& ed = g.edge(e);
  return rat_min(g.vertex_distance(v, ed.from) + lo, g.vertex_distance(v, ed.to) + (ed.length - hi));
}

Rat interval_pair_distance(const MetricGraph& g, int ea, const Rat& alo, const Rat& ahi, int eb,
                           const Rat& blo, const Rat& bhi) {
  const Edge& A = g.edge(ea);
  const Edge& B = g.edge(eb);
  Rat side_a[2] = {alo, A.length - ahi};
  int end_a[2] = {A.from, A.to};
  Rat side_b[2] = {blo, B.length - bhi};
  int end_b[2] = {B.from, B.to};
  Rat best = side_a[0] + g.vertex_distance(end_a[0], end_b[0]) + side_b[0];
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) {
      Rat c = side_a[i] + g.vertex_distance(end_a[i], end_b[j]) + side_b[j];
      if (c < best) best = c;
    }
  if (ea == eb) {
    Rat gap = rat_max(Rat(0), rat_max(blo - ahi, alo - bhi));
    best = rat_min(best, gap);
  }
  return best;
}

}  // namespace

Rat vertex_region_distance(const MetricGraph& g, int v, const Region& r) {
  ClosedElems el = closed_elements(r);
  if (el.verts.empty() && el.boxes.empty()) throw input_error("distance to empty region");
  std::optional<Rat> best;
  for (int w : el.verts) {
    Rat c = g.vertex_distance(v, w);
    if (!best || c < *best) best = c;
  }
  for (const auto& b : el.boxes) {
    Rat c = vert_interval_distance(g, v, b.edge, b.lo, b.hi);
    if (!best || c < *best) best = c;
  }
  return *best;
}

Rat point_region_distance(const MetricGraph& g, const GraphPoint& p, const Region& r) {
  if (p.is_vertex()) return vertex_region_distance(g, p.vertex, r);
  ClosedElems el = closed_elements(r);
  if (el.verts.empty() && el.boxes.empty()) throw input_error("distance to empty region");
  const Edge& ed = g.edge(p.edge);
  Rat via_from = p.offset + vertex_region_distance(g, ed.from, r);
  Rat via_to = (ed.length - p.offset) + vertex_region_distance(g, ed.to, r);
  Rat best = rat_min(via_from, via_to);
  for (const auto& b : el.boxes) {
    if (b.edge != p.edge) continue;
    Rat gap = rat_max(Rat(0), rat_max(b.lo - p.offset, p.offset - b.hi));
    best = rat_min(best, gap);
  }
  return best;
}

Rat region_distance(const Region& a, const Region& b) {
  const MetricGraph& g = *a.graph();
  ClosedElems ea = closed_elements(a);
  ClosedElems eb = closed_elements(b);
  if ((ea.verts.empty() && ea.boxes.empty()) || (eb.verts.empty() && eb.boxes.empty()))
    throw input_error("distance to empty region");
  std::optional<Rat> best;
  auto consider = [&](const Rat& c) {
    if (!best || c < *best) best = c;
  };
  for (int v : ea.verts)
    for (int w : eb.verts) consider(g.vertex_distance(v, w));
  for (int v : ea.verts)
    for (const auto& bx : eb.boxes) consider(vert_interval_distance(g, v, bx.edge, bx.lo, bx.hi));
  for (const auto& bx : ea.boxes)
    for (int w : eb.verts) consider(vert_interval_distance(g, w, bx.edge, bx.lo, bx.hi));
  for (const auto& ba : ea.boxes)
    for (const auto& bb : eb.boxes)
      consider(interval_pair_distance(g, ba.edge, ba.lo, ba.hi, bb.edge, bb.lo, bb.hi));
  return *best;
}

bool region_intersects(const Region& a, const Region& b) { return a.intersects(b); }

namespace {

struct P2 {
  Rat t, s;
};

struct Term {
  Rat at, as, c;
  Rat eval(const P2& p) const { return at * p.t + as * p.s + c; }
};

using Halfplane = std::array<Rat, 3>;  // a*t + b*s + c >= 0

std::vector<P2> clip_halfplane(const std::vector<P2>& poly, const Halfplane& h) {
  std::vector<P2> out;
  size_t n = poly.size();
  for (size_t i = 0; i < n; ++i) {
    const P2& P = poly[i];
    const P2& Q = poly[(i + 1) % n];
    Rat fp = h[0] * P.t + h[1] * P.s + h[2];
    Rat fq = h[0] * Q.t + h[1] * Q.s + h[2];
    if (fp >= 0) out.push_back(P);
    if ((fp > 0 && fq < 0) || (fp < 0 && fq > 0)) {
      Rat lam = fp / (fp - fq);
      out.push_back({P.t + (Q.t - P.t) * lam, P.s + (Q.s - P.s) * lam});
    }
  }
  return out;
}

// Max over the convex polygon of min over terms.  Min of affines is concave,
// so the max sits at a polygon vertex, at a two-term crossing on a polygon
// edge, or at a triple point inside; all are enumerated.
Rat max_min_over_polygon(const std::vector<P2>& poly, const std::vector<Term>& terms,
                         const std::vector<Halfplane>& bounds) {
  auto inside = [&](const P2& p) {
    for (const Halfplane& h : bounds)
      if (h[0] * p.t + h[1] * p.s + h[2] < 0) return false;
    return true;
  };
  auto min_at = [&](const P2& p) {
    Rat m = terms[0].eval(p);
    for (size_t i = 1; i < terms.size(); ++i) m = rat_min(m, terms[i].eval(p));
    return m;
  };
  std::optional<Rat> best;
  auto consider = [&](const P2& p) {
    Rat v = min_at(p);
    if (!best || v > *best) best = v;
  };
  if (poly.size() < 1) return Rat(0);
  for (const P2& p : poly) consider(p);
  size_t n = poly.size();
  for (size_t i = 0; i < terms.size(); ++i)
    for (size_t j = i + 1; j < terms.size(); ++j) {
      Rat dat = terms[i].at - terms[j].at;
      Rat das = terms[i].as - terms[j].as;
      Rat dc = terms[i].c - terms[j].c;
      // Crossing line dat*t + das*s + dc = 0 against polygon edges.
      for (size_t e = 0; e < n; ++e) {
        const P2& P = poly[e];
        const P2& Q = poly[(e + 1) % n];
        Rat fp = dat * P.t + das * P.s + dc;
        Rat fq = dat * Q.t + das * Q.s + dc;
        if (fp == fq) continue;
        Rat lam = fp / (fp - fq);
        if (lam < 0 || lam > 1) continue;
        consider({P.t + (Q.t - P.t) * lam, P.s + (Q.s - P.s) * lam});
      }
      // Triple points with a third term.
      for (size_t k = 0; k < terms.size(); ++k) {
        if (k == i || k == j) continue;
        Rat eat = terms[i].at - terms[k].at;
        Rat eas = terms[i].as - terms[k].as;
        Rat ec = terms[i].c - terms[k].c;
        Rat det = dat * eas - das * eat;
        if (det == 0) continue;
        P2 p{(-dc * eas + das * ec) / det, (-dat * ec + eat * dc) / det};
        if (inside(p)) consider(p);
      }
    }
  return *best;
}

// Max over [t0,t1] x [s0,s1] of the pairwise distance between (ea, t) and
// (eb, s).
Rat box_pair_max_distance(const MetricGraph& g, int ea, const Rat& t0, const Rat& t1, int eb,
                          const Rat& s0, const Rat& s1) {
  const Edge& A = g.edge(ea);
  const Edge& B = g.edge(eb);
  std::vector<Term> terms;
  // exits: t or (La - t) to an endpoint of A, then to an endpoint of B.
  const Rat one(1), neg(-1), zero(0);
  terms.push_back({one, one, g.vertex_distance(A.from, B.from)});
  terms.push_back({one, neg, g.vertex_distance(A.from, B.to) + B.length});
  terms.push_back({neg, one, g.vertex_distance(A.to, B.from) + A.length});
  terms.push_back({neg, neg, g.vertex_distance(A.to, B.to) + A.length + B.length});
  std::vector<Halfplane> box = {{one, zero, -t0}, {neg, zero, t1}, {zero, one, -s0}, {zero, neg, s1}};
  std::vector<P2> poly = {{t0, s0}, {t1, s0}, {t1, s1}, {t0, s1}};
  if (ea != eb) return max_min_over_polygon(poly, terms, box);
  // Same edge: |t - s| is an extra path; split along the diagonal.
  Rat best(0);
  {
    std::vector<Term> tri_terms = terms;
    tri_terms.push_back({neg, one, zero});  // s - t on s >= t
    std::vector<Halfplane> hb = box;
    hb.push_back({neg, one, zero});
    std::vector<P2> tri = clip_halfplane(poly, {neg, one, zero});
    if (tri.size() >= 1) best = rat_max(best, max_min_over_polygon(tri, tri_terms, hb));
  }
  {
    std::vector<Term> tri_terms = terms;
    tri_terms.push_back({one, neg, zero});  // t - s on t >= s
    std::vector<Halfplane> hb = box;
    hb.push_back({one, neg, zero});
    std::vector<P2> tri = clip_halfplane(poly, {one, neg, zero});
    if (tri.size() >= 1) best = rat_max(best, max_min_over_polygon(tri, tri_terms, hb));
  }
  return best;
}

// Max over t in [t0,t1] of d((e,t), v): min of two affine climbs.
Rat box_vertex_max_distance(const MetricGraph& g, int e, const Rat& t0, const Rat& t1, int v) {
  const Edge& E = g.edge(e);
  Rat df = g.vertex_distance(E.from, v);
  Rat dt = g.vertex_distance(E.to, v);
  auto val = [&](const Rat& t) { return rat_min(t + df, (E.length - t) + dt); };
  Rat best = rat_max(val(t0), val(t1));
  // Crossing of the two terms.
  Rat tc = (E.length + dt - df) / 2;
  if (tc > t0 && tc < t1) best = rat_max(best, val(tc));
  return best;
}

}  // namespace

Rat region_diameter(const Region& r) {
  if (r.empty()) throw input_error("diameter of empty region");
  const MetricGraph& g = *r.graph();
  ClosedElems el = closed_elements(r);
  Rat best(0);
  for (size_t i = 0; i < el.verts.size(); ++i)
    for (size_t j = i; j < el.verts.size(); ++j)
      best = rat_max(best, g.vertex_distance(el.verts[i], el.verts[j]));
  for (int v : el.verts)
    for (const auto& b : el.boxes)
      best = rat_max(best, box_vertex_max_distance(g, b.edge, b.lo, b.hi, v));
  for (size_t i = 0; i < el.boxes.size(); ++i)
    for (size_t j = i; j < el.boxes.size(); ++j) {
      const auto& a = el.boxes[i];
      const auto& b = el.boxes[j];
      best = rat_max(best, box_pair_max_distance(g, a.edge, a.lo, a.hi, b.edge, b.lo, b.hi));
    }
  return best;
}

PLFunction edge_point_distance_profile(const MetricGraph& g, int e, const GraphPoint& p) {
  const Edge& ed = g.edge(e);
  Rat df = graph_distance(g, g.vertex_point(ed.from), p);
  Rat dt = graph_distance(g, g.vertex_point(ed.to), p);
  PLFunction f = PLFunction::affine(0, ed.length, df, df + ed.length);
  f = f.min_with(PLFunction::affine(0, ed.length, dt + ed.length, dt));
  if (!p.is_vertex() && p.edge == e)
    f = f.min_with(PLFunction::abs_dist(0, ed.length, p.offset));
  return f;
}

namespace {
// t -> distance along the edge to [lo, hi]; zero inside.
PLFunction dist_to_span(const Rat& L, const Rat& lo, const Rat& hi) {
  PLFunction f;
  if (lo > 0) {
    f.xs.push_back(0);
    f.ys.push_back(lo);
  }
  f.xs.push_back(lo);
  f.ys.push_back(0);
  if (hi != lo) {
    f.xs.push_back(hi);
    f.ys.push_back(0);
  }
  if (hi < L) {
    f.xs.push_back(L);
    f.ys.push_back(L - hi);
  }
  if (f.xs.size() < 2) return PLFunction::constant(0, L, 0);
  return f;
}
}  // namespace

PLFunction edge_distance_profile(const MetricGraph& g, int e, const Region& r) {
  const Edge& ed = g.edge(e);
  Rat df = vertex_region_distance(g, ed.from, r);
  Rat dt = vertex_region_distance(g, ed.to, r);
  PLFunction f = PLFunction::affine(0, ed.length, df, df + ed.length);
  f = f.min_with(PLFunction::affine(0, ed.length, dt + ed.length, dt));
  for (const Interval& iv : r.on_edge(e).parts)
    f = f.min_with(dist_to_span(ed.length, iv.lo, iv.hi));
  return f;
}

namespace {
Region sublevel_region(GraphPtr g, const std::vector<PLFunction>& per_edge,
                       const std::vector<Rat>& vertex_values, const Rat& level, bool strict) {
  Region out(g);
  for (int e = 0; e < g->edge_count(); ++e) {
    for (const Interval& iv : per_edge[e].sublevel(level, strict))
      out.add_interval(e, iv.lo, iv.hi, iv.lo_closed, iv.hi_closed);
  }
  for (int v = 0; v < g->vertex_count(); ++v) {
    bool in = strict ? vertex_values[v] < level : vertex_values[v] <= level;
    if (in) out.add_vertex(v);
  }
  out.normalize();
  return out;
}
}  // namespace

Region ball(GraphPtr g, const GraphPoint& center, const Rat& radius) {
  if (radius <= 0) throw input_error("ball radius must be positive");
  std::vector<PLFunction> profiles;
  for (int e = 0; e < g->edge_count(); ++e)
    profiles.push_back(edge_point_distance_profile(*g, e, center));
  std::vector<Rat> vv;
  for (int v = 0; v < g->vertex_count(); ++v)
    vv.push_back(graph_distance(*g, g->vertex_point(v), center));
  return sublevel_region(g, profiles, vv, radius, true);
}

Region closed_ball(GraphPtr g, const GraphPoint& center, const Rat& radius) {
  if (radius < 0) throw input_error("ball radius must be nonnegative");
  if (radius == 0) return Region::point(g, center);
  std::vector<PLFunction> profiles;
  for (int e = 0; e < g->edge_count(); ++e)
    profiles.push_back(edge_point_distance_profile(*g, e, center));
  std::vector<Rat> vv;
  for (int v = 0; v < g->vertex_count(); ++v)
    vv.push_back(graph_distance(*g, g->vertex_point(v), center));
  return sublevel_region(g, profiles, vv, radius, false);
}

Region neighborhood(const Region& r, const Rat& eta) {
  if (eta <= 0) throw input_error("neighborhood radius must be positive");
  GraphPtr g = r.graph();
  std::vector<PLFunction> profiles;
  for (int e = 0; e < g->edge_count(); ++e) profiles.push_back(edge_distance_profile(*g, e, r));
  std::vector<Rat> vv;
  for (int v = 0; v < g->vertex_count(); ++v) vv.push_back(vertex_region_distance(*g, v, r));
  return sublevel_region(g, profiles, vv, eta, true);
}

Region closed_neighborhood(const Region& r, const Rat& eta) {
  if (eta < 0) throw input_error("neighborhood radius must be nonnegative");
  if (eta == 0) return r.closure();
  GraphPtr g = r.graph();
  std::vector<PLFunction> profiles;
  for (int e = 0; e < g->edge_count(); ++e) profiles.push_back(edge_distance_profile(*g, e, r));
  std::vector<Rat> vv;
  for (int v = 0; v < g->vertex_count(); ++v) vv.push_back(vertex_region_distance(*g, v, r));
  return sublevel_region(g, profiles, vv, eta, false);
}

std::pair<GraphPoint, Rat> farthest_point(const Region& r, const GraphPoint& anchor) {
  if (r.empty()) throw input_error("farthest_point of empty region");
  if (!r.is_closed()) throw input_error("farthest_point requires a closed region");
  const GraphPtr& g = r.graph();
  std::optional<Rat> best;
  GraphPoint arg;
  auto consider = [&](const GraphPoint& p, const Rat& v) {
    if (!best || v > *best) {
      best = v;
      arg = p;
    } else if (v == *best && p < arg) {
      arg = p;
    }
  };
  for (int v = 0; v < g->vertex_count(); ++v)
    if (r.has_vertex(v)) {
      GraphPoint p = g->vertex_point(v);
      consider(p, graph_distance(*g, p, anchor));
    }
  for (int e = 0; e < g->edge_count(); ++e) {
    if (r.on_edge(e).empty()) continue;
    PLFunction prof = edge_point_distance_profile(*g, e, anchor);
    for (const Interval& iv : r.on_edge(e).parts) {
      if (iv.lo == iv.hi) {
        consider(g->point(e, iv.lo), prof.eval(iv.lo));
        continue;
      }
      auto [val, at] = prof.restrict_to(iv.lo, iv.hi).max_point();
      consider(g->point(e, at), val);
    }
  }
  return {arg, *best};
}

}  // namespace shadowcert
