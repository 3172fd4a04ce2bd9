#include "shadowcert/pl_map.hpp"

#include <algorithm>
#include <map>

namespace shadowcert {

Rat Walk::length() const {
  Rat s = 0;
  for (const WalkStep& st : steps) s += st.span();
  return s;
}

GraphPoint Walk::start(const MetricGraph& g) const {
  if (steps.empty()) throw input_error("empty walk");
  return g.point(steps.front().edge, steps.front().a);
}

GraphPoint Walk::end(const MetricGraph& g) const {
  if (steps.empty()) throw input_error("empty walk");
  return g.point(steps.back().edge, steps.back().b);
}

Walk Walk::reversed() const {
  Walk w;
  w.steps.reserve(steps.size());
  for (auto it = steps.rbegin(); it != steps.rend(); ++it) w.steps.push_back({it->edge, it->b, it->a});
  return w;
}

void Walk::push(const MetricGraph& g, int edge, const Rat& a, const Rat& b) {
  if (!steps.empty()) {
    WalkStep& last = steps.back();
    if (a == b) return;  // nothing to add
    if (last.a == last.b && steps.size() == 1) {
      // Replace a point walk when the continuation starts at the same point.
      if (g.point(last.edge, last.b) == g.point(edge, a)) {
        steps.back() = {edge, a, b};
        return;
      }
      throw construction_error("walk push: disconnected step");
    }
    if (!(g.point(last.edge, last.b) == g.point(edge, a)))
      throw construction_error("walk push: disconnected step");
    if (last.edge == edge && last.b == a && (b - a) * (last.b - last.a) > 0) {
      last.b = b;
      return;
    }
    steps.push_back({edge, a, b});
    return;
  }
  steps.push_back({edge, a, b});
}

std::vector<Rat> walk_prefix(const Walk& w) {
  std::vector<Rat> pre;
  pre.reserve(w.steps.size() + 1);
  Rat s = 0;
  pre.push_back(s);
  for (const WalkStep& st : w.steps) {
    s += st.span();
    pre.push_back(s);
  }
  return pre;
}

Walk subwalk(const MetricGraph& g, const Walk& w, const std::vector<Rat>& prefix, const Rat& p0,
             const Rat& p1) {
  if (p0 > p1 || p0 < 0 || p1 > prefix.back()) throw input_error("subwalk: bad positions");
  Walk out;
  if (p0 == p1) {
    // Point walk at position p0.
    for (size_t k = 0; k < w.steps.size(); ++k) {
      if (p0 <= prefix[k + 1]) {
        const WalkStep& st = w.steps[k];
        Rat off = st.b > st.a ? Rat(st.a + (p0 - prefix[k])) : Rat(st.a - (p0 - prefix[k]));
        out.steps.push_back({st.edge, off, off});
        return out;
      }
    }
    const WalkStep& st = w.steps.back();
    out.steps.push_back({st.edge, st.b, st.b});
    return out;
  }
  for (size_t k = 0; k < w.steps.size(); ++k) {
    Rat qa = rat_max(p0, prefix[k]);
    Rat qb = rat_min(p1, prefix[k + 1]);
    if (qa >= qb) continue;
    const WalkStep& st = w.steps[k];
    bool fwd = st.b > st.a;
    Rat oa = fwd ? Rat(st.a + (qa - prefix[k])) : Rat(st.a - (qa - prefix[k]));
    Rat ob = fwd ? Rat(st.a + (qb - prefix[k])) : Rat(st.a - (qb - prefix[k]));
    out.steps.push_back({st.edge, oa, ob});
  }
  if (out.steps.empty()) throw construction_error("subwalk: empty result");
  return out;
}

PLMap::PLMap(GraphPtr g, std::vector<std::vector<Segment>> by_edge)
    : g_(std::move(g)), by_edge_(std::move(by_edge)) {
  const int E = g_->edge_count();
  if (static_cast<int>(by_edge_.size()) != E) throw input_error("PLMap: segment table size");
  if (E == 0) throw input_error("PLMap: graph needs edges");
  prefix_.resize(E);
  for (int e = 0; e < E; ++e) {
    const Rat& L = g_->edge(e).length;
    auto& segs = by_edge_[e];
    if (segs.empty()) throw input_error("PLMap: edge without segments");
    std::sort(segs.begin(), segs.end(),
              [](const Segment& a, const Segment& b) { return a.lo < b.lo; });
    if (segs.front().lo != 0 || segs.back().hi != L)
      throw input_error("PLMap: segments must cover the edge");
    prefix_[e].resize(segs.size());
    for (size_t i = 0; i < segs.size(); ++i) {
      const Segment& s = segs[i];
      if (!(s.lo < s.hi)) throw input_error("PLMap: empty segment domain");
      if (i > 0 && segs[i - 1].hi != s.lo) throw input_error("PLMap: segment gap");
      if (s.walk.steps.empty()) throw input_error("PLMap: empty walk");
      for (size_t k = 0; k < s.walk.steps.size(); ++k) {
        const WalkStep& st = s.walk.steps[k];
        if (st.edge < 0 || st.edge >= E) throw input_error("PLMap: walk step edge");
        const Rat& WL = g_->edge(st.edge).length;
        if (st.a < 0 || st.a > WL || st.b < 0 || st.b > WL)
          throw input_error("PLMap: walk step offset");
        if (st.a == st.b && s.walk.steps.size() > 1)
          throw input_error("PLMap: degenerate step in long walk");
        if (k > 0 && !(g_->point(s.walk.steps[k - 1].edge, s.walk.steps[k - 1].b) ==
                       g_->point(st.edge, st.a)))
          throw input_error("PLMap: disconnected walk");
      }
      prefix_[e][i] = walk_prefix(s.walk).back();
      if (i > 0) {
        if (!(segs[i - 1].walk.end(*g_) == s.walk.start(*g_)))
          throw input_error("PLMap: discontinuity between segments");
      }
    }
  }
  // Vertex values: all incident edge ends must agree.
  vertex_val_.resize(g_->vertex_count());
  std::vector<char> seen(g_->vertex_count(), 0);
  auto note = [&](int v, const GraphPoint& val) {
    if (!seen[v]) {
      seen[v] = 1;
      vertex_val_[v] = val;
    } else if (!(vertex_val_[v] == val)) {
      throw input_error("PLMap: discontinuity at vertex " + g_->vertex_name(v));
    }
  };
  for (int e = 0; e < E; ++e) {
    const Edge& ed = g_->edge(e);
    note(ed.from, by_edge_[e].front().walk.start(*g_));
    note(ed.to, by_edge_[e].back().walk.end(*g_));
  }
  for (int v = 0; v < g_->vertex_count(); ++v)
    if (!seen[v]) throw input_error("PLMap: isolated vertex has no image");
  // Image-side step index.
  hits_.resize(E);
  hits_maxhi_.resize(E);
  for (int e = 0; e < E; ++e) {
    for (size_t si = 0; si < by_edge_[e].size(); ++si) {
      const Walk& w = by_edge_[e][si].walk;
      Rat pos = 0;
      for (size_t k = 0; k < w.steps.size(); ++k) {
        const WalkStep& st = w.steps[k];
        StepRef ref;
        ref.lo = rat_min(st.a, st.b);
        ref.hi = rat_max(st.a, st.b);
        ref.pos0 = pos;
        ref.dom_edge = e;
        ref.seg = static_cast<int>(si);
        ref.step = static_cast<int>(k);
        hits_[st.edge].push_back(std::move(ref));
        pos += st.span();
      }
    }
  }
  for (int e = 0; e < E; ++e) {
    auto& v = hits_[e];
    std::sort(v.begin(), v.end(), [](const StepRef& a, const StepRef& b) { return a.lo < b.lo; });
    hits_maxhi_[e].resize(v.size());
    Rat m(-1);
    for (size_t i = 0; i < v.size(); ++i) {
      m = rat_max(m, v[i].hi);
      hits_maxhi_[e][i] = m;
    }
  }
}

void PLMap::steps_overlapping(int e, const Rat& qlo, const Rat& qhi,
                              const std::function<void(const StepRef&)>& fn) const {
  const auto& v = hits_[e];
  if (v.empty()) return;
  // Last entry with lo <= qhi.
  size_t lo = 0, hi = v.size();
  while (lo < hi) {
    size_t mid = (lo + hi) / 2;
    if (v[mid].lo <= qhi)
      lo = mid + 1;
    else
      hi = mid;
  }
  for (size_t i = lo; i-- > 0;) {
    if (hits_maxhi_[e][i] < qlo) break;  // nothing earlier reaches qlo
    if (v[i].hi >= qlo) fn(v[i]);
  }
}

PLMap PLMap::identity(GraphPtr g) {
  std::vector<std::vector<Segment>> by_edge(g->edge_count());
  for (int e = 0; e < g->edge_count(); ++e) {
    Segment s;
    s.lo = 0;
    s.hi = g->edge(e).length;
    s.walk.steps.push_back({e, Rat(0), g->edge(e).length});
    by_edge[e].push_back(std::move(s));
  }
  return PLMap(std::move(g), std::move(by_edge));
}

PLMap PLMap::constant(GraphPtr g, const GraphPoint& value) {
  Rat off;
  int edge = -1;
  if (value.is_vertex()) {
    // Represent the value on some incident edge end.
    for (int e = 0; e < g->edge_count() && edge < 0; ++e) {
      if (g->edge(e).from == value.vertex) {
        edge = e;
        off = 0;
      } else if (g->edge(e).to == value.vertex) {
        edge = e;
        off = g->edge(e).length;
      }
    }
    if (edge < 0) throw input_error("constant: value vertex has no incident edge");
  } else {
    edge = value.edge;
    off = value.offset;
  }
  std::vector<std::vector<Segment>> by_edge(g->edge_count());
  for (int e = 0; e < g->edge_count(); ++e) {
    Segment s;
    s.lo = 0;
    s.hi = g->edge(e).length;
    s.walk.steps.push_back({edge, off, off});
    by_edge[e].push_back(std::move(s));
  }
  return PLMap(std::move(g), std::move(by_edge));
}

PLMap PLMap::interval_map(GraphPtr g, const std::vector<std::pair<Rat, Rat>>& points) {
  if (g->edge_count() != 1) throw input_error("interval_map needs a single-edge graph");
  if (points.size() < 2) throw input_error("interval_map needs two breakpoints");
  const Rat& L = g->edge(0).length;
  if (points.front().first != 0 || points.back().first != L)
    throw input_error("interval_map must cover [0, L]");
  std::vector<Segment> segs;
  for (size_t i = 0; i + 1 < points.size(); ++i) {
    Segment s;
    s.lo = points[i].first;
    s.hi = points[i + 1].first;
    s.walk.steps.push_back({0, points[i].second, points[i + 1].second});
    segs.push_back(std::move(s));
  }
  std::vector<std::vector<Segment>> by_edge{std::move(segs)};
  return PLMap(std::move(g), std::move(by_edge));
}

const Segment& PLMap::segment_at(int e, const Rat& t, int* index) const {
  const auto& segs = by_edge_[e];
  size_t lo = 0, hi = segs.size() - 1;
  while (lo < hi) {
    size_t mid = (lo + hi + 1) / 2;
    if (segs[mid].lo <= t)
      lo = mid;
    else
      hi = mid - 1;
  }
  if (index) *index = static_cast<int>(lo);
  return segs[lo];
}

Rat PLMap::position_of(int e, int seg_index, const Rat& t) const {
  const Segment& s = by_edge_[e][seg_index];
  const Rat& w = prefix_[e][seg_index];
  if (w == 0) return Rat(0);
  return (t - s.lo) * w / (s.hi - s.lo);
}

GraphPoint PLMap::walk_point(int e, int seg_index, const Rat& pos) const {
  const Segment& s = by_edge_[e][seg_index];
  std::vector<Rat> pre = walk_prefix(s.walk);
  for (size_t k = 0; k < s.walk.steps.size(); ++k) {
    if (pos <= pre[k + 1]) {
      const WalkStep& st = s.walk.steps[k];
      Rat off = st.b >= st.a ? Rat(st.a + (pos - pre[k])) : Rat(st.a - (pos - pre[k]));
      return g_->point(st.edge, off);
    }
  }
  const WalkStep& st = s.walk.steps.back();
  return g_->point(st.edge, st.b);
}

GraphPoint PLMap::evaluate(const GraphPoint& p) const {
  if (p.is_vertex()) return vertex_val_[p.vertex];
  int si = 0;
  segment_at(p.edge, p.offset, &si);
  return walk_point(p.edge, si, position_of(p.edge, si, p.offset));
}

GraphPoint PLMap::iterate(const GraphPoint& p, int n) const {
  GraphPoint q = p;
  for (int i = 0; i < n; ++i) q = evaluate(q);
  return q;
}

Region PLMap::image_region(const Region& r) const {
  Region out(g_);
  for (int e = 0; e < g_->edge_count(); ++e) {
    for (const Interval& iv : r.on_edge(e).parts) {
      int first = 0;
      segment_at(e, iv.lo, &first);
      for (size_t si = static_cast<size_t>(first); si < by_edge_[e].size(); ++si) {
        const Segment& s = by_edge_[e][si];
        if (s.lo > iv.hi) break;
        Rat x0 = rat_max(iv.lo, s.lo);
        Rat x1 = rat_min(iv.hi, s.hi);
        if (x0 > x1) continue;
        bool f0 = x0 == iv.lo ? iv.lo_closed : true;
        bool f1 = x1 == iv.hi ? iv.hi_closed : true;
        if (x0 == x1) {
          if (f0 && f1) out.add_point(walk_point(e, (int)si, position_of(e, (int)si, x0)));
          continue;
        }
        const Rat& w = prefix_[e][si];
        if (w == 0) {
          out.add_point(g_->point(s.walk.steps[0].edge, s.walk.steps[0].a));
          continue;
        }
        Rat p0 = position_of(e, (int)si, x0);
        Rat p1 = position_of(e, (int)si, x1);
        std::vector<Rat> pre = walk_prefix(s.walk);
        for (size_t k = 0; k < s.walk.steps.size(); ++k) {
          Rat qa = rat_max(p0, pre[k]);
          Rat qb = rat_min(p1, pre[k + 1]);
          if (qa > qb) continue;
          const WalkStep& st = s.walk.steps[k];
          bool fwd = st.b >= st.a;
          Rat oa = fwd ? Rat(st.a + (qa - pre[k])) : Rat(st.a - (qa - pre[k]));
          Rat ob = fwd ? Rat(st.a + (qb - pre[k])) : Rat(st.a - (qb - pre[k]));
          bool fa = qa > p0 || f0;
          bool fb = qb < p1 || f1;
          if (qa == qb) {
            if (fa && fb) out.add_point(g_->point(st.edge, oa));
            continue;
          }
          if (fwd)
            out.add_interval(st.edge, oa, ob, fa, fb);
          else
            out.add_interval(st.edge, ob, oa, fb, fa);
        }
      }
    }
  }
  for (int v = 0; v < g_->vertex_count(); ++v)
    if (r.has_vertex(v)) out.add_point(vertex_val_[v]);
  out.normalize();
  return out;
}

namespace {
// Intersection of [lo,hi](flags) with the closed interval [mn,mx].
bool clip_closed(const Interval& iv, const Rat& mn, const Rat& mx, Interval& out) {
  out.lo = rat_max(iv.lo, mn);
  out.hi = rat_min(iv.hi, mx);
  out.lo_closed = iv.lo < mn ? true : iv.lo_closed;
  out.hi_closed = iv.hi > mx ? true : iv.hi_closed;
  if (out.lo > out.hi) return false;
  if (out.lo == out.hi && !(out.lo_closed && out.hi_closed)) return false;
  return true;
}
}  // namespace

Region PLMap::preimage_region(const Region& r) const {
  Region out(g_);
  // Position intervals collected per (domain edge, segment).
  std::map<std::pair<int, int>, std::vector<Interval>> buckets;
  auto handle = [&](const StepRef& h, const Interval& iv) {
    const Segment& s = by_edge_[h.dom_edge][h.seg];
    const WalkStep& st = s.walk.steps[h.step];
    if (prefix_[h.dom_edge][h.seg] == 0) {
      // Point walk with an interior value: preimage is the whole domain.
      if (iv.contains(st.a)) out.add_interval(h.dom_edge, s.lo, s.hi, true, true);
      return;
    }
    Interval c;
    if (!clip_closed(iv, h.lo, h.hi, c)) return;
    Interval q;
    if (st.b >= st.a) {
      q.lo = h.pos0 + (c.lo - st.a);
      q.hi = h.pos0 + (c.hi - st.a);
      q.lo_closed = c.lo_closed;
      q.hi_closed = c.hi_closed;
    } else {
      q.lo = h.pos0 + (st.a - c.hi);
      q.hi = h.pos0 + (st.a - c.lo);
      q.lo_closed = c.hi_closed;
      q.hi_closed = c.lo_closed;
    }
    buckets[{h.dom_edge, h.seg}].push_back(std::move(q));
  };
  for (int e = 0; e < g_->edge_count(); ++e)
    for (const Interval& iv : r.on_edge(e).parts)
      steps_overlapping(e, iv.lo, iv.hi, [&](const StepRef& h) { handle(h, iv); });
  // Steps landing exactly on member vertices of r.
  for (int e = 0; e < g_->edge_count(); ++e) {
    const Edge& ed = g_->edge(e);
    for (int side = 0; side < 2; ++side) {
      int v = side == 0 ? ed.from : ed.to;
      if (!r.has_vertex(v)) continue;
      Rat off = side == 0 ? Rat(0) : ed.length;
      steps_overlapping(e, off, off, [&](const StepRef& h) {
        const Segment& s = by_edge_[h.dom_edge][h.seg];
        const WalkStep& st = s.walk.steps[h.step];
        if (prefix_[h.dom_edge][h.seg] == 0) {
          if (st.a == off) out.add_interval(h.dom_edge, s.lo, s.hi, true, true);
          return;
        }
        if (st.a == off)
          buckets[{h.dom_edge, h.seg}].push_back({h.pos0, h.pos0, true, true});
        if (st.b == off) {
          Rat p = h.pos0 + st.span();
          buckets[{h.dom_edge, h.seg}].push_back({p, p, true, true});
        }
      });
    }
  }
  for (auto& [key, raw] : buckets) {
    const auto& [e, si] = key;
    const Segment& s = by_edge_[e][si];
    const Rat& w = prefix_[e][si];
    IntervalSet merged = iv_normalize(std::move(raw));
    for (const Interval& q : merged.parts) {
      Rat t0 = s.lo + q.lo * (s.hi - s.lo) / w;
      Rat t1 = s.lo + q.hi * (s.hi - s.lo) / w;
      out.add_interval(e, t0, t1, q.lo_closed, q.hi_closed);
    }
  }
  for (int v = 0; v < g_->vertex_count(); ++v)
    if (r.contains(vertex_val_[v])) out.add_vertex(v);
  out.normalize();
  return out;
}

Region PLMap::image_full() const { return image_region(Region::full(g_)); }

bool PLMap::is_surjective() const { return image_full() == Region::full(g_); }

Rat PLMap::lipschitz_modulus() const {
  Rat best(0);
  for (int e = 0; e < g_->edge_count(); ++e)
    for (size_t si = 0; si < by_edge_[e].size(); ++si) {
      const Segment& s = by_edge_[e][si];
      Rat speed = prefix_[e][si] / (s.hi - s.lo);
      best = rat_max(best, speed);
    }
  return best;
}

std::optional<Rat> PLMap::continuity_modulus(const Rat& eps) const {
  Rat m = lipschitz_modulus();
  if (m == 0) return std::nullopt;
  return Rat(eps / m);
}

int PLMap::segment_count() const {
  int n = 0;
  for (const auto& segs : by_edge_) n += static_cast<int>(segs.size());
  return n;
}

namespace {

// Max over [u0, u1] of min_i (slope_i * u + icept_i); u0 <= u1.
Rat maxmin_affine(const std::vector<std::pair<Rat, Rat>>& terms, const Rat& u0, const Rat& u1) {
  auto value = [&](const Rat& u) {
    Rat m = terms[0].first * u + terms[0].second;
    for (size_t i = 1; i < terms.size(); ++i) m = rat_min(m, terms[i].first * u + terms[i].second);
    return m;
  };
  Rat best = value(u0);
  if (u1 != u0) best = rat_max(best, value(u1));
  for (size_t i = 0; i < terms.size(); ++i)
    for (size_t j = i + 1; j < terms.size(); ++j) {
      Rat da = terms[i].first - terms[j].first;
      if (da == 0) continue;
      Rat u = (terms[j].second - terms[i].second) / da;
      if (u > u0 && u < u1) best = rat_max(best, value(u));
    }
  return best;
}

}  // namespace

// Max over [t0, t1] of d(P(t), Q(t)) where P sits on edge ep at offset
// ap*t + bp and Q on eq at aq*t + bq.  Both offsets stay within their edges.
static Rat max_affine_point_distance(const MetricGraph& g, int ep, const Rat& ap, const Rat& bp,
                                     int eq, const Rat& aq, const Rat& bq, const Rat& t0,
                                     const Rat& t1) {
  const Edge& EP = g.edge(ep);
  const Edge& EQ = g.edge(eq);
  std::vector<std::pair<Rat, Rat>> terms;
  // Exit costs: offset or length-offset, plus vertex distance.
  terms.emplace_back(ap + aq, bp + bq + g.vertex_distance(EP.from, EQ.from));
  terms.emplace_back(ap - aq, bp - bq + EQ.length + g.vertex_distance(EP.from, EQ.to));
  terms.emplace_back(-ap + aq, -bp + bq + EP.length + g.vertex_distance(EP.to, EQ.from));
  terms.emplace_back(-ap - aq,
                     -bp - bq + EP.length + EQ.length + g.vertex_distance(EP.to, EQ.to));
  if (ep != eq) return maxmin_affine(terms, t0, t1);
  Rat da = ap - aq, db = bp - bq;
  if (da == 0 && db == 0) return Rat(0);  // identical points: direct distance 0
  auto with_sign = [&](int sgn, const Rat& a, const Rat& b) {
    auto tt = terms;
    tt.emplace_back(sgn * da, sgn * db);
    return maxmin_affine(tt, a, b);
  };
  if (da == 0) return with_sign(db > 0 ? 1 : -1, t0, t1);
  Rat tz = -db / da;
  Rat best(0);
  if (tz <= t0) {
    int sgn = (da * t1 + db) >= 0 ? 1 : -1;
    return with_sign(sgn, t0, t1);
  }
  if (tz >= t1) {
    int sgn = (da * t0 + db) >= 0 ? 1 : -1;
    return with_sign(sgn, t0, t1);
  }
  int sgn_left = (da * t0 + db) >= 0 ? 1 : -1;
  best = rat_max(best, with_sign(sgn_left, t0, tz));
  best = rat_max(best, with_sign(-sgn_left, tz, t1));
  return best;
}

namespace {

struct AffineOffset {
  int edge;
  Rat slope, icept;  // offset(t) = slope*t + icept
};

// Offset function of a segment over a subcell known to lie in one walk step.
AffineOffset offset_on(const MetricGraph&, const Segment& s, const std::vector<Rat>& pre,
                       const Rat& wlen, const Rat& t0, const Rat& t1) {
  if (wlen == 0) return {s.walk.steps[0].edge, Rat(0), s.walk.steps[0].a};
  Rat speed = wlen / (s.hi - s.lo);
  Rat pm = ((t0 + t1) / 2 - s.lo) * speed;  // strictly inside one step span
  size_t k = 0;
  while (k + 1 < s.walk.steps.size() && pre[k + 1] < pm) ++k;
  const WalkStep& st = s.walk.steps[k];
  bool fwd = st.b >= st.a;
  // offset(t) = a ± (pos(t) − pre[k])
  Rat slope = fwd ? speed : Rat(-speed);
  Rat icept = fwd ? Rat(st.a - (s.lo * speed) - pre[k]) : Rat(st.a + (s.lo * speed) + pre[k]);
  return {st.edge, slope, icept};
}

}  // namespace

static Rat sup_distance_impl(const PLMap& f, const PLMap& g, const Region* clip) {
  if (!f.graph()->same_shape(*g.graph())) throw input_error("sup_distance: graphs differ");
  const MetricGraph& G = *f.graph();
  Rat best(0);
  Region cl = clip ? clip->closure() : Region::full(f.graph());
  for (int v = 0; v < G.vertex_count(); ++v) {
    if (!cl.has_vertex(v)) continue;
    best = rat_max(best, G.distance(f.vertex_image(v), g.vertex_image(v)));
  }
  for (int e = 0; e < G.edge_count(); ++e) {
    if (cl.on_edge(e).empty()) continue;
    for (const Interval& window : cl.on_edge(e).parts) {
      // Cell boundaries: segment breakpoints of both maps inside the window.
      std::vector<Rat> cuts{window.lo, window.hi};
      for (const Segment& s : f.on_edge(e)) {
        if (s.lo > window.lo && s.lo < window.hi) cuts.push_back(s.lo);
        if (s.hi > window.lo && s.hi < window.hi) cuts.push_back(s.hi);
      }
      for (const Segment& s : g.on_edge(e)) {
        if (s.lo > window.lo && s.lo < window.hi) cuts.push_back(s.lo);
        if (s.hi > window.lo && s.hi < window.hi) cuts.push_back(s.hi);
      }
      std::sort(cuts.begin(), cuts.end());
      cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
      if (cuts.size() == 1) {
        // Degenerate window: single point.
        GraphPoint p = G.point(e, cuts[0]);
        best = rat_max(best, G.distance(f.evaluate(p), g.evaluate(p)));
        continue;
      }
      for (size_t c = 0; c + 1 < cuts.size(); ++c) {
        Rat t0 = cuts[c], t1 = cuts[c + 1];
        Rat tm = (t0 + t1) / 2;
        const Segment& sf = f.segment_at(e, tm);
        const Segment& sg = g.segment_at(e, tm);
        if (sf == sg) continue;  // identical parametrization, distance 0
        std::vector<Rat> pf = walk_prefix(sf.walk);
        std::vector<Rat> pg = walk_prefix(sg.walk);
        Rat wf = pf.back();
        Rat wg = pg.back();
        // Split the cell at walk-junction parameters of both maps.
        std::vector<Rat> sub{t0, t1};
        auto add_junctions = [&](const Segment& s, const std::vector<Rat>& pre, const Rat& w) {
          if (w == 0) return;
          Rat speed = w / (s.hi - s.lo);
          for (size_t k = 1; k + 1 < pre.size(); ++k) {
            Rat t = s.lo + pre[k] / speed;
            if (t > t0 && t < t1) sub.push_back(t);
          }
        };
        add_junctions(sf, pf, wf);
        add_junctions(sg, pg, wg);
        std::sort(sub.begin(), sub.end());
        sub.erase(std::unique(sub.begin(), sub.end()), sub.end());
        for (size_t u = 0; u + 1 < sub.size(); ++u) {
          AffineOffset of = offset_on(G, sf, pf, wf, sub[u], sub[u + 1]);
          AffineOffset og = offset_on(G, sg, pg, wg, sub[u], sub[u + 1]);
          best = rat_max(best, max_affine_point_distance(G, of.edge, of.slope, of.icept, og.edge,
                                                         og.slope, og.icept, sub[u], sub[u + 1]));
        }
      }
    }
  }
  return best;
}

Rat sup_distance(const PLMap& f, const PLMap& g) { return sup_distance_impl(f, g, nullptr); }

Rat sup_distance_on(const PLMap& f, const PLMap& g, const Region& r) {
  return sup_distance_impl(f, g, &r);
}

PLMap PLMap::compose_after(const PLMap& inner) const {
  if (!g_->same_shape(*inner.g_)) throw input_error("compose: graphs differ");
  const MetricGraph& G = *g_;
  std::vector<std::vector<Segment>> out(G.edge_count());
  for (int e = 0; e < G.edge_count(); ++e) {
    for (size_t si = 0; si < inner.by_edge_[e].size(); ++si) {
      const Segment& s = inner.by_edge_[e][si];
      const Rat& w = inner.prefix_[e][si];
      std::vector<Rat> pre = walk_prefix(s.walk);
      std::vector<Rat> cuts{s.lo, s.hi};
      if (w != 0) {
        Rat speed = w / (s.hi - s.lo);
        for (size_t k = 1; k + 1 < pre.size(); ++k) {
          Rat t = s.lo + pre[k] / speed;
          if (t > s.lo && t < s.hi) cuts.push_back(t);
        }
        // Outer breakpoints crossed by each step.
        for (size_t k = 0; k < s.walk.steps.size(); ++k) {
          const WalkStep& st = s.walk.steps[k];
          bool fwd = st.b >= st.a;
          Rat mn = fwd ? st.a : st.b;
          Rat mx = fwd ? st.b : st.a;
          for (const Segment& os : by_edge_[st.edge]) {
            for (const Rat& d : {os.lo, os.hi}) {
              if (d <= mn || d >= mx) continue;
              Rat q = fwd ? Rat(pre[k] + (d - st.a)) : Rat(pre[k] + (st.a - d));
              Rat t = s.lo + q / speed;
              if (t > s.lo && t < s.hi) cuts.push_back(t);
            }
          }
        }
      }
      std::sort(cuts.begin(), cuts.end());
      cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
      for (size_t c = 0; c + 1 < cuts.size(); ++c) {
        Rat t0 = cuts[c], t1 = cuts[c + 1];
        AffineOffset off = offset_on(G, s, pre, w, t0, t1);
        Segment ns;
        ns.lo = t0;
        ns.hi = t1;
        if (off.slope == 0) {
          GraphPoint val = evaluate(G.point(off.edge, off.icept));
          if (val.is_vertex()) {
            // Anchor the point walk on an incident edge end.
            bool placed = false;
            for (int e2 = 0; e2 < G.edge_count() && !placed; ++e2) {
              if (G.edge(e2).from == val.vertex) {
                ns.walk.steps.push_back({e2, Rat(0), Rat(0)});
                placed = true;
              } else if (G.edge(e2).to == val.vertex) {
                ns.walk.steps.push_back({e2, G.edge(e2).length, G.edge(e2).length});
                placed = true;
              }
            }
            if (!placed) throw construction_error("compose: isolated vertex value");
          } else {
            ns.walk.steps.push_back({val.edge, val.offset, val.offset});
          }
        } else {
          Rat o0 = off.slope * t0 + off.icept;
          Rat o1 = off.slope * t1 + off.icept;
          int oi = 0;
          Rat om = (o0 + o1) / 2;
          const Segment& os = segment_at(off.edge, om, &oi);
          std::vector<Rat> opre = walk_prefix(os.walk);
          Rat p0 = position_of(off.edge, oi, o0);
          Rat p1 = position_of(off.edge, oi, o1);
          if (p0 <= p1)
            ns.walk = subwalk(G, os.walk, opre, p0, p1);
          else
            ns.walk = subwalk(G, os.walk, opre, p1, p0).reversed();
        }
        out[e].push_back(std::move(ns));
      }
    }
  }
  return PLMap(g_, std::move(out));
}

Retraction Retraction::identity(GraphPtr g) {
  Retraction r{PLMap::identity(g), Region::full(g), Rat(0)};
  return r;
}

bool Retraction::is_identity() const {
  return target == Region::full(map.graph()) && fiber_bound == 0;
}

namespace {

// Max distance between fiber branches of a retraction over one target span.
struct Branch {
  int edge;        // domain edge
  Rat slope, icept;  // t(y) = slope*y + icept, or constant interval when slope sentinel
  bool is_span = false;
  Rat span_lo, span_hi;  // for constant segments: whole domain interval
  Rat y_lo, y_hi;        // active offset range on the target edge
};

}  // namespace

Retraction Retraction::validate(PLMap map, Region target, const Rat& fiber_bound) {
  GraphPtr g = map.graph();
  const MetricGraph& G = *g;
  if (target.empty()) throw input_error("retraction: empty target");
  if (!target.is_closed()) throw input_error("retraction: target must be closed");
  if (fiber_bound < 0) throw input_error("retraction: negative fiber bound");
  if (!map.image_full().subtracted(target).empty())
    throw input_error("retraction: image escapes target");
  if (sup_distance_on(map, PLMap::identity(g), target) != 0)
    throw input_error("retraction: not the identity on target");

  // Fibers over target vertices: direct preimage diameter check.
  for (int v = 0; v < G.vertex_count(); ++v) {
    if (!target.has_vertex(v)) continue;
    Region fiber = map.preimage_region(Region::point(g, G.vertex_point(v)));
    if (fiber.empty()) continue;
    if (region_diameter(fiber) > fiber_bound)
      throw input_error("retraction: fiber over vertex exceeds bound");
  }

  // Fibers over edge interiors of the target.
  for (int ew = 0; ew < G.edge_count(); ++ew) {
    for (const Interval& win : target.on_edge(ew).parts) {
      // Collect branches: (segment, step) pairs passing over this span.
      std::vector<Branch> branches;
      std::vector<Rat> criticals{win.lo, win.hi};
      for (int e = 0; e < G.edge_count(); ++e) {
        const auto& segs = map.on_edge(e);
        for (const Segment& s : segs) {
          std::vector<Rat> pre = walk_prefix(s.walk);
          Rat w = pre.back();
          if (w == 0) {
            const WalkStep& st = s.walk.steps[0];
            if (st.edge != ew) continue;
            if (st.a < win.lo || st.a > win.hi) continue;
            Branch b;
            b.edge = e;
            b.is_span = true;
            b.span_lo = s.lo;
            b.span_hi = s.hi;
            b.y_lo = b.y_hi = st.a;
            branches.push_back(b);
            criticals.push_back(st.a);
            continue;
          }
          Rat speed = w / (s.hi - s.lo);
          for (size_t k = 0; k < s.walk.steps.size(); ++k) {
            const WalkStep& st = s.walk.steps[k];
            if (st.edge != ew) continue;
            bool fwd = st.b >= st.a;
            Rat mn = fwd ? st.a : st.b;
            Rat mx = fwd ? st.b : st.a;
            Rat ylo = rat_max(mn, win.lo);
            Rat yhi = rat_min(mx, win.hi);
            if (ylo > yhi) continue;
            // t(y): position q = pre[k] ± (y - a), then t = s.lo + q/speed.
            Branch b;
            b.edge = e;
            Rat qs = fwd ? Rat(1) : Rat(-1);
            // q(y) = pre[k] + qs*(y - st.a)
            b.slope = qs / speed;
            b.icept = s.lo + (pre[k] - qs * st.a) / speed;
            b.y_lo = ylo;
            b.y_hi = yhi;
            branches.push_back(b);
            if (ylo > win.lo && ylo < win.hi) criticals.push_back(ylo);
            if (yhi > win.lo && yhi < win.hi) criticals.push_back(yhi);
          }
        }
      }
      std::sort(criticals.begin(), criticals.end());
      criticals.erase(std::unique(criticals.begin(), criticals.end()), criticals.end());
      // Cells: every [c_i, c_i] and [c_i, c_{i+1}].
      std::vector<std::pair<Rat, Rat>> cells;
      for (size_t i = 0; i < criticals.size(); ++i) {
        cells.emplace_back(criticals[i], criticals[i]);
        if (i + 1 < criticals.size()) cells.emplace_back(criticals[i], criticals[i + 1]);
      }
      for (const auto& [y0, y1] : cells) {
        std::vector<const Branch*> active;
        for (const Branch& b : branches)
          if (b.y_lo <= y0 && b.y_hi >= y1) active.push_back(&b);
        if (y0 == y1) {
          // Fixed fiber: assemble it as a region and measure directly.
          Region fib(g);
          for (const Branch* b : active) {
            if (b->is_span)
              fib.add_interval(b->edge, b->span_lo, b->span_hi, true, true);
            else
              fib.add_point(G.point(b->edge, b->slope * y0 + b->icept));
          }
          fib.normalize();
          if (!fib.empty() && region_diameter(fib) > fiber_bound)
            throw input_error("retraction: fiber diameter exceeds bound");
          continue;
        }
        // Interior cell: no span branches are active, pairs are affine in y.
        for (size_t i = 0; i < active.size(); ++i)
          for (size_t j = i + 1; j < active.size(); ++j) {
            const Branch &A = *active[i], &B = *active[j];
            if (A.is_span || B.is_span) continue;  // active only at a single y
            Rat worst = max_affine_point_distance(G, A.edge, A.slope, A.icept, B.edge, B.slope,
                                                  B.icept, y0, y1);
            if (worst > fiber_bound)
              throw input_error("retraction: fiber diameter exceeds bound");
          }
      }
    }
  }
  Retraction r{std::move(map), std::move(target), fiber_bound};
  return r;
}

}  // namespace shadowcert
