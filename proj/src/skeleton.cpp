#include "shadowcert/skeleton.hpp"

#include <algorithm>
#include <string>

#include "shadowcert/geometry.hpp"

namespace shadowcert {

Rat compute_lambda(const PLMap& f, const Rat& eps) {
  if (!(eps > 0)) throw input_error("approximation budget must be positive");
  Rat half = eps / 2;
  std::optional<Rat> mod = f.continuity_modulus(half);
  return mod ? rat_min(*mod, half) : half;
}

EtaLambda select_eta_lambda(const PLMap& f, const TautCover& c, const Rat& eps) {
  if (!(eps > 0)) throw input_error("budget must be positive");
  if (f.graph() != c.graph()) throw input_error("map and cover live on different graphs");
  const int k = c.size();
  TransitionRelation phi = compute_transition(f, c);

  std::optional<Rat> member_sep;  // min distance over disjoint member pairs
  for (int i = 0; i < k; ++i)
    for (int j = i + 1; j < k; ++j) {
      if (region_intersects(c.member(i), c.member(j))) continue;
      Rat d = region_distance(c.member(i), c.member(j));
      if (!member_sep || d < *member_sep) member_sep = d;
    }
  std::optional<Rat> image_sep;  // min distance from member images to non-successor closures
  for (int i = 0; i < k; ++i) {
    Region img = f.image_region(c.closure_of(i));
    for (int l = 0; l < k; ++l) {
      if (phi.has(i, l)) continue;
      Rat d = region_distance(img, c.closure_of(l));
      if (!image_sep || d < *image_sep) image_sep = d;
    }
  }

  Rat eta = eps / 5;
  const char* why = nullptr;
  for (int round = 0; round < 64; ++round) {
    why = nullptr;
    if (member_sep && !(*member_sep > eta)) {
      why = "a disjoint member pair is too close";
    } else if (image_sep && !(*image_sep > eta)) {
      why = "a non-successor closure is too close to a member image";
    } else {
      std::vector<Region> cores = core_sets(c, eta);
      for (int i = 0; i < k && !why; ++i) {
        bool arc = false;
        for (int e = 0; e < c.graph()->edge_count() && !arc; ++e)
          for (const Interval& iv : cores[i].on_edge(e).parts)
            if (iv.lo < iv.hi) {
              arc = true;
              break;
            }
        if (!arc) why = "a core set contains no arc";
      }
    }
    if (!why) break;
    eta /= 2;
  }
  if (why) throw construction_error(std::string("no admissible eta: ") + why);
  return {eta, rat_min(compute_lambda(f, eps), eta / 2)};
}

namespace {

struct PathStep {
  int edge;
  Rat a, b;
};

WalkStep anchor_step(const MetricGraph& g, const GraphPoint& p) {
  if (!p.is_vertex()) return {p.edge, p.offset, p.offset};
  for (int e = 0; e < g.edge_count(); ++e) {
    if (g.edge(e).from == p.vertex) return {e, Rat(0), Rat(0)};
    if (g.edge(e).to == p.vertex) return {e, g.edge(e).length, g.edge(e).length};
  }
  throw construction_error("vertex has no incident edge");
}

// Shortest path from p to q staying inside the region; nullopt when they are
// separated.  Nodes are p, q and the region's vertices; every interval part
// contributes direct links between the points of interest it carries.
std::optional<std::vector<PathStep>> route_in_region(const Region& s, const GraphPoint& p,
                                                     const GraphPoint& q) {
  if (!s.contains(p) || !s.contains(q)) return std::nullopt;
  if (p == q) return std::vector<PathStep>{};
  const GraphPtr& g = s.graph();
  const Region* comp = nullptr;
  std::vector<Region> comps = s.components();
  for (const Region& r : comps)
    if (r.contains(p)) {
      comp = &r;
      break;
    }
  if (!comp || !comp->contains(q)) return std::nullopt;

  int nnodes = 0;
  std::vector<int> vnode(g->vertex_count(), -1);
  auto vertex_node = [&](int v) {
    if (vnode[v] < 0) vnode[v] = nnodes++;
    return vnode[v];
  };
  const int pn = p.is_vertex() ? vertex_node(p.vertex) : nnodes++;
  const int qn = q.is_vertex() ? vertex_node(q.vertex) : nnodes++;

  struct Link {
    int u, v, edge;
    Rat w, ou, ov;
  };
  std::vector<Link> links;
  for (int e = 0; e < g->edge_count(); ++e) {
    const Rat& len = g->edge(e).length;
    for (const Interval& iv : comp->on_edge(e).parts) {
      std::vector<std::pair<int, Rat>> term;
      if (!p.is_vertex() && p.edge == e && iv.contains(p.offset)) term.push_back({pn, p.offset});
      if (!q.is_vertex() && q.edge == e && iv.contains(q.offset)) term.push_back({qn, q.offset});
      if (iv.lo == 0 && comp->has_vertex(g->edge(e).from))
        term.push_back({vertex_node(g->edge(e).from), Rat(0)});
      if (iv.hi == len && comp->has_vertex(g->edge(e).to))
        term.push_back({vertex_node(g->edge(e).to), len});
      for (std::size_t x = 0; x < term.size(); ++x)
        for (std::size_t y = x + 1; y < term.size(); ++y) {
          if (term[x].first == term[y].first) continue;
          links.push_back({term[x].first, term[y].first, e, rat_abs(term[x].second - term[y].second),
                           term[x].second, term[y].second});
        }
    }
  }

  std::vector<std::vector<int>> adj(nnodes);
  for (int idx = 0; idx < static_cast<int>(links.size()); ++idx) {
    adj[links[idx].u].push_back(idx);
    adj[links[idx].v].push_back(idx);
  }
  std::vector<Rat> dist(nnodes, Rat(-1));
  std::vector<int> via(nnodes, -1), pred(nnodes, -1);
  std::vector<char> done(nnodes, 0);
  dist[pn] = Rat(0);
  for (;;) {
    int u = -1;
    for (int x = 0; x < nnodes; ++x)
      if (!done[x] && dist[x] >= 0 && (u < 0 || dist[x] < dist[u])) u = x;
    if (u < 0 || u == qn) break;
    done[u] = 1;
    for (int idx : adj[u]) {
      const Link& l = links[idx];
      int o = l.u == u ? l.v : l.u;
      Rat nd = dist[u] + l.w;
      if (dist[o] < 0 || nd < dist[o]) {
        dist[o] = nd;
        via[o] = idx;
        pred[o] = u;
      }
    }
  }
  if (dist[qn] < 0) return std::nullopt;
  std::vector<PathStep> steps;
  for (int u = qn; u != pn; u = pred[u]) {
    const Link& l = links[via[u]];
    if (l.v == u)
      steps.push_back({l.edge, l.ou, l.ov});
    else
      steps.push_back({l.edge, l.ov, l.ou});
  }
  std::reverse(steps.begin(), steps.end());
  return steps;
}

Walk path_walk(const MetricGraph& g, const GraphPoint& p, const std::vector<PathStep>& steps) {
  Walk w;
  if (steps.empty()) {
    w.steps.push_back(anchor_step(g, p));
    return w;
  }
  for (const PathStep& st : steps) w.push(g, st.edge, st.a, st.b);
  return w;
}

// f's segments on edge e restricted to [c0, c1].
void append_restricted(const PLMap& f, int e, const Rat& c0, const Rat& c1,
                       std::vector<Segment>& out) {
  if (!(c0 < c1)) return;
  const std::vector<Segment>& segs = f.on_edge(e);
  for (int si = 0; si < static_cast<int>(segs.size()); ++si) {
    const Segment& s = segs[si];
    Rat lo = rat_max(s.lo, c0), hi = rat_min(s.hi, c1);
    if (!(lo < hi)) continue;
    if (lo == s.lo && hi == s.hi) {
      out.push_back(s);
      continue;
    }
    std::vector<Rat> pre = walk_prefix(s.walk);
    out.push_back({lo, hi,
                   subwalk(*f.graph(), s.walk, pre, f.position_of(e, si, lo),
                           f.position_of(e, si, hi))});
  }
}

struct BuildSpec {
  const PLMap& f;
  const TautCover& c;
  Rat eps, eta;
  TransitionRelation rel;
  const std::vector<PieceTile>* tiles = nullptr;
  std::vector<std::vector<int>> psi;
};

SkeletonResult build_g(const BuildSpec& bs, const std::optional<Retraction>& retr,
                       const Rat& lambda) {
  const GraphPtr& g = bs.f.graph();
  const int k = bs.c.size();
  const int ec = g->edge_count();

  std::vector<Region> cores = core_sets(bs.c, bs.eta);
  std::vector<ArcSpec> arcs(k);
  for (int i = 0; i < k; ++i) {
    int be = -1;
    Rat blo, bhi, blen(-1);
    for (int e = 0; e < ec; ++e)
      for (const Interval& iv : cores[i].on_edge(e).parts)
        if (iv.hi - iv.lo > blen) {
          be = e;
          blo = iv.lo;
          bhi = iv.hi;
          blen = iv.hi - iv.lo;
        }
    if (be < 0 || !(blen > 0))
      throw construction_error("core of member " + std::to_string(i + 1) + " contains no arc");
    ArcSpec& a = arcs[i];
    a.cover_index = i;
    a.edge = be;
    Rat quarter = blen / 4;
    a.lo = blo + quarter;
    a.hi = bhi - quarter;
    a.slots = bs.rel.succ[i];
    if (bs.tiles) a.pieces = bs.psi[i];
    const int n = a.block_count();
    a.gap = (a.hi - a.lo) / (2 * n + 1);
    a.points.reserve(2 * n + 2);
    for (int m = 0; m <= 2 * n + 1; ++m) a.points.push_back(a.lo + a.gap * m);
  }

  // Closed eta/2^(level+1) neighborhoods of every closure, shared across arcs.
  std::vector<std::vector<std::optional<Region>>> nb_cache;
  auto nbhd = [&](int level, int l) -> const Region& {
    if (static_cast<int>(nb_cache.size()) <= level) nb_cache.resize(level + 1);
    auto& row = nb_cache[level];
    if (row.empty()) row.resize(k);
    if (!row[l]) row[l] = closed_neighborhood(bs.c.closure_of(l), bs.eta / (2 << level));
    return *row[l];
  };

  std::vector<std::vector<Segment>> arc_segments(k);
  for (int i = 0; i < k; ++i) {
    const ArcSpec& a = arcs[i];
    const int n = a.block_count();
    std::vector<Walk> bw(n);
    for (int t = 0; t < n; ++t) {
      WalkStep st;
      if (t < static_cast<int>(a.slots.size())) {
        const ArcSpec& tgt = arcs[a.slots[t]];
        st = {tgt.edge, tgt.lo, tgt.hi};
      } else {
        const PieceTile& tile = (*bs.tiles)[a.pieces[t - a.slots.size()]];
        st = {tile.edge, tile.lo, tile.hi};
      }
      bw[t].steps.push_back(st);
    }
    GraphPoint start_v = bs.f.evaluate(g->point(a.edge, a.lo));
    GraphPoint end_v = bs.f.evaluate(g->point(a.edge, a.hi));

    std::vector<Walk> cw(n + 1);
    bool routed = false;
    for (int level = 0; level < 6 && !routed; ++level) {
      Region s = Region::empty(g);
      for (int j : bs.rel.succ[i]) s = s.united(bs.c.member(j));
      for (int l = 0; l < k; ++l) {
        if (bs.rel.has(i, l)) continue;
        const Region& nb = nbhd(level, l);
        if (region_intersects(s, nb)) s = s.subtracted(nb);
      }
      bool ok = true;
      GraphPoint cur = start_v;
      for (int t = 0; t <= n && ok; ++t) {
        GraphPoint target = t < n ? bw[t].start(*g) : end_v;
        auto path = route_in_region(s, cur, target);
        if (!path) {
          ok = false;
          break;
        }
        cw[t] = path_walk(*g, cur, *path);
        if (t < n) cur = bw[t].end(*g);
      }
      routed = ok;
    }
    if (!routed)
      throw construction_error("no connector path inside the allowed region for member " +
                               std::to_string(i + 1));

    std::vector<Segment>& out = arc_segments[i];
    for (int t = 0; t <= n; ++t) {
      out.push_back({a.points[2 * t], a.points[2 * t + 1], cw[t]});
      if (t < n) out.push_back({a.points[2 * t + 1], a.points[2 * t + 2], bw[t]});
    }
  }

  // Splice the arc segments into f, edge by edge.
  std::vector<std::vector<int>> arcs_on_edge(ec);
  for (int i = 0; i < k; ++i) arcs_on_edge[arcs[i].edge].push_back(i);
  for (auto& ids : arcs_on_edge)
    std::sort(ids.begin(), ids.end(),
              [&](int x, int y) { return arcs[x].lo < arcs[y].lo; });
  std::vector<std::vector<Segment>> segs(ec);
  for (int e = 0; e < ec; ++e) {
    Rat cur(0);
    for (int i : arcs_on_edge[e]) {
      append_restricted(bs.f, e, cur, arcs[i].lo, segs[e]);
      for (Segment& s : arc_segments[i]) segs[e].push_back(std::move(s));
      cur = arcs[i].hi;
    }
    append_restricted(bs.f, e, cur, g->edge(e).length, segs[e]);
  }
  PLMap gm(g, std::move(segs));

  TransitionRelation got = compute_transition(gm, bs.c);
  if (!(got == bs.rel))
    throw construction_error("constructed transitions deviate from the target relation");
  for (int i = 0; i < k; ++i) {
    const ArcSpec& a = arcs[i];
    for (int t = 0; t < a.block_count(); ++t) {
      Region dom = Region::edge_interval(g, a.edge, a.block_lo(t), a.block_hi(t), true, true);
      Region want = Region::empty(g);
      if (t < static_cast<int>(a.slots.size())) {
        const ArcSpec& tgt = arcs[a.slots[t]];
        want = Region::edge_interval(g, tgt.edge, tgt.lo, tgt.hi, true, true);
      } else {
        const PieceTile& tile = (*bs.tiles)[a.pieces[t - a.slots.size()]];
        want = Region::edge_interval(g, tile.edge, tile.lo, tile.hi, true, true);
      }
      if (!(gm.image_region(dom) == want))
        throw construction_error("block image deviates from its target arc");
    }
  }
  for (int i = 0; i < k; ++i) {
    Region u = Region::empty(g);
    for (int j : bs.rel.succ[i]) u = u.united(bs.c.member(j));
    if (!(region_diameter(u) < bs.eps))
      throw construction_error("successor union diameter reaches the budget");
  }
  if (!(sup_distance(gm, bs.f) < bs.eps))
    throw construction_error("perturbation distance reaches the budget");

  PerturbationScaffold sc;
  sc.eta = bs.eta;
  sc.lambda = lambda;
  sc.phi = bs.rel;
  sc.arcs = std::move(arcs);
  sc.retraction = retr;
  sc.spans.reserve(k);
  for (int i = 0; i < k; ++i) {
    sc.spans.push_back(gm.image_region(bs.c.closure_of(i)));
    if (!sc.spans.back().connected())
      throw construction_error("member image under the constructed map is disconnected");
  }
  return {std::move(gm), std::move(sc)};
}

TransitionRelation merged_relation(const PLMap& f, const TautCover& c,
                                   const TransitionRelation* augment) {
  TransitionRelation rel = compute_transition(f, c);
  if (augment) {
    if (augment->k != rel.k) throw input_error("augment relation has the wrong arity");
    for (int i = 0; i < rel.k; ++i) {
      std::vector<int> merged;
      std::set_union(rel.succ[i].begin(), rel.succ[i].end(), augment->succ[i].begin(),
                     augment->succ[i].end(), std::back_inserter(merged));
      rel.succ[i] = std::move(merged);
    }
  }
  return rel;
}

void check_options(const SkeletonOptions& opt) {
  if (!(opt.eps > 0) || !(opt.eta > 0) || !(opt.lambda > 0))
    throw input_error("skeleton margins must be positive");
}

}  // namespace

SkeletonResult build_skeleton(const PLMap& f, const TautCover& c, const SkeletonOptions& opt) {
  check_options(opt);
  if (f.graph() != c.graph()) throw input_error("map and cover live on different graphs");
  BuildSpec bs{f, c, opt.eps, opt.eta, merged_relation(f, c, opt.augment), nullptr, {}};
  return build_g(bs, opt.retraction, opt.lambda);
}

SurjectiveResult extend_surjective(const PLMap& f, const TautCover& c,
                                   const SkeletonOptions& opt) {
  check_options(opt);
  if (f.graph() != c.graph()) throw input_error("map and cover live on different graphs");
  if (!f.is_surjective()) throw input_error("surjective extension requires a surjective map");
  const GraphPtr& g = f.graph();
  const int k = c.size();

  std::vector<Region> images;
  images.reserve(k);
  for (int i = 0; i < k; ++i) images.push_back(f.image_region(c.closure_of(i)));
  Rat leb_img = lebesgue_number(g, images);
  if (!(leb_img > 0))
    throw construction_error("member images leave no positive covering margin");

  Rat piece_size = rat_min(rat_min(c.lebesgue(), opt.eps / 5), rat_min(leb_img, opt.eta));
  piece_size = piece_size * 3 / 4;

  SurjectiveScaffold surj;
  surj.piece_size = piece_size;
  for (int e = 0; e < g->edge_count(); ++e) {
    const Rat& len = g->edge(e).length;
    Rat q = len / piece_size;
    long count = rat_floor(q).get_num().get_si();
    if (Rat(count) < q) ++count;
    if (count < 1) count = 1;
    Rat w = len / count;
    for (long m = 0; m < count; ++m) surj.pieces.push_back({e, w * m, w * (m + 1), -1});
  }
  surj.psi.assign(k, {});
  for (int t = 0; t < static_cast<int>(surj.pieces.size()); ++t) {
    PieceTile& tile = surj.pieces[t];
    Region tr = Region::edge_interval(g, tile.edge, tile.lo, tile.hi, true, true);
    for (int i = 0; i < k && tile.assigned_to < 0; ++i)
      if (images[i].contains_region(tr)) tile.assigned_to = i;
    if (tile.assigned_to < 0)
      throw construction_error("a tile lies inside no single member image");
    surj.psi[tile.assigned_to].push_back(t);
  }

  BuildSpec bs{f, c, opt.eps, opt.eta, merged_relation(f, c, opt.augment), &surj.pieces,
               surj.psi};
  SkeletonResult base = build_g(bs, opt.retraction, opt.lambda);
  if (!base.g.is_surjective())
    throw construction_error("extended map failed the exact surjectivity check");
  return {std::move(base.g), std::move(base.scaffold), std::move(surj)};
}

}  // namespace shadowcert
