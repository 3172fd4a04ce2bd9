#include "shadowcert/region.hpp"

#include <algorithm>
#include <map>
#include <numeric>

namespace shadowcert {

bool IntervalSet::contains(const Rat& t) const {
  for (const Interval& iv : parts) {
    if (t < iv.lo) return false;
    if (iv.contains(t)) return true;
  }
  return false;
}

Rat IntervalSet::total_length() const {
  Rat s = 0;
  for (const Interval& iv : parts) s += iv.length();
  return s;
}

IntervalSet iv_normalize(std::vector<Interval> raw) {
  std::vector<Interval> work;
  work.reserve(raw.size());
  for (Interval& iv : raw) {
    if (iv.lo > iv.hi) continue;
    if (iv.lo == iv.hi && !(iv.lo_closed && iv.hi_closed)) continue;
    work.push_back(iv);
  }
  std::sort(work.begin(), work.end(), [](const Interval& a, const Interval& b) {
    if (a.lo != b.lo) return a.lo < b.lo;
    return a.lo_closed && !b.lo_closed;
  });
  IntervalSet out;
  for (Interval& iv : work) {
    if (!out.parts.empty()) {
      Interval& last = out.parts.back();
      bool overlap = iv.lo < last.hi || (iv.lo == last.hi && (iv.lo_closed || last.hi_closed));
      if (overlap) {
        if (iv.hi > last.hi) {
          last.hi = iv.hi;
          last.hi_closed = iv.hi_closed;
        } else if (iv.hi == last.hi) {
          last.hi_closed = last.hi_closed || iv.hi_closed;
        }
        continue;
      }
    }
    out.parts.push_back(iv);
  }
  return out;
}

IntervalSet iv_union(const IntervalSet& a, const IntervalSet& b) {
  std::vector<Interval> raw = a.parts;
  raw.insert(raw.end(), b.parts.begin(), b.parts.end());
  return iv_normalize(std::move(raw));
}

IntervalSet iv_intersect(const IntervalSet& a, const IntervalSet& b) {
  std::vector<Interval> raw;
  size_t j = 0;
  for (const Interval& x : a.parts) {
    while (j < b.parts.size() && b.parts[j].hi < x.lo) ++j;
    for (size_t k = j; k < b.parts.size() && b.parts[k].lo <= x.hi; ++k) {
      const Interval& y = b.parts[k];
      Interval r;
      if (x.lo > y.lo) {
        r.lo = x.lo;
        r.lo_closed = x.lo_closed;
      } else if (x.lo < y.lo) {
        r.lo = y.lo;
        r.lo_closed = y.lo_closed;
      } else {
        r.lo = x.lo;
        r.lo_closed = x.lo_closed && y.lo_closed;
      }
      if (x.hi < y.hi) {
        r.hi = x.hi;
        r.hi_closed = x.hi_closed;
      } else if (x.hi > y.hi) {
        r.hi = y.hi;
        r.hi_closed = y.hi_closed;
      } else {
        r.hi = x.hi;
        r.hi_closed = x.hi_closed && y.hi_closed;
      }
      raw.push_back(r);
    }
  }
  return iv_normalize(std::move(raw));
}

IntervalSet iv_complement(const IntervalSet& a, const Rat& L) {
  std::vector<Interval> raw;
  Rat cur = 0;
  bool cur_closed = false;  // 0 itself is never interior
  for (const Interval& iv : a.parts) {
    Interval gap;
    gap.lo = cur;
    gap.lo_closed = cur_closed;
    gap.hi = iv.lo;
    gap.hi_closed = !iv.lo_closed;
    raw.push_back(gap);
    cur = iv.hi;
    cur_closed = !iv.hi_closed;
  }
  Interval tail;
  tail.lo = cur;
  tail.lo_closed = cur_closed;
  tail.hi = L;
  tail.hi_closed = false;
  raw.push_back(tail);
  return iv_normalize(std::move(raw));
}

IntervalSet iv_subtract(const IntervalSet& a, const IntervalSet& b, const Rat& L) {
  return iv_intersect(a, iv_complement(b, L));
}

Region::Region(GraphPtr g) : g_(std::move(g)) {
  by_edge_.resize(g_->edge_count());
  verts_.assign(g_->vertex_count(), 0);
}

Region Region::full(GraphPtr g) {
  Region r(g);
  for (int e = 0; e < g->edge_count(); ++e) {
    Interval iv;
    iv.lo = 0;
    iv.hi = g->edge(e).length;
    r.by_edge_[e].parts.push_back(iv);
  }
  for (int v = 0; v < g->vertex_count(); ++v) r.verts_[v] = 1;
  return r;
}

Region Region::point(GraphPtr g, const GraphPoint& p) {
  Region r(g);
  r.add_point(p);
  r.normalize();
  return r;
}

Region Region::edge_interval(GraphPtr g, int e, const Rat& lo, const Rat& hi, bool lo_closed,
                             bool hi_closed) {
  Region r(g);
  r.add_interval(e, lo, hi, lo_closed, hi_closed);
  r.normalize();
  return r;
}

void Region::add_interval(int e, const Rat& lo, const Rat& hi, bool lo_closed, bool hi_closed) {
  if (e < 0 || e >= g_->edge_count()) throw input_error("add_interval: bad edge");
  const Rat& L = g_->edge(e).length;
  if (lo < 0 || hi > L) throw input_error("add_interval: outside edge");
  Interval iv{lo, hi, lo_closed, hi_closed};
  if (lo == 0 && lo_closed) {
    verts_[g_->edge(e).from] = 1;
    iv.lo_closed = false;
  }
  if (hi == L && hi_closed) {
    verts_[g_->edge(e).to] = 1;
    iv.hi_closed = false;
  }
  if (iv.lo > iv.hi) return;
  if (iv.lo == iv.hi && !(iv.lo_closed && iv.hi_closed)) return;
  pending_.push_back(iv);
  pending_edge_.push_back(e);
  connected_.reset();
}

void Region::add_vertex(int v) {
  if (v < 0 || v >= g_->vertex_count()) throw input_error("add_vertex: bad vertex");
  verts_[v] = 1;
  connected_.reset();
}

void Region::add_point(const GraphPoint& p) {
  if (p.is_vertex())
    add_vertex(p.vertex);
  else
    add_interval(p.edge, p.offset, p.offset, true, true);
}

void Region::normalize() {
  if (pending_.empty()) return;
  std::map<int, std::vector<Interval>> grouped;
  for (int e = 0; e < g_->edge_count(); ++e)
    if (!by_edge_[e].parts.empty())
      grouped[e].insert(grouped[e].end(), by_edge_[e].parts.begin(), by_edge_[e].parts.end());
  for (size_t i = 0; i < pending_.size(); ++i) grouped[pending_edge_[i]].push_back(pending_[i]);
  for (auto& [e, raw] : grouped) by_edge_[e] = iv_normalize(std::move(raw));
  pending_.clear();
  pending_edge_.clear();
  connected_.reset();
}

bool Region::empty() const {
  if (!pending_.empty()) throw construction_error("region used before normalize()");
  for (char v : verts_)
    if (v) return false;
  for (const IntervalSet& s : by_edge_)
    if (!s.empty()) return false;
  return true;
}

bool Region::contains(const GraphPoint& p) const {
  if (!pending_.empty()) throw construction_error("region used before normalize()");
  if (p.is_vertex()) return verts_[p.vertex] != 0;
  return by_edge_[p.edge].contains(p.offset);
}

void Region::check_compatible(const Region& o) const {
  if (!g_ || !o.g_ || !g_->same_shape(*o.g_))
    throw input_error("regions on different graphs");
  if (!pending_.empty() || !o.pending_.empty())
    throw construction_error("region used before normalize()");
}

Region Region::united(const Region& o) const {
  check_compatible(o);
  Region r(g_);
  for (int e = 0; e < g_->edge_count(); ++e) r.by_edge_[e] = iv_union(by_edge_[e], o.by_edge_[e]);
  for (int v = 0; v < g_->vertex_count(); ++v) r.verts_[v] = verts_[v] | o.verts_[v];
  return r;
}

Region Region::intersected(const Region& o) const {
  check_compatible(o);
  Region r(g_);
  for (int e = 0; e < g_->edge_count(); ++e)
    r.by_edge_[e] = iv_intersect(by_edge_[e], o.by_edge_[e]);
  for (int v = 0; v < g_->vertex_count(); ++v) r.verts_[v] = verts_[v] & o.verts_[v];
  return r;
}

Region Region::subtracted(const Region& o) const {
  check_compatible(o);
  Region r(g_);
  for (int e = 0; e < g_->edge_count(); ++e)
    r.by_edge_[e] = iv_subtract(by_edge_[e], o.by_edge_[e], g_->edge(e).length);
  for (int v = 0; v < g_->vertex_count(); ++v) r.verts_[v] = verts_[v] & (o.verts_[v] ^ 1);
  return r;
}

Region Region::complemented() const {
  if (!pending_.empty()) throw construction_error("region used before normalize()");
  Region r(g_);
  for (int e = 0; e < g_->edge_count(); ++e)
    r.by_edge_[e] = iv_complement(by_edge_[e], g_->edge(e).length);
  for (int v = 0; v < g_->vertex_count(); ++v) r.verts_[v] = verts_[v] ^ 1;
  return r;
}

Region Region::closure() const {
  if (!pending_.empty()) throw construction_error("region used before normalize()");
  Region r(g_);
  r.verts_ = verts_;
  for (int e = 0; e < g_->edge_count(); ++e) {
    const Rat& L = g_->edge(e).length;
    std::vector<Interval> raw = by_edge_[e].parts;
    for (Interval& iv : raw) {
      if (iv.lo == 0)
        r.verts_[g_->edge(e).from] = 1;
      else
        iv.lo_closed = true;
      if (iv.hi == L)
        r.verts_[g_->edge(e).to] = 1;
      else
        iv.hi_closed = true;
    }
    r.by_edge_[e] = iv_normalize(std::move(raw));
  }
  return r;
}

bool Region::is_open() const {
  if (!pending_.empty()) throw construction_error("region used before normalize()");
  for (int e = 0; e < g_->edge_count(); ++e) {
    for (const Interval& iv : by_edge_[e].parts) {
      if (iv.lo_closed || iv.hi_closed) return false;
    }
  }
  for (int v = 0; v < g_->vertex_count(); ++v) {
    if (!verts_[v]) continue;
    for (int e = 0; e < g_->edge_count(); ++e) {
      const Edge& ed = g_->edge(e);
      if (ed.from == v) {
        const auto& parts = by_edge_[e].parts;
        if (parts.empty() || parts.front().lo != 0) return false;
      }
      if (ed.to == v) {
        const auto& parts = by_edge_[e].parts;
        if (parts.empty() || parts.back().hi != ed.length) return false;
      }
    }
  }
  return true;
}

bool Region::is_closed() const {
  if (!pending_.empty()) throw construction_error("region used before normalize()");
  for (int e = 0; e < g_->edge_count(); ++e) {
    const Edge& ed = g_->edge(e);
    for (const Interval& iv : by_edge_[e].parts) {
      if (iv.lo == 0) {
        if (!verts_[ed.from]) return false;
      } else if (!iv.lo_closed) {
        return false;
      }
      if (iv.hi == ed.length) {
        if (!verts_[ed.to]) return false;
      } else if (!iv.hi_closed) {
        return false;
      }
    }
  }
  return true;
}

bool Region::intersects(const Region& o) const { return !intersected(o).empty(); }

bool Region::contains_region(const Region& o) const { return o.subtracted(*this).empty(); }

bool Region::operator==(const Region& o) const {
  check_compatible(o);
  return verts_ == o.verts_ && by_edge_ == o.by_edge_;
}

namespace {
struct UnionFind {
  std::vector<int> up;
  explicit UnionFind(int n) : up(n) { std::iota(up.begin(), up.end(), 0); }
  int find(int x) {
    while (up[x] != x) x = up[x] = up[up[x]];
    return x;
  }
  void unite(int a, int b) { up[find(a)] = find(b); }
};
}  // namespace

std::vector<Region> Region::components() const {
  if (!pending_.empty()) throw construction_error("region used before normalize()");
  // Nodes: one per interval, then one per member vertex.
  std::vector<std::pair<int, int>> iv_nodes;  // (edge, index)
  for (int e = 0; e < g_->edge_count(); ++e)
    for (size_t i = 0; i < by_edge_[e].parts.size(); ++i) iv_nodes.emplace_back(e, (int)i);
  std::vector<int> vert_node(g_->vertex_count(), -1);
  int n = static_cast<int>(iv_nodes.size());
  for (int v = 0; v < g_->vertex_count(); ++v)
    if (verts_[v]) vert_node[v] = n++;
  UnionFind uf(n);
  for (size_t k = 0; k < iv_nodes.size(); ++k) {
    auto [e, i] = iv_nodes[k];
    const Interval& iv = by_edge_[e].parts[i];
    const Edge& ed = g_->edge(e);
    if (iv.lo == 0 && vert_node[ed.from] >= 0) uf.unite((int)k, vert_node[ed.from]);
    if (iv.hi == ed.length && vert_node[ed.to] >= 0) uf.unite((int)k, vert_node[ed.to]);
  }
  std::map<int, Region> buckets;
  for (size_t k = 0; k < iv_nodes.size(); ++k) {
    auto [e, i] = iv_nodes[k];
    int root = uf.find((int)k);
    auto it = buckets.find(root);
    if (it == buckets.end()) it = buckets.emplace(root, Region(g_)).first;
    it->second.by_edge_[e].parts.push_back(by_edge_[e].parts[i]);
  }
  for (int v = 0; v < g_->vertex_count(); ++v) {
    if (vert_node[v] < 0) continue;
    int root = uf.find(vert_node[v]);
    auto it = buckets.find(root);
    if (it == buckets.end()) it = buckets.emplace(root, Region(g_)).first;
    it->second.verts_[v] = 1;
  }
  std::vector<Region> out;
  out.reserve(buckets.size());
  for (auto& [root, reg] : buckets) out.push_back(std::move(reg));
  // Deterministic order: by least element.
  std::sort(out.begin(), out.end(), [](const Region& a, const Region& b) {
    return a.representative() < b.representative();
  });
  return out;
}

bool Region::connected() const {
  if (connected_) return *connected_;
  bool c = components().size() <= 1;
  connected_ = c;
  return c;
}

GraphPoint Region::min_point() const {
  if (empty()) throw input_error("min_point of empty region");
  for (int v = 0; v < g_->vertex_count(); ++v)
    if (verts_[v]) return g_->vertex_point(v);
  for (int e = 0; e < g_->edge_count(); ++e) {
    if (by_edge_[e].empty()) continue;
    const Interval& iv = by_edge_[e].parts.front();
    if (!iv.lo_closed) throw construction_error("min_point: minimum not attained");
    return g_->point(e, iv.lo);
  }
  throw input_error("min_point of empty region");
}

GraphPoint Region::representative() const {
  if (empty()) throw input_error("representative of empty region");
  for (int v = 0; v < g_->vertex_count(); ++v)
    if (verts_[v]) return g_->vertex_point(v);
  for (int e = 0; e < g_->edge_count(); ++e) {
    if (by_edge_[e].empty()) continue;
    const Interval& iv = by_edge_[e].parts.front();
    if (iv.lo_closed) return g_->point(e, iv.lo);
    return g_->point(e, (iv.lo + iv.hi) / 2);
  }
  throw input_error("representative of empty region");
}

}  // namespace shadowcert
