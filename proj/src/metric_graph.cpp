#include "shadowcert/metric_graph.hpp"

namespace shadowcert {

MetricGraph::MetricGraph(int vertex_count, std::vector<Edge> edges,
                         std::vector<std::string> vertex_names)
    : vertex_count_(vertex_count),
      edges_(std::move(edges)),
      vertex_names_(std::move(vertex_names)) {
  if (vertex_count_ <= 0) throw input_error("graph needs at least one vertex");
  if (vertex_names_.empty()) {
    vertex_names_.reserve(vertex_count_);
    for (int v = 0; v < vertex_count_; ++v) vertex_names_.push_back("v" + std::to_string(v));
  }
  if (static_cast<int>(vertex_names_.size()) != vertex_count_)
    throw input_error("vertex name count mismatch");
  for (size_t i = 0; i < edges_.size(); ++i) {
    Edge& e = edges_[i];
    if (e.from < 0 || e.from >= vertex_count_ || e.to < 0 || e.to >= vertex_count_)
      throw input_error("edge endpoint out of range");
    if (e.length <= 0) throw input_error("edge length must be positive");
    if (e.name.empty()) e.name = "e" + std::to_string(i);
  }

  // Floyd-Warshall over vertices; edge lengths seed the matrix.
  const Rat inf = total_length() + 1;
  dist_.assign(vertex_count_, std::vector<Rat>(vertex_count_, inf));
  for (int v = 0; v < vertex_count_; ++v) dist_[v][v] = 0;
  for (const Edge& e : edges_) {
    if (e.from == e.to) continue;
    if (e.length < dist_[e.from][e.to]) {
      dist_[e.from][e.to] = e.length;
      dist_[e.to][e.from] = e.length;
    }
  }
  for (int m = 0; m < vertex_count_; ++m)
    for (int u = 0; u < vertex_count_; ++u)
      for (int v = 0; v < vertex_count_; ++v) {
        Rat through = dist_[u][m] + dist_[m][v];
        if (through < dist_[u][v]) dist_[u][v] = through;
      }
  for (int u = 0; u < vertex_count_; ++u)
    for (int v = 0; v < vertex_count_; ++v)
      if (dist_[u][v] >= inf) throw input_error("graph must be connected");
}

GraphPoint MetricGraph::vertex_point(int v) const {
  if (v < 0 || v >= vertex_count_) throw input_error("vertex id out of range");
  GraphPoint p;
  p.vertex = v;
  return p;
}

GraphPoint MetricGraph::point(int e, const Rat& offset) const {
  if (e < 0 || e >= edge_count()) throw input_error("edge id out of range");
  const Edge& ed = edges_[e];
  if (offset < 0 || offset > ed.length) throw input_error("offset outside edge");
  if (offset == 0) return vertex_point(ed.from);
  if (offset == ed.length) return vertex_point(ed.to);
  GraphPoint p;
  p.edge = e;
  p.offset = offset;
  return p;
}

Rat MetricGraph::distance(const GraphPoint& a, const GraphPoint& b) const {
  if (a.is_vertex() && b.is_vertex()) return dist_[a.vertex][b.vertex];
  if (a.is_vertex()) {
    const Edge& e = edges_[b.edge];
    return rat_min(dist_[a.vertex][e.from] + b.offset,
                   dist_[a.vertex][e.to] + (e.length - b.offset));
  }
  if (b.is_vertex()) return distance(b, a);
  const Edge& ea = edges_[a.edge];
  const Edge& eb = edges_[b.edge];
  Rat exits_a[2] = {a.offset, ea.length - a.offset};
  int ends_a[2] = {ea.from, ea.to};
  Rat exits_b[2] = {b.offset, eb.length - b.offset};
  int ends_b[2] = {eb.from, eb.to};
  Rat best = exits_a[0] + dist_[ends_a[0]][ends_b[0]] + exits_b[0];
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) {
      Rat c = exits_a[i] + dist_[ends_a[i]][ends_b[j]] + exits_b[j];
      if (c < best) best = c;
    }
  if (a.edge == b.edge) best = rat_min(best, rat_abs(a.offset - b.offset));
  return best;
}

Rat MetricGraph::total_length() const {
  Rat t = 0;
  for (const Edge& e : edges_) t += e.length;
  return t;
}

Rat MetricGraph::min_edge_length() const {
  if (edges_.empty()) throw input_error("graph has no edges");
  Rat m = edges_[0].length;
  for (const Edge& e : edges_) m = rat_min(m, e.length);
  return m;
}

bool MetricGraph::same_shape(const MetricGraph& o) const {
  if (vertex_count_ != o.vertex_count_ || edges_.size() != o.edges_.size()) return false;
  for (size_t i = 0; i < edges_.size(); ++i) {
    if (edges_[i].from != o.edges_[i].from || edges_[i].to != o.edges_[i].to ||
        edges_[i].length != o.edges_[i].length)
      return false;
  }
  return true;
}

}  // namespace shadowcert
