// Finite metric graphs: vertices joined by edges of positive rational length,
// with the shortest-path metric.  Loops and parallel edges are allowed.
#pragma once

#include <string>
#include <vector>

#include "shadowcert/rational.hpp"

namespace shadowcert {

struct Edge {
  int from = -1;
  int to = -1;
  Rat length;
  std::string name;
};

// Either a vertex (vertex >= 0, edge == -1) or an interior point of an edge
// (edge >= 0, 0 < offset < length).  Offsets 0 and length canonicalize to the
// endpoint vertex, so equality is plain field equality.
struct GraphPoint {
  int vertex = -1;
  int edge = -1;
  Rat offset;

  bool is_vertex() const { return vertex >= 0; }
  bool operator==(const GraphPoint& o) const {
    return vertex == o.vertex && edge == o.edge && offset == o.offset;
  }
  // Vertices first by id, then interior points by (edge, offset).
  bool operator<(const GraphPoint& o) const {
    if (is_vertex() != o.is_vertex()) return is_vertex();
    if (is_vertex()) return vertex < o.vertex;
    if (edge != o.edge) return edge < o.edge;
    return offset < o.offset;
  }
};

class MetricGraph {
 public:
  MetricGraph(int vertex_count, std::vector<Edge> edges,
              std::vector<std::string> vertex_names = {});

  int vertex_count() const { return vertex_count_; }
  int edge_count() const { return static_cast<int>(edges_.size()); }
  const Edge& edge(int e) const { return edges_[e]; }
  const std::vector<Edge>& edges() const { return edges_; }
  const std::string& vertex_name(int v) const { return vertex_names_[v]; }
  const std::vector<std::string>& vertex_names() const { return vertex_names_; }

  GraphPoint vertex_point(int v) const;
  // Canonicalizes offset 0 / length to the endpoint vertex.
  GraphPoint point(int e, const Rat& offset) const;

  // Shortest-path distance between vertices, precomputed.
  const Rat& vertex_distance(int u, int v) const { return dist_[u][v]; }

  Rat distance(const GraphPoint& a, const GraphPoint& b) const;

  // Total edge length and an exact diameter upper bound used for sizing.
  Rat total_length() const;
  Rat min_edge_length() const;

  bool same_shape(const MetricGraph& o) const;

 private:
  int vertex_count_ = 0;
  std::vector<Edge> edges_;
  std::vector<std::string> vertex_names_;
  std::vector<std::vector<Rat>> dist_;
};

}  // namespace shadowcert
