#include "shadowcert/systems.hpp"

namespace shadowcert::systems {

namespace {

GraphPtr interval_graph(const Rat& len) {
  return std::make_shared<const MetricGraph>(2, std::vector<Edge>{{0, 1, len, "e"}},
                                             std::vector<std::string>{"a", "b"});
}

GraphPtr loop_graph(const Rat& len) {
  return std::make_shared<const MetricGraph>(1, std::vector<Edge>{{0, 0, len, "loop"}},
                                             std::vector<std::string>{"o"});
}

const Edge& single_edge(const GraphPtr& g, bool loop, const char* who) {
  if (g->edge_count() != 1)
    throw input_error(std::string(who) + " needs a graph with a single edge");
  const Edge& e = g->edge(0);
  if ((e.from == e.to) != loop)
    throw input_error(std::string(who) + (loop ? " needs a loop" : " needs an interval"));
  return e;
}

Walk step(const MetricGraph& g, int e, Rat a, Rat b) {
  Walk w;
  w.push(g, e, std::move(a), std::move(b));
  return w;
}

}  // namespace

GraphPtr unit_interval() { return interval_graph(1); }
GraphPtr small_interval() { return interval_graph(Rat(1, 18)); }
GraphPtr circle() { return loop_graph(1); }
GraphPtr small_circle() { return loop_graph(Rat(1, 18)); }

GraphPtr y_tree() {
  std::vector<Edge> es{{0, 1, Rat(1, 4), "b1"}, {0, 2, Rat(1, 4), "b2"}, {0, 3, Rat(1, 4), "b3"}};
  return std::make_shared<const MetricGraph>(4, std::move(es),
                                             std::vector<std::string>{"c", "t1", "t2", "t3"});
}

GraphPtr whisker_graph() {
  std::vector<Edge> es{{0, 1, Rat(1), "main"}, {1, 2, Rat(1, 40), "whisker"}};
  return std::make_shared<const MetricGraph>(3, std::move(es),
                                             std::vector<std::string>{"a", "j", "w"});
}

PLMap identity_map(GraphPtr g) { return PLMap::identity(std::move(g)); }

PLMap tent_map(GraphPtr g) {
  const Rat L = single_edge(g, false, "tent_map").length;
  std::vector<std::vector<Segment>> segs(1);
  segs[0].push_back({Rat(0), L / 2, step(*g, 0, Rat(0), L)});
  segs[0].push_back({L / 2, L, step(*g, 0, L, Rat(0))});
  return PLMap(std::move(g), std::move(segs));
}

PLMap hump_map(GraphPtr g) {
  const Rat L = single_edge(g, false, "hump_map").length;
  const Rat crown = L * Rat(15, 16);
  std::vector<std::vector<Segment>> segs(1);
  segs[0].push_back({Rat(0), L * Rat(3, 8), step(*g, 0, Rat(0), crown)});
  segs[0].push_back({L * Rat(3, 8), L / 2, step(*g, 0, crown, L)});
  segs[0].push_back({L / 2, L * Rat(5, 8), step(*g, 0, L, crown)});
  segs[0].push_back({L * Rat(5, 8), L, step(*g, 0, crown, Rat(0))});
  return PLMap(std::move(g), std::move(segs));
}

PLMap doubling_map(GraphPtr g) {
  const Rat L = single_edge(g, true, "doubling_map").length;
  std::vector<std::vector<Segment>> segs(1);
  segs[0].push_back({Rat(0), L / 2, step(*g, 0, Rat(0), L)});
  segs[0].push_back({L / 2, L, step(*g, 0, Rat(0), L)});
  return PLMap(std::move(g), std::move(segs));
}

PLMap rotation_map(GraphPtr g) {
  const Rat L = single_edge(g, true, "rotation_map").length;
  const Rat q = L / 4;
  std::vector<std::vector<Segment>> segs(1);
  segs[0].push_back({Rat(0), L - q, step(*g, 0, q, L)});
  segs[0].push_back({L - q, L, step(*g, 0, Rat(0), q)});
  return PLMap(std::move(g), std::move(segs));
}

PLMap y_fold_map(GraphPtr g) {
  if (g->vertex_count() != 4 || g->edge_count() != 3)
    throw input_error("y_fold_map needs a tripod graph");
  const Rat L = g->edge(0).length;
  for (int e = 0; e < 3; ++e)
    if (g->edge(e).from != 0 || g->edge(e).length != L)
      throw input_error("y_fold_map needs three equal branches rooted at vertex 1");
  std::vector<std::vector<Segment>> segs(3);
  segs[0].push_back({Rat(0), L, step(*g, 1, Rat(0), L)});
  segs[1].push_back({Rat(0), L, step(*g, 0, Rat(0), L)});
  segs[2].push_back({Rat(0), L / 2, step(*g, 2, Rat(0), L / 2)});
  segs[2].push_back({L / 2, L, step(*g, 2, L / 2, Rat(0))});
  return PLMap(std::move(g), std::move(segs));
}

namespace {

void check_whisker(const GraphPtr& g, const char* who) {
  if (g->vertex_count() != 3 || g->edge_count() != 2 || g->edge(0).from != 0 ||
      g->edge(0).to != 1 || g->edge(1).from != 1 || g->edge(1).to != 2)
    throw input_error(std::string(who) + " needs an interval with a whisker at its far end");
}

}  // namespace

PLMap whisker_fold_map(GraphPtr g) {
  check_whisker(g, "whisker_fold_map");
  const Rat L = g->edge(0).length;
  const Rat W = g->edge(1).length;
  // Tent up to the junction, detour of depth W into the whisker, tent back.
  const Rat p = (L - W) / 2;  // tent(p + W/ ... ) climbing at slope 2
  std::vector<std::vector<Segment>> segs(2);
  segs[0].push_back({Rat(0), p, step(*g, 0, Rat(0), L - W)});
  {
    Walk in = step(*g, 0, L - W, L);
    in.push(*g, 1, Rat(0), W);
    segs[0].push_back({p, L / 2, std::move(in)});
  }
  {
    Walk out = step(*g, 1, W, Rat(0));
    out.push(*g, 0, L, L - W);
    segs[0].push_back({L / 2, L - p, std::move(out)});
  }
  segs[0].push_back({L - p, L, step(*g, 0, L - W, Rat(0))});
  segs[1].push_back({Rat(0), W, step(*g, 0, Rat(0), W * 2)});
  return PLMap(std::move(g), std::move(segs));
}

Retraction whisker_retraction(GraphPtr g) {
  check_whisker(g, "whisker_retraction");
  const Rat L = g->edge(0).length;
  const Rat W = g->edge(1).length;
  std::vector<std::vector<Segment>> segs(2);
  segs[0].push_back({Rat(0), L, step(*g, 0, Rat(0), L)});
  segs[1].push_back({Rat(0), W, step(*g, 1, Rat(0), Rat(0))});
  Region target = Region::edge_interval(g, 0, Rat(0), L, true, true);
  PLMap r(g, std::move(segs));
  return Retraction::validate(std::move(r), std::move(target), W);
}

TautCover tent_cover3(GraphPtr g) {
  single_edge(g, false, "tent_cover3");
  const Rat L = single_edge(g, false, "tent_cover3").length;
  std::vector<Region> members;
  members.push_back(Region::edge_interval(g, 0, Rat(0), L * Rat(2, 5), true, false));
  members.push_back(Region::edge_interval(g, 0, L * Rat(3, 10), L * Rat(7, 10), false, false));
  members.push_back(Region::edge_interval(g, 0, L * Rat(3, 5), L, false, true));
  return TautCover(std::move(g), std::move(members));
}

const std::vector<std::string>& system_names() {
  static const std::vector<std::string> names{"tent",     "identity", "hump",
                                              "doubling", "rotation", "yfold",
                                              "smallfold", "smallrot", "whisker"};
  return names;
}

NamedSystem by_name(const std::string& name) {
  if (name == "tent") {
    GraphPtr g = unit_interval();
    return {name, g, tent_map(g)};
  }
  if (name == "identity") {
    GraphPtr g = unit_interval();
    return {name, g, identity_map(g)};
  }
  if (name == "hump") {
    GraphPtr g = unit_interval();
    return {name, g, hump_map(g)};
  }
  if (name == "doubling") {
    GraphPtr g = circle();
    return {name, g, doubling_map(g)};
  }
  if (name == "rotation") {
    GraphPtr g = circle();
    return {name, g, rotation_map(g)};
  }
  if (name == "yfold") {
    GraphPtr g = y_tree();
    return {name, g, y_fold_map(g)};
  }
  if (name == "smallfold") {
    GraphPtr g = small_interval();
    return {name, g, tent_map(g)};
  }
  if (name == "smallrot") {
    GraphPtr g = small_circle();
    return {name, g, rotation_map(g)};
  }
  if (name == "whisker") {
    GraphPtr g = whisker_graph();
    return {name, g, whisker_fold_map(g)};
  }
  std::string known;
  for (const std::string& s : system_names()) known += (known.empty() ? "" : ", ") + s;
  throw input_error("unknown system '" + name + "'; known systems: " + known);
}

}  // namespace shadowcert::systems
