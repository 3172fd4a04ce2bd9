#include "helpers.hpp"

using namespace shadowcert;
using namespace shadowcert::test;

TEST_CASE("interval distances and canonical points") {
  GraphPtr g = systems::unit_interval();
  CHECK(g->distance(at(g, "1/10"), at(g, "9/10")) == q("4/5"));
  CHECK(g->point(0, Rat(0)).is_vertex());
  CHECK(g->point(0, Rat(0)) == g->vertex_point(0));
  CHECK(g->point(0, Rat(1)) == g->vertex_point(1));
  CHECK(g->total_length() == 1);
  CHECK(g->min_edge_length() == 1);
}

TEST_CASE("circle distances wrap") {
  GraphPtr g = systems::circle();
  CHECK(g->distance(at(g, "1/10"), at(g, "9/10")) == q("1/5"));
  CHECK(g->distance(at(g, "0"), at(g, "1/2")) == q("1/2"));
  CHECK(g->distance(at(g, "1/4"), at(g, "3/4")) == q("1/2"));
  CHECK(g->distance(g->vertex_point(0), at(g, "9/10")) == q("1/10"));
}

TEST_CASE("tree distances cross the junction") {
  GraphPtr g = systems::y_tree();
  GraphPoint tip1 = g->vertex_point(1), tip2 = g->vertex_point(2);
  CHECK(g->distance(tip1, tip2) == q("1/2"));
  CHECK(g->distance(g->point(0, q("1/8")), g->point(1, q("1/8"))) == q("1/4"));
  CHECK(g->distance(g->point(2, q("1/8")), g->vertex_point(0)) == q("1/8"));
}

TEST_CASE("shape comparison") {
  GraphPtr a = systems::unit_interval(), b = systems::unit_interval(), c = systems::circle();
  CHECK(a->same_shape(*b));
  CHECK(!a->same_shape(*c));
}

TEST_CASE("graph validation") {
  CHECK_THROWS_AS(MetricGraph(2, {{0, 5, Rat(1), ""}}), input_error);
  CHECK_THROWS_AS(MetricGraph(2, {{0, 1, Rat(0), ""}}), input_error);
  CHECK_THROWS_AS(MetricGraph(2, {{0, 1, Rat(-1), ""}}), input_error);
  // Disconnected graphs are rejected: maps and covers assume one component.
  CHECK_THROWS_AS(MetricGraph(4, {{0, 1, Rat(1), ""}, {2, 3, Rat(1), ""}}), input_error);
}
