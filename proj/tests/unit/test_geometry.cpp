#include "shadowcert/geometry.hpp"

#include "helpers.hpp"

using namespace shadowcert;
using namespace shadowcert::test;

TEST_CASE("balls on the interval and the circle") {
  GraphPtr g = systems::unit_interval();
  Region b = ball(g, at(g, "1/2"), q("1/4"));
  CHECK(b.contains(at(g, "3/10")));
  CHECK(!b.contains(at(g, "1/4")));
  CHECK(!b.contains(at(g, "3/4")));
  Region cb = closed_ball(g, at(g, "1/2"), q("1/4"));
  CHECK(cb.contains(at(g, "1/4")));
  CHECK(cb.contains(at(g, "3/4")));

  GraphPtr c = systems::circle();
  Region wrap = ball(c, at(c, "1/10"), q("3/10"));
  CHECK(wrap.contains(at(c, "7/20")));
  CHECK(wrap.contains(at(c, "9/10")));
  CHECK(!wrap.contains(at(c, "1/2")));
}

TEST_CASE("distances and diameters of regions") {
  GraphPtr g = systems::unit_interval();
  CHECK(region_distance(closed_iv(g, 0, "0", "1/5"), closed_iv(g, 0, "1/2", "3/5")) == q("3/10"));
  CHECK(region_distance(closed_iv(g, 0, "0", "1/2"), closed_iv(g, 0, "1/2", "1")) == 0);
  Region split = open_iv(g, 0, "0", "1/5").united(open_iv(g, 0, "1/2", "3/5"));
  CHECK(region_diameter(split) == q("3/5"));
  CHECK(region_diameter(closed_iv(g, 0, "1/4", "3/4")) == q("1/2"));
  CHECK(region_diameter(Region::point(g, at(g, "1/2"))) == 0);

  GraphPtr c = systems::circle();
  CHECK(region_diameter(Region::full(c)) == q("1/2"));
  CHECK(point_region_distance(*c, at(c, "9/10"), Region::edge_interval(c, 0, Rat(0), q("1/10"),
                                                                       true, true)) == q("1/10"));
}

TEST_CASE("closed neighborhoods") {
  GraphPtr g = systems::unit_interval();
  Region n = closed_neighborhood(closed_iv(g, 0, "3/10", "4/10"), q("1/10"));
  CHECK(n == closed_iv(g, 0, "1/5", "1/2"));
  // Neighborhoods spill across the junction onto every branch.
  GraphPtr y = systems::y_tree();
  Region m = closed_neighborhood(Region::edge_interval(y, 0, Rat(0), q("1/16"), true, true),
                                 q("1/8"));
  CHECK(m.contains(y->point(1, q("1/8"))));
  CHECK(m.contains(y->point(2, q("1/16"))));
  CHECK(!m.contains(y->point(1, q("3/16"))));
}

TEST_CASE("lebesgue numbers of explicit covers") {
  GraphPtr g = systems::unit_interval();
  std::vector<Region> halves;
  halves.push_back(Region::edge_interval(g, 0, Rat(0), q("3/5"), true, false));
  halves.push_back(Region::edge_interval(g, 0, q("2/5"), Rat(1), false, true));
  CHECK(lebesgue_number(g, halves) == q("1/10"));

  std::vector<Region> whole{Region::full(g)};
  CHECK(lebesgue_number(g, whole) == q("1/2"));
}
