#include "helpers.hpp"

using namespace shadowcert;
using namespace shadowcert::test;

TEST_CASE("endpoint flags admit vertices") {
  GraphPtr g = systems::unit_interval();
  Region r = Region::edge_interval(g, 0, Rat(0), q("2/5"), true, false);
  CHECK(r.contains(g->vertex_point(0)));
  CHECK(r.contains(at(g, "1/5")));
  CHECK(!r.contains(at(g, "2/5")));
  CHECK(!r.contains(g->vertex_point(1)));
  CHECK(r.is_open());
  CHECK(!r.is_closed());
}

TEST_CASE("boolean operations") {
  GraphPtr g = systems::unit_interval();
  Region a = closed_iv(g, 0, "0", "1/2");
  Region b = open_iv(g, 0, "3/10", "7/10");
  Region meet = a.intersected(b);
  CHECK(meet.contains(at(g, "2/5")));
  CHECK(!meet.contains(at(g, "3/10")));
  CHECK(meet.contains(at(g, "1/2")));
  Region join = a.united(b);
  CHECK(join.contains(at(g, "6/10")));
  CHECK(!join.contains(at(g, "7/10")));
  Region diff = a.subtracted(b);
  CHECK(diff.contains(at(g, "3/10")));
  CHECK(!diff.contains(at(g, "2/5")));
  Region comp = a.complemented();
  CHECK(comp.contains(g->vertex_point(1)));
  CHECK(!comp.contains(at(g, "1/2")));
  CHECK(comp.contains(at(g, "51/100")));
}

TEST_CASE("closure and openness") {
  GraphPtr g = systems::unit_interval();
  Region r = open_iv(g, 0, "3/10", "7/10");
  Region cl = r.closure();
  CHECK(cl.contains(at(g, "3/10")));
  CHECK(cl.contains(at(g, "7/10")));
  CHECK(cl.is_closed());
  CHECK(cl == closed_iv(g, 0, "3/10", "7/10"));
  CHECK(Region::full(g).is_open());
  CHECK(Region::full(g).is_closed());
}

TEST_CASE("components and connectivity") {
  GraphPtr g = systems::unit_interval();
  Region r = open_iv(g, 0, "0", "1/5").united(open_iv(g, 0, "1/2", "3/5"));
  CHECK(!r.connected());
  CHECK(r.components().size() == 2);
  CHECK(open_iv(g, 0, "0", "1").connected());

  // Two interval parts joined through the circle vertex form one component.
  GraphPtr c = systems::circle();
  Region wrap = Region::edge_interval(c, 0, q("9/10"), Rat(1), false, true)
                    .united(Region::edge_interval(c, 0, Rat(0), q("1/10"), true, false));
  CHECK(wrap.connected());
  CHECK(wrap.components().size() == 1);
}

TEST_CASE("least point and representatives") {
  GraphPtr g = systems::unit_interval();
  CHECK(closed_iv(g, 0, "1/4", "1/2").min_point() == at(g, "1/4"));
  Region with_vertex = closed_iv(g, 0, "1/4", "1/2").united(Region::point(g, g->vertex_point(1)));
  CHECK(with_vertex.min_point() == g->vertex_point(1));
  Region open = open_iv(g, 0, "1/4", "1/2");
  GraphPoint rep = open.representative();
  CHECK(open.contains(rep));
  CHECK(Region::empty(g).empty());
  CHECK_THROWS_AS(Region::empty(g).representative(), input_error);
}

TEST_CASE("containment queries") {
  GraphPtr g = systems::unit_interval();
  Region big = closed_iv(g, 0, "0", "1/2");
  Region small = open_iv(g, 0, "1/10", "2/10");
  CHECK(big.contains_region(small));
  CHECK(!small.contains_region(big));
  CHECK(big.intersects(small));
  CHECK(!small.intersects(open_iv(g, 0, "1/2", "1")));
  // Touching at one open endpoint is not intersection.
  CHECK(!open_iv(g, 0, "0", "1/2").intersects(open_iv(g, 0, "1/2", "1")));
  CHECK(closed_iv(g, 0, "0", "1/2").intersects(closed_iv(g, 0, "1/2", "1")));
}
