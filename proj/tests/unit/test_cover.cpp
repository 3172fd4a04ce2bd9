#include "helpers.hpp"
#include "shadowcert/geometry.hpp"

using namespace shadowcert;
using namespace shadowcert::test;

TEST_CASE("three-interval cover of the tent space") {
  GraphPtr g = systems::unit_interval();
  TautCover c = systems::tent_cover3(g);
  CHECK(c.size() == 3);
  CHECK(c.lebesgue() == q("1/20"));
  CHECK(c.member_diameter(0) == q("2/5"));
  CHECK(c.member_diameter(1) == q("2/5"));
  CHECK(c.max_member_diameter() == q("2/5"));
  CHECK(c.closure_of(0) == closed_iv(g, 0, "0", "2/5"));
  CHECK(c.closures_meet(0, 1));
  CHECK(!c.closures_meet(0, 2));
  CHECK(c.member_containing(at(g, "35/100")) == 0);
  auto both = c.members_containing(at(g, "35/100"));
  CHECK(both == std::vector<int>{0, 1});
  CHECK(c.member_containing(g->vertex_point(1)) == 2);
}

TEST_CASE("tautness violations are rejected") {
  GraphPtr g = systems::unit_interval();
  // Not a cover: the midpoint is missing.
  std::vector<Region> holes;
  holes.push_back(Region::edge_interval(g, 0, Rat(0), q("1/2"), true, false));
  holes.push_back(Region::edge_interval(g, 0, q("1/2"), Rat(1), false, true));
  CHECK_THROWS_AS(TautCover(g, holes), construction_error);

  // Closures meet at 1/2 but the members do not.
  std::vector<Region> touch;
  touch.push_back(Region::edge_interval(g, 0, Rat(0), q("1/2"), true, false));
  touch.push_back(Region::edge_interval(g, 0, q("1/2"), Rat(1), false, true));
  touch.push_back(open_iv(g, 0, "2/5", "3/5"));
  CHECK_THROWS_AS(TautCover(g, touch), construction_error);

  // The second member has no point outside the first member's closure.
  std::vector<Region> swallowed;
  swallowed.push_back(Region::full(g));
  swallowed.push_back(open_iv(g, 0, "1/4", "3/4"));
  CHECK_THROWS_AS(TautCover(g, swallowed), construction_error);

  // Members must be open.
  std::vector<Region> closed_member;
  closed_member.push_back(Region::full(g));
  closed_member.push_back(closed_iv(g, 0, "1/4", "3/4"));
  CHECK_THROWS_AS(TautCover(g, closed_member), construction_error);
}

TEST_CASE("core sets shrink with eta") {
  GraphPtr g = systems::unit_interval();
  TautCover c = systems::tent_cover3(g);
  CHECK(core_set(c, 1, q("1/20")) == open_iv(g, 0, "45/100", "55/100"));
  CHECK(core_set(c, 1, q("1/4")).empty());
  Region core0 = core_set(c, 0, q("1/20"));
  CHECK(core0.contains(g->vertex_point(0)));
  CHECK(core0.contains(at(g, "1/5")));
  CHECK(!core0.contains(at(g, "1/4")));
  auto all = core_sets(c, q("1/20"));
  REQUIRE(all.size() == 3);
  CHECK(all[1] == core_set(c, 1, q("1/20")));
}

TEST_CASE("cover construction adapted to a map") {
  GraphPtr g = systems::unit_interval();
  PLMap t = systems::tent_map(g);
  Rat eps = q("2/5");
  TautCover c = build_taut_cover(t, eps);
  CHECK(c.size() > 1);
  CHECK(c.lebesgue() > 0);
  for (int i = 0; i < c.size(); ++i) {
    CHECK(c.member_diameter(i) < eps / 5);
    CHECK(region_diameter(t.image_region(c.closure_of(i))) < eps / 5);
  }

  // A budget above five graph diameters collapses to the one-member cover.
  TautCover whole = build_taut_cover(systems::identity_map(g), Rat(6));
  CHECK(whole.size() == 1);
  CHECK(whole.lebesgue() == q("1/2"));
}
