#include "shadowcert/pseudo_orbit.hpp"

#include "helpers.hpp"

using namespace shadowcert;
using namespace shadowcert::test;

TEST_CASE("validity is a strict gap bound") {
  GraphPtr g = systems::unit_interval();
  PLMap t = systems::tent_map(g);
  PseudoOrbit exact{{at(g, "35/100"), at(g, "7/10"), at(g, "3/5")}, q("1/100")};
  CHECK(pseudo_orbit_valid(t, exact));
  PseudoOrbit jump{{at(g, "35/100"), at(g, "3/4")}, q("1/100")};
  CHECK(!pseudo_orbit_valid(t, jump));
  PseudoOrbit att{{at(g, "35/100"), at(g, "71/100")}, q("1/100")};
  CHECK(!pseudo_orbit_valid(t, att));  // the gap equals delta
}

TEST_CASE("drift orbits walk away from their anchor") {
  GraphPtr g = systems::unit_interval();
  PLMap id = systems::identity_map(g);
  PseudoOrbit po = generate_pseudo_orbit(id, q("1/10"), 11, OrbitStrategy::Drift, 3);
  REQUIRE(po.points.size() == 11);
  CHECK(po.points[0] == g->vertex_point(0));
  CHECK(po.points[1] == at(g, "99/1000"));
  CHECK(po.points[10] == at(g, "99/100"));
  CHECK(pseudo_orbit_valid(id, po));
}

TEST_CASE("random orbits validate for every system") {
  for (const char* name : {"tent", "doubling", "yfold", "whisker"}) {
    auto sys = systems::by_name(name);
    PseudoOrbit po = generate_pseudo_orbit(sys.map, q("1/50"), 40, OrbitStrategy::Random, 7);
    CHECK(pseudo_orbit_valid(sys.map, po));
    PseudoOrbit re = generate_pseudo_orbit(sys.map, q("1/50"), 40, OrbitStrategy::Random, 7);
    CHECK(po.points == re.points);
  }
}

TEST_CASE("pattern assignment pairs each point with the previous image") {
  GraphPtr g = systems::unit_interval();
  PLMap t = systems::tent_map(g);
  TautCover c = systems::tent_cover3(g);
  PseudoOrbit po{{at(g, "1/3"), at(g, "2/3"), at(g, "2/3")}, q("1/20")};
  REQUIRE(pseudo_orbit_valid(t, po));
  CHECK(assign_pattern(po, t, c) == std::vector<int>{0, 1, 1});

  PseudoOrbit fixed{{g->vertex_point(0), g->vertex_point(0), g->vertex_point(0)}, q("1/20")};
  CHECK(assign_pattern(fixed, t, c) == std::vector<int>{0, 0, 0});

  PseudoOrbit wide{{at(g, "1/3"), at(g, "2/3")}, q("1/2")};
  CHECK_THROWS_AS(assign_pattern(wide, t, c), input_error);
}

TEST_CASE("assigned patterns are walks of the transition relation") {
  GraphPtr g = systems::unit_interval();
  PLMap t = systems::tent_map(g);
  TautCover c = systems::tent_cover3(g);
  TransitionRelation phi = compute_transition(t, c);
  Rat delta = c.lebesgue();
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    PseudoOrbit po = generate_pseudo_orbit(t, delta, 25, OrbitStrategy::Random, seed);
    CHECK(phi.allows(assign_pattern(po, t, c)));
  }
}

TEST_CASE("guided orbits follow their pattern") {
  GraphPtr g = systems::unit_interval();
  PLMap t = systems::tent_map(g);
  TautCover c = systems::tent_cover3(g);
  std::vector<int> pattern{0, 1, 1, 2, 1};
  PseudoOrbit po = generate_pseudo_orbit(t, q("1/20"), 5, OrbitStrategy::PatternGuided, 11,
                                         std::nullopt, &c, &pattern);
  REQUIRE(po.points.size() == 5);
  for (int i = 0; i < 5; ++i) CHECK(c.member(pattern[i]).contains(po.points[i]));
  CHECK(pseudo_orbit_valid(t, po));

  // (1,0) is not a transition of the tent relation; no orbit can follow it.
  std::vector<int> blocked{1, 0};
  CHECK_THROWS_AS(generate_pseudo_orbit(t, q("1/20"), 2, OrbitStrategy::PatternGuided, 11,
                                        std::nullopt, &c, &blocked),
                  construction_error);
}
