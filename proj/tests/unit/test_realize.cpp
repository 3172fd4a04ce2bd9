#include "shadowcert/realize.hpp"

#include "helpers.hpp"

using namespace shadowcert;
using namespace shadowcert::test;

namespace {

// d(h^i(z), cl U_{p_i}) == 0 for every i, checked exactly.
bool passes_closure_chain(const PLMap& h, const TautCover& c, const std::vector<int>& pattern,
                          GraphPoint z) {
  for (std::size_t i = 0; i < pattern.size(); ++i) {
    if (!c.closure_of(pattern[i]).contains(z)) return false;
    if (i + 1 < pattern.size()) z = h.evaluate(z);
  }
  return true;
}

}  // namespace

TEST_CASE("pattern realization intersects closure preimages") {
  GraphPtr g = systems::unit_interval();
  PLMap t = systems::tent_map(g);
  TautCover c = systems::tent_cover3(g);

  RealizationResult r = realize_pattern(t, c, {1, 2, 1});
  REQUIRE(r.realized);
  REQUIRE(r.witness.has_value());
  CHECK(*r.witness == at(g, "13/40"));
  REQUIRE(r.trace.size() == 3);
  CHECK(r.trace[0].contains_region(closed_iv(g, 0, "13/40", "7/20")));
  CHECK(passes_closure_chain(t, c, {1, 2, 1}, *r.witness));

  RealizationResult none = realize_pattern(t, c, {1, 0});
  CHECK(!none.realized);
  CHECK(!none.witness.has_value());
}

TEST_CASE("realizing regions shrink along prefixes") {
  GraphPtr g = systems::unit_interval();
  PLMap t = systems::tent_map(g);
  TautCover c = systems::tent_cover3(g);
  RealizationResult longer = realize_pattern(t, c, {1, 2, 1});
  RealizationResult shorter = realize_pattern(t, c, {1, 2});
  REQUIRE(longer.realized);
  REQUIRE(shorter.realized);
  CHECK(shorter.trace[0].contains_region(longer.trace[0]));
}

TEST_CASE("exact orbits are shadowed at every positive radius") {
  GraphPtr g = systems::unit_interval();
  PLMap t = systems::tent_map(g);
  PseudoOrbit po{{at(g, "7/20"), at(g, "7/10"), at(g, "3/5")}, q("1/100")};
  REQUIRE(pseudo_orbit_valid(t, po));
  ShadowingResult s = check_shadowing(t, po, q("1/100"));
  REQUIRE(s.shadowed);
  REQUIRE(s.witness.has_value());
  GraphPoint z = *s.witness;
  for (const GraphPoint& x : po.points) {
    CHECK(g->distance(z, x) < q("1/100"));
    z = t.evaluate(z);
  }
}

TEST_CASE("identity drift refutes shadowing below half the span") {
  GraphPtr g = systems::unit_interval();
  PLMap id = systems::identity_map(g);
  PseudoOrbit po = generate_pseudo_orbit(id, q("1/10"), 11, OrbitStrategy::Drift, 1);
  REQUIRE(pseudo_orbit_valid(id, po));
  // The orbit spans [0, 99/100]; one fixed point must reach both ends.
  CHECK(!check_shadowing(id, po, q("3/10")).shadowed);
  CHECK(!check_shadowing(id, po, q("99/200")).shadowed);
  ShadowingResult mid = check_shadowing(id, po, q("1/2"));
  REQUIRE(mid.shadowed);
  CHECK(g->distance(*mid.witness, at(g, "99/200")) < q("1/200"));
}

TEST_CASE("grid oracle agrees with exact realization") {
  GraphPtr g = systems::unit_interval();
  PLMap t = systems::tent_map(g);
  TautCover c = systems::tent_cover3(g);

  OracleResult hit = grid_oracle(t, c, {1, 2, 1}, 4096);
  REQUIRE(hit.realized);
  REQUIRE(hit.witness.has_value());
  CHECK(hit.exact_membership == passes_closure_chain(t, c, {1, 2, 1}, *hit.witness));

  OracleResult miss = grid_oracle(t, c, {1, 0}, 4096);
  CHECK(!miss.realized);

  OracleResult serial = grid_oracle_serial(t, c, {1, 2, 1}, 4096);
  CHECK(serial.realized == hit.realized);
  CHECK(serial.witness == hit.witness);
  CHECK(serial.exact_membership == hit.exact_membership);
}

TEST_CASE("grid oracle at resolution one still sees vertices") {
  GraphPtr g = systems::unit_interval();
  PLMap id = systems::identity_map(g);
  TautCover c = systems::tent_cover3(g);
  OracleResult r = grid_oracle(id, c, {0, 0, 0}, 1);
  REQUIRE(r.realized);
  CHECK(*r.witness == g->vertex_point(0));
  CHECK(r.exact_membership);
}
