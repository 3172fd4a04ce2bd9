#include "shadowcert/transition.hpp"

#include "helpers.hpp"

using namespace shadowcert;
using namespace shadowcert::test;

TEST_CASE("cover transitions of the tent map") {
  GraphPtr g = systems::unit_interval();
  TautCover c = systems::tent_cover3(g);
  TransitionRelation phi = compute_transition(systems::tent_map(g), c);
  REQUIRE(phi.k == 3);
  CHECK(phi.succ[0] == std::vector<int>{0, 1, 2});
  CHECK(phi.succ[1] == std::vector<int>{1, 2});
  CHECK(phi.succ[2] == std::vector<int>{0, 1, 2});
  CHECK(phi.has(1, 2));
  CHECK(!phi.has(1, 0));
  CHECK(phi.allows({1, 2, 1}));
  CHECK(!phi.allows({1, 0}));
}

TEST_CASE("cover transitions of the identity") {
  GraphPtr g = systems::unit_interval();
  TautCover c = systems::tent_cover3(g);
  TransitionRelation phi = compute_transition(systems::identity_map(g), c);
  CHECK(phi.succ[0] == std::vector<int>{0, 1});
  CHECK(phi.succ[1] == std::vector<int>{0, 1, 2});
  CHECK(phi.succ[2] == std::vector<int>{1, 2});
}

TEST_CASE("walk enumeration") {
  GraphPtr g = systems::unit_interval();
  TautCover c = systems::tent_cover3(g);
  TransitionRelation phi = compute_transition(systems::tent_map(g), c);

  PatternStream from1(phi, 1, 2);
  std::vector<std::vector<int>> walks;
  std::vector<int> w;
  while (from1.next(w)) walks.push_back(w);
  CHECK(walks == std::vector<std::vector<int>>{{1, 1}, {1, 2}});

  TransitionRelation complete{3, {{0, 1, 2}, {0, 1, 2}, {0, 1, 2}}};
  CHECK(count_patterns(complete, std::nullopt, 4) == 81);
  CHECK(enumerate_patterns(complete, std::nullopt, 4, 100).size() == 81);
  // The budget truncates the deterministic order instead of throwing.
  std::vector<std::vector<int>> capped = enumerate_patterns(complete, std::nullopt, 4, 10);
  CHECK(capped.size() == 10);
  CHECK(capped.back() == std::vector<int>{0, 1, 0, 0});
  CHECK(count_patterns(phi, 1, 2) == 2);

  // Streams and bulk enumeration agree.
  PatternStream all(phi, std::nullopt, 3);
  std::size_t streamed = 0;
  while (all.next(w)) {
    CHECK(phi.allows(w));
    ++streamed;
  }
  CHECK(streamed == enumerate_patterns(phi, std::nullopt, 3, 1000).size());
  CHECK(count_patterns(phi, std::nullopt, 3) == streamed);
}
