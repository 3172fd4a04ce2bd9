#include "helpers.hpp"

using namespace shadowcert;
using shadowcert::test::q;

TEST_CASE("rational parsing and printing") {
  CHECK(rat_str(q("3/4")) == "3/4");
  CHECK(rat_str(q("-7")) == "-7");
  CHECK(q("0.25") == Rat(1, 4));
  CHECK(q("6/8") == Rat(3, 4));
  CHECK(rat_str(Rat(6, 8)) == "3/4");
  CHECK(!rat_parse("abc").has_value());
  CHECK(!rat_parse("5/").has_value());
  CHECK(!rat_parse("").has_value());
  CHECK(!rat_parse("1 2").has_value());
}

TEST_CASE("floor and helpers") {
  CHECK(rat_floor(q("7/2")) == 3);
  CHECK(rat_floor(q("-7/2")) == -4);
  CHECK(rat_floor(q("4")) == 4);
  CHECK(rat_abs(q("-2/3")) == q("2/3"));
  CHECK(rat_min(q("1/3"), q("1/4")) == q("1/4"));
  CHECK(rat_max(q("1/3"), q("1/4")) == q("1/3"));
}

TEST_CASE("dyadic interior points") {
  Rat lo(1, 3), hi(1, 2);
  Rat d = dyadic_inside(lo, hi);
  CHECK(lo < d);
  CHECK(d < hi);
  for (std::uint64_t k = 0; k < 40; ++k) {
    Rat p = dyadic_inside_at(lo, hi, k);
    CHECK(lo < p);
    CHECK(p < hi);
  }
}

TEST_CASE("seeded stream determinism") {
  SplitMix a(12345), b(12345), c(54321);
  bool all_equal = true, any_diff = false;
  for (int i = 0; i < 100; ++i) {
    std::uint64_t x = a.next(), y = b.next(), z = c.next();
    all_equal &= x == y;
    any_diff |= x != z;
  }
  CHECK(all_equal);
  CHECK(any_diff);
  CHECK(mix_seed(1, 2) == mix_seed(1, 2));
  CHECK(mix_seed(1, 2) != mix_seed(2, 1));
}
