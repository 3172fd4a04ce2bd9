#pragma once

#include <doctest.h>

#include "shadowcert/systems.hpp"

namespace shadowcert::test {

inline Rat q(const char* s) {
  auto r = rat_parse(s);
  REQUIRE(r.has_value());
  return *r;
}

inline GraphPoint at(const GraphPtr& g, const char* offset) { return g->point(0, q(offset)); }

inline Region closed_iv(const GraphPtr& g, int e, const char* lo, const char* hi) {
  return Region::edge_interval(g, e, q(lo), q(hi), true, true);
}

inline Region open_iv(const GraphPtr& g, int e, const char* lo, const char* hi) {
  return Region::edge_interval(g, e, q(lo), q(hi), false, false);
}

}  // namespace shadowcert::test
