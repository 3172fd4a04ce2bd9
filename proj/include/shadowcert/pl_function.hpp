// Continuous piecewise-linear functions of one variable with rational
// breakpoints.  Used for exact distance profiles along edges.
#pragma once

#include <utility>
#include <vector>

#include "shadowcert/region.hpp"

namespace shadowcert {

struct PLFunction {
  // Strictly increasing xs with matching ys; linear between, |xs| >= 2.
  std::vector<Rat> xs, ys;

  static PLFunction affine(const Rat& x0, const Rat& x1, const Rat& y0, const Rat& y1);
  static PLFunction constant(const Rat& x0, const Rat& x1, const Rat& c);
  // t -> |t - c| on [x0, x1]; c may lie outside the domain.
  static PLFunction abs_dist(const Rat& x0, const Rat& x1, const Rat& c);

  const Rat& domain_lo() const { return xs.front(); }
  const Rat& domain_hi() const { return xs.back(); }

  Rat eval(const Rat& t) const;
  PLFunction min_with(const PLFunction& o) const;
  PLFunction max_with(const PLFunction& o) const;
  PLFunction plus(const Rat& c) const;
  PLFunction restrict_to(const Rat& a, const Rat& b) const;

  // (value, leftmost attaining x).
  std::pair<Rat, Rat> min_point() const;
  std::pair<Rat, Rat> max_point() const;

  // {t : f(t) < c} (strict) or {t : f(t) <= c}; intervals within the domain,
  // endpoint flags exact.
  std::vector<Interval> sublevel(const Rat& c, bool strict) const;
  // {t : f(t) > c} / {t : f(t) >= c}.
  std::vector<Interval> superlevel(const Rat& c, bool strict) const;

  void prune();  // drop collinear interior breakpoints
};

}  // namespace shadowcert
