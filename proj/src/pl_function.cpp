#include "shadowcert/pl_function.hpp"

#include <algorithm>

namespace shadowcert {

PLFunction PLFunction::affine(const Rat& x0, const Rat& x1, const Rat& y0, const Rat& y1) {
  if (!(x0 < x1)) throw input_error("PLFunction: empty domain");
  PLFunction f;
  f.xs = {x0, x1};
  f.ys = {y0, y1};
  return f;
}

PLFunction PLFunction::constant(const Rat& x0, const Rat& x1, const Rat& c) {
  return affine(x0, x1, c, c);
}

PLFunction PLFunction::abs_dist(const Rat& x0, const Rat& x1, const Rat& c) {
  if (c <= x0) return affine(x0, x1, x0 - c, x1 - c);
  if (c >= x1) return affine(x0, x1, c - x0, c - x1);
  PLFunction f;
  f.xs = {x0, c, x1};
  f.ys = {c - x0, Rat(0), x1 - c};
  return f;
}

Rat PLFunction::eval(const Rat& t) const {
  if (t < xs.front() || t > xs.back()) throw input_error("PLFunction eval out of domain");
  size_t lo = 0, hi = xs.size() - 1;
  while (hi - lo > 1) {
    size_t mid = (lo + hi) / 2;
    if (xs[mid] <= t)
      lo = mid;
    else
      hi = mid;
  }
  const Rat& x0 = xs[lo];
  const Rat& x1 = xs[lo + 1];
  if (t == x0) return ys[lo];
  if (t == x1) return ys[lo + 1];
  return ys[lo] + (ys[lo + 1] - ys[lo]) * (t - x0) / (x1 - x0);
}

namespace {
PLFunction combine(const PLFunction& a, const PLFunction& b, bool take_min) {
  if (a.domain_lo() != b.domain_lo() || a.domain_hi() != b.domain_hi())
    throw input_error("PLFunction combine: domain mismatch");
  std::vector<Rat> grid;
  grid.reserve(a.xs.size() + b.xs.size());
  std::merge(a.xs.begin(), a.xs.end(), b.xs.begin(), b.xs.end(), std::back_inserter(grid));
  grid.erase(std::unique(grid.begin(), grid.end()), grid.end());
  // Insert crossings where the difference changes sign strictly inside a cell.
  std::vector<Rat> xs;
  xs.push_back(grid[0]);
  for (size_t i = 0; i + 1 < grid.size(); ++i) {
    Rat d0 = a.eval(grid[i]) - b.eval(grid[i]);
    Rat d1 = a.eval(grid[i + 1]) - b.eval(grid[i + 1]);
    if ((d0 < 0 && d1 > 0) || (d0 > 0 && d1 < 0)) {
      Rat t = grid[i] + (grid[i + 1] - grid[i]) * (-d0) / (d1 - d0);
      xs.push_back(t);
    }
    xs.push_back(grid[i + 1]);
  }
  PLFunction out;
  out.xs = xs;
  out.ys.reserve(xs.size());
  for (const Rat& x : xs) {
    Rat va = a.eval(x), vb = b.eval(x);
    out.ys.push_back(take_min ? rat_min(va, vb) : rat_max(va, vb));
  }
  out.prune();
  return out;
}
}  // namespace

PLFunction PLFunction::min_with(const PLFunction& o) const { return combine(*this, o, true); }
PLFunction PLFunction::max_with(const PLFunction& o) const { return combine(*this, o, false); }

PLFunction PLFunction::plus(const Rat& c) const {
  PLFunction f(*this);
  for (Rat& y : f.ys) y += c;
  return f;
}

PLFunction PLFunction::restrict_to(const Rat& a, const Rat& b) const {
  if (a < domain_lo() || b > domain_hi() || !(a < b))
    throw input_error("PLFunction restrict: bad range");
  PLFunction f;
  f.xs.push_back(a);
  f.ys.push_back(eval(a));
  for (size_t i = 0; i < xs.size(); ++i) {
    if (xs[i] > a && xs[i] < b) {
      f.xs.push_back(xs[i]);
      f.ys.push_back(ys[i]);
    }
  }
  f.xs.push_back(b);
  f.ys.push_back(eval(b));
  return f;
}

std::pair<Rat, Rat> PLFunction::min_point() const {
  Rat best = ys[0], arg = xs[0];
  for (size_t i = 1; i < xs.size(); ++i)
    if (ys[i] < best) {
      best = ys[i];
      arg = xs[i];
    }
  return {best, arg};
}

std::pair<Rat, Rat> PLFunction::max_point() const {
  Rat best = ys[0], arg = xs[0];
  for (size_t i = 1; i < xs.size(); ++i)
    if (ys[i] > best) {
      best = ys[i];
      arg = xs[i];
    }
  return {best, arg};
}

std::vector<Interval> PLFunction::sublevel(const Rat& c, bool strict) const {
  std::vector<Interval> raw;
  auto ok = [&](const Rat& v) { return strict ? v < c : v <= c; };
  for (size_t i = 0; i + 1 < xs.size(); ++i) {
    const Rat &x0 = xs[i], &x1 = xs[i + 1];
    const Rat &y0 = ys[i], &y1 = ys[i + 1];
    bool in0 = ok(y0), in1 = ok(y1);
    if (y0 == y1) {
      if (in0) raw.push_back({x0, x1, true, true});
      continue;
    }
    // Strictly monotone on the piece; at most one crossing of level c.
    Rat tc;
    bool has_tc = false;
    if ((y0 < c && y1 > c) || (y0 > c && y1 < c) || y0 == c || y1 == c) {
      tc = x0 + (x1 - x0) * (c - y0) / (y1 - y0);
      has_tc = tc >= x0 && tc <= x1;
    }
    if (in0 && in1) {
      raw.push_back({x0, x1, true, true});
    } else if (in0 && !in1) {
      // Leaves the set at the crossing.
      Rat end = has_tc ? tc : x1;
      raw.push_back({x0, end, true, !strict});
    } else if (!in0 && in1) {
      Rat begin = has_tc ? tc : x0;
      raw.push_back({begin, x1, !strict, true});
    } else if (has_tc && !strict && eval(tc) == c) {
      raw.push_back({tc, tc, true, true});
    }
  }
  IntervalSet s = iv_normalize(std::move(raw));
  return s.parts;
}

std::vector<Interval> PLFunction::superlevel(const Rat& c, bool strict) const {
  PLFunction neg(*this);
  for (Rat& y : neg.ys) y = -y;
  return neg.sublevel(-c, strict);
}

void PLFunction::prune() {
  if (xs.size() <= 2) return;
  std::vector<Rat> nx{xs[0]}, ny{ys[0]};
  for (size_t i = 1; i + 1 < xs.size(); ++i) {
    const Rat& xa = nx.back();
    const Rat& ya = ny.back();
    // Collinear test: (ys[i]-ya)/(xs[i]-xa) == (ys[i+1]-ya)/(xs[i+1]-xa).
    if ((ys[i] - ya) * (xs[i + 1] - xa) == (ys[i + 1] - ya) * (xs[i] - xa)) continue;
    nx.push_back(xs[i]);
    ny.push_back(ys[i]);
  }
  nx.push_back(xs.back());
  ny.push_back(ys.back());
  xs = std::move(nx);
  ys = std::move(ny);
}

}  // namespace shadowcert
