#include "shadowcert/transition.hpp"

#include <algorithm>

#include "shadowcert/geometry.hpp"

namespace shadowcert {

bool TransitionRelation::allows(const std::vector<int>& pattern) const {
  for (int j : pattern)
    if (j < 0 || j >= k) return false;
  for (size_t i = 0; i + 1 < pattern.size(); ++i)
    if (!has(pattern[i], pattern[i + 1])) return false;
  return !pattern.empty();
}

TransitionRelation compute_transition(const PLMap& h, const TautCover& c) {
  if (!h.graph()->same_shape(*c.graph())) throw input_error("compute_transition: graphs differ");
  TransitionRelation t;
  t.k = c.size();
  t.succ.resize(t.k);
  for (int i = 0; i < t.k; ++i) {
    Region image = h.image_region(c.closure_of(i));
    for (int j = 0; j < t.k; ++j)
      if (region_intersects(image, c.closure_of(j))) t.succ[i].push_back(j);
    if (t.succ[i].empty()) throw construction_error("compute_transition: empty successor set");
  }
  return t;
}

PatternStream::PatternStream(const TransitionRelation& t, std::optional<int> start, int length)
    : t_(&t), length_(length), start_(start) {
  if (length < 1) throw input_error("pattern stream: length must be positive");
  if (start && (*start < 0 || *start >= t.k)) throw input_error("pattern stream: bad start");
}

// Extends current_ from from_pos with lexicographically least choices.
bool PatternStream::descend(int from_pos) {
  for (int p = from_pos; p < length_; ++p) {
    int prev = current_[p - 1];
    if (t_->succ[prev].empty()) return false;  // cannot happen for valid relations
    current_.resize(p);
    current_.push_back(t_->succ[prev].front());
  }
  return true;
}

bool PatternStream::advance() {
  // Increment the last position that still has a larger sibling.
  for (int p = length_ - 1; p >= 1; --p) {
    const auto& options = t_->succ[current_[p - 1]];
    auto it = std::upper_bound(options.begin(), options.end(), current_[p]);
    if (it != options.end()) {
      current_[p] = *it;
      return descend(p + 1);
    }
  }
  // Advance the start state.
  if (start_) return false;
  if (current_[0] + 1 >= t_->k) return false;
  current_[0] += 1;
  current_.resize(1);
  return descend(1);
}

bool PatternStream::next(std::vector<int>& out) {
  if (done_) return false;
  if (!primed_) {
    primed_ = true;
    current_.clear();
    current_.push_back(start_ ? *start_ : 0);
    if (!descend(1)) {
      done_ = true;
      return false;
    }
  } else if (!advance()) {
    done_ = true;
    return false;
  }
  out = current_;
  return true;
}

std::vector<std::vector<int>> enumerate_patterns(const TransitionRelation& t,
                                                 std::optional<int> start, int length,
                                                 std::uint64_t budget) {
  std::vector<std::vector<int>> out;
  PatternStream stream(t, start, length);
  std::vector<int> walk;
  while (out.size() < budget && stream.next(walk)) out.push_back(walk);
  return out;
}

mpz_class count_patterns(const TransitionRelation& t, std::optional<int> start, int length) {
  if (length < 1) throw input_error("count_patterns: length must be positive");
  // ways[i] = number of walks of the remaining length starting at i.
  std::vector<mpz_class> ways(t.k, 1);
  for (int step = 1; step < length; ++step) {
    std::vector<mpz_class> next(t.k, 0);
    for (int i = 0; i < t.k; ++i)
      for (int j : t.succ[i]) next[i] += ways[j];
    ways = std::move(next);
  }
  if (start) return ways[*start];
  mpz_class total = 0;
  for (const mpz_class& w : ways) total += w;
  return total;
}

}  // namespace shadowcert
