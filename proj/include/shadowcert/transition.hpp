// The cover-transition relation of a map: which member closures the image of
// each member closure meets.  Walks of this relation are the cover patterns
// of pseudo-orbits.
#pragma once

#include "shadowcert/cover.hpp"

namespace shadowcert {

struct TransitionRelation {
  int k = 0;
  std::vector<std::vector<int>> succ;  // per index, sorted ascending, nonempty

  bool operator==(const TransitionRelation& o) const { return k == o.k && succ == o.succ; }
  bool has(int i, int j) const {
    return std::binary_search(succ[i].begin(), succ[i].end(), j);
  }
  // Every consecutive pair is a transition.
  bool allows(const std::vector<int>& pattern) const;
};

// Exact: j is a successor of i iff h(cl U_i) meets cl U_j.
TransitionRelation compute_transition(const PLMap& h, const TautCover& c);

// Lexicographically ordered walks of a fixed length (number of states).
// With a start index only walks from that state are produced.
class PatternStream {
 public:
  PatternStream(const TransitionRelation& t, std::optional<int> start, int length);
  // Fills out with the next walk; false when exhausted.
  bool next(std::vector<int>& out);

 private:
  const TransitionRelation* t_;
  int length_;
  std::optional<int> start_;
  std::vector<int> current_;
  bool done_ = false;
  bool primed_ = false;

  bool descend(int from_pos);
  bool advance();
};

// Collects up to budget walks from the stream.
std::vector<std::vector<int>> enumerate_patterns(const TransitionRelation& t,
                                                 std::optional<int> start, int length,
                                                 std::uint64_t budget);

// Exact number of length-`length` walks (sum over start states unless fixed).
mpz_class count_patterns(const TransitionRelation& t, std::optional<int> start, int length);

}  // namespace shadowcert
