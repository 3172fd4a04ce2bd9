// Skeleton perturbations: inside the core of every cover member an arc is
// subdivided into blocks that map linearly onto the arcs of successor
// members (plus, in surjective mode, onto a tiling of the whole graph),
// joined by connector paths routed away from all non-successor closures.
// The result is a map g near f whose cover transitions are exactly the
// prescribed relation, with quantitative margins that survive perturbation.
#pragma once

#include "shadowcert/realize.hpp"

namespace shadowcert {

// Largest step size that propagates to an eps/2 image displacement, capped
// at eps/2.  Exact via the Lipschitz modulus.
Rat compute_lambda(const PLMap& f, const Rat& eps);

struct EtaLambda {
  Rat eta;
  Rat lambda;
};

// eta found by halving from eps/5 until, exactly: every core set contains a
// nondegenerate arc inside a single edge; disjoint members are more than eta
// apart; every non-successor closure is more than eta from the member image.
// lambda = min(compute_lambda(f, eps), eta/2), so eta > lambda.
EtaLambda select_eta_lambda(const PLMap& f, const TautCover& c, const Rat& eps);

struct ArcSpec {
  int cover_index = -1;
  int edge = -1;
  Rat lo, hi;  // closed arc strictly inside the edge
  Rat gap;     // uniform spacing of the subdivision
  // b_0 < a_1 < b_1 < ... < a_N < b_N < a_{N+1}; N = slots + pieces.
  std::vector<Rat> points;
  std::vector<int> slots;   // successor cover index per block, ascending
  std::vector<int> pieces;  // tile ids appended after the slots
  int block_count() const { return static_cast<int>(slots.size() + pieces.size()); }
  const Rat& block_lo(int t) const { return points[1 + 2 * t]; }
  const Rat& block_hi(int t) const { return points[2 + 2 * t]; }
};

struct PerturbationScaffold {
  Rat eta;
  Rat lambda;
  TransitionRelation phi;      // realized exactly by g
  std::vector<ArcSpec> arcs;   // one per cover index
  std::vector<Region> spans;   // g(cl U_i); meets U_j iff j in phi(i)
  std::optional<Retraction> retraction;  // nontrivial pi tightens gamma
};

struct SkeletonOptions {
  Rat eps;     // sup-distance budget for g vs f
  Rat eta;
  Rat lambda;
  const TransitionRelation* augment = nullptr;  // extra successors to realize
  std::optional<Retraction> retraction;
};

struct SkeletonResult {
  PLMap g;
  PerturbationScaffold scaffold;
};

// Builds g with sup_distance(g, f) < eps and compute_transition(g) equal to
// the transition relation of f merged with the augment rows.  Every block
// image, the relation equality, and the per-row diameter bound are verified
// exactly before returning.
SkeletonResult build_skeleton(const PLMap& f, const TautCover& c, const SkeletonOptions& opt);

struct PieceTile {
  int edge = -1;
  Rat lo, hi;        // closed tile
  int assigned_to = -1;  // least cover index whose member image contains it
};

struct SurjectiveScaffold {
  Rat piece_size;
  std::vector<PieceTile> pieces;
  std::vector<std::vector<int>> psi;  // tile ids carried by each arc
};

struct SurjectiveResult {
  PLMap g;
  PerturbationScaffold scaffold;
  SurjectiveScaffold surj;
};

// Rebuilds the skeleton with extra blocks mapping onto a closed tiling of
// the graph, one owner arc per tile, so g is surjective (checked exactly).
// Requires a surjective f.
SurjectiveResult extend_surjective(const PLMap& f, const TautCover& c,
                                   const SkeletonOptions& opt);

}  // namespace shadowcert
