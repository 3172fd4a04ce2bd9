// Shadowing certificates: a perturbed map g near f together with exact radii
// (gamma, delta, n) such that every map within gamma of g has every
// delta-pseudo-orbit 1/n-shadowed.
#pragma once

#include "shadowcert/skeleton.hpp"

namespace shadowcert {

struct GammaResult {
  Rat gamma, tau, xi;
};

// gamma = half the least of: tau (separation from member images under g to
// non-successor closures), eta, xi (arc spacing and edge margins, halved),
// and xi over the moduli of the retraction and of g.  Margins at or below
// zero raise certificate_error.
GammaResult compute_gamma(const PLMap& g, const PerturbationScaffold& s, const TautCover& c);

struct ShadowingCertificate {
  Rat eps;
  int n = 0;
  TautCover cover;
  PLMap g;
  PLMap source;  // the map that was certified
  Rat gamma, delta, tau, xi, eta, lambda;
  TransitionRelation phi;
  std::vector<ArcSpec> arcs;
  bool surjective = false;
  std::uint64_t seed = 0;
  std::vector<std::string> log;
};

struct CertifyOptions {
  bool surjective = false;
  std::uint64_t seed = 0;
  std::optional<Retraction> retraction;
};

// Pipeline: cover for the working map, admissible (eta, lambda), skeleton
// (surjective extension on request), gamma.  Requires 0 < eps < 1/n.  All
// certificate invariants are established with exact arithmetic.
ShadowingCertificate certify_perturbation(const PLMap& f, const Rat& eps, int n,
                                          const CertifyOptions& options = {});

// Exact re-verification of a certificate's stored claims: margin ordering,
// delta = Lebesgue number, distance to the source, transition equality, and
// every block image.  Throws certificate_error on the first violation.
void validate_certificate(const ShadowingCertificate& cert);

}  // namespace shadowcert
