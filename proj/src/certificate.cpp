#include "shadowcert/certificate.hpp"

#include "shadowcert/geometry.hpp"

namespace shadowcert {

GammaResult compute_gamma(const PLMap& g, const PerturbationScaffold& s, const TautCover& c) {
  if (g.graph() != c.graph()) throw input_error("map and cover live on different graphs");
  const int k = c.size();
  if (static_cast<int>(s.spans.size()) != k || static_cast<int>(s.arcs.size()) != k ||
      s.phi.k != k)
    throw input_error("scaffold does not match the cover");

  std::optional<Rat> tau;
  for (int i = 0; i < k; ++i)
    for (int l = 0; l < k; ++l) {
      if (s.phi.has(i, l)) continue;
      Rat d = region_distance(s.spans[i], c.closure_of(l));
      if (!tau || d < *tau) tau = d;
    }
  if (tau && !(*tau > 0))
    throw certificate_error("a member image touches a non-successor closure");

  std::optional<Rat> xm;
  for (const ArcSpec& a : s.arcs) {
    const Rat& len = g.graph()->edge(a.edge).length;
    Rat m = rat_min(a.gap, rat_min(a.lo, len - a.hi));
    if (!xm || m < *xm) xm = m;
  }
  if (!xm || !(*xm > 0)) throw certificate_error("degenerate arc margins");
  Rat xi = *xm / 2;

  Rat lg = g.lipschitz_modulus();
  if (lg < 1) lg = 1;
  Rat lr(1);
  if (s.retraction && !s.retraction->is_identity()) {
    lr = s.retraction->map.lipschitz_modulus();
    if (lr < 1) lr = 1;
  }
  Rat gamma = rat_min(s.eta, rat_min(xi, rat_min(xi / lr, xi / lg)));
  if (tau) gamma = rat_min(gamma, *tau);
  gamma = gamma / 2;
  if (!(gamma > 0)) throw certificate_error("gamma margin vanished");
  // No separation constraint exists when every row is full; record eta so the
  // gamma < tau ordering stays meaningful.
  return {gamma, tau ? *tau : s.eta, xi};
}

ShadowingCertificate certify_perturbation(const PLMap& f, const Rat& eps, int n,
                                          const CertifyOptions& options) {
  if (n < 1) throw input_error("n must be at least 1");
  if (!(eps > 0) || !(eps < Rat(1, n))) throw input_error("need 0 < eps < 1/n");

  std::vector<std::string> log;
  std::optional<Retraction> retr = options.retraction;
  const bool retracting = retr && !retr->is_identity();
  if (retracting && options.surjective)
    throw input_error("surjective mode requires the identity retraction");

  std::optional<PLMap> work;
  Rat budget = eps;
  if (retracting) {
    if (retr->map.graph() != f.graph())
      throw input_error("retraction lives on a different graph");
    Rat lam0 = compute_lambda(f, eps);
    Rat disp = sup_distance(retr->map, PLMap::identity(f.graph()));
    if (!(disp < lam0))
      throw construction_error("retraction displaces points beyond lambda");
    work = retr->map.compose_after(f);
    Rat used = sup_distance(*work, f);
    budget = eps - used;
    if (!(budget > 0)) throw construction_error("retraction consumed the whole budget");
    log.push_back("retraction displacement " + rat_str(disp) + ", residual budget " +
                  rat_str(budget));
  } else {
    work = f;
  }

  TautCover cover = build_taut_cover(*work, budget);
  log.push_back("cover of " + std::to_string(cover.size()) + " members, Lebesgue number " +
                rat_str(cover.lebesgue()));
  EtaLambda el = select_eta_lambda(*work, cover, budget);
  log.push_back("eta " + rat_str(el.eta) + ", lambda " + rat_str(el.lambda));

  TransitionRelation aug{0, {}};
  SkeletonOptions sopt{budget, el.eta, el.lambda, nullptr, retr};
  if (retracting) {
    aug = compute_transition(f, cover);
    sopt.augment = &aug;
  }

  std::optional<PLMap> g;
  std::optional<PerturbationScaffold> scaffold;
  if (options.surjective) {
    SurjectiveResult r = extend_surjective(*work, cover, sopt);
    g = std::move(r.g);
    scaffold = std::move(r.scaffold);
    log.push_back("surjective extension with " + std::to_string(r.surj.pieces.size()) +
                  " tiles of size " + rat_str(r.surj.piece_size));
  } else {
    SkeletonResult r = build_skeleton(*work, cover, sopt);
    g = std::move(r.g);
    scaffold = std::move(r.scaffold);
  }
  log.push_back("skeleton with " + std::to_string(g->segment_count()) + " segments");

  GammaResult gr = compute_gamma(*g, *scaffold, cover);
  Rat dist = sup_distance(*g, f);
  if (!(dist < eps))
    throw construction_error("certified map strayed beyond eps from the source");
  Rat delta = cover.lebesgue();
  log.push_back("distance to source " + rat_str(dist) + ", gamma " + rat_str(gr.gamma) +
                ", delta " + rat_str(delta));

  return ShadowingCertificate{eps,
                              n,
                              std::move(cover),
                              std::move(*g),
                              f,
                              gr.gamma,
                              std::move(delta),
                              gr.tau,
                              gr.xi,
                              el.eta,
                              el.lambda,
                              std::move(scaffold->phi),
                              std::move(scaffold->arcs),
                              options.surjective,
                              options.seed,
                              std::move(log)};
}

void validate_certificate(const ShadowingCertificate& cert) {
  if (cert.n < 1 || !(cert.eps > 0) || !(cert.eps < Rat(1, cert.n)))
    throw certificate_error("eps and n violate 0 < eps < 1/n");
  if (!(cert.gamma > 0)) throw certificate_error("gamma is not positive");
  if (!(cert.gamma < cert.tau) || !(cert.gamma < cert.eta) || !(cert.gamma < cert.xi))
    throw certificate_error("gamma does not clear its margins");
  if (!(cert.delta == cert.cover.lebesgue()))
    throw certificate_error("delta is not the cover's Lebesgue number");
  if (!(sup_distance(cert.g, cert.source) < cert.eps))
    throw certificate_error("certified map is not within eps of the source");
  if (!(compute_transition(cert.g, cert.cover) == cert.phi))
    throw certificate_error("stored relation deviates from the certified map");
  if (static_cast<int>(cert.arcs.size()) != cert.cover.size())
    throw certificate_error("arc table does not match the cover");
  const GraphPtr& g = cert.g.graph();
  for (const ArcSpec& a : cert.arcs) {
    for (int t = 0; t < static_cast<int>(a.slots.size()); ++t) {
      const ArcSpec& tgt = cert.arcs[a.slots[t]];
      Region dom = Region::edge_interval(g, a.edge, a.block_lo(t), a.block_hi(t), true, true);
      Region want = Region::edge_interval(g, tgt.edge, tgt.lo, tgt.hi, true, true);
      if (!(cert.g.image_region(dom) == want))
        throw certificate_error("a block image deviates from its target arc");
    }
    // Separation behind tau, re-derived from the map itself.
    Region span = cert.g.image_region(cert.cover.closure_of(a.cover_index));
    for (int l = 0; l < cert.cover.size(); ++l) {
      if (cert.phi.has(a.cover_index, l)) continue;
      if (!(region_distance(span, cert.cover.closure_of(l)) >= cert.tau))
        throw certificate_error("stored tau exceeds the actual separation");
    }
  }
  if (cert.surjective && !cert.g.is_surjective())
    throw certificate_error("certificate claims surjectivity but the map is not onto");
}

}  // namespace shadowcert
