#include "shadowcert/verify.hpp"

#include "helpers.hpp"

using namespace shadowcert;
using namespace shadowcert::test;

TEST_CASE("lambda caps the step size against the modulus") {
  GraphPtr g = systems::unit_interval();
  CHECK(compute_lambda(systems::tent_map(g), 1) == q("1/4"));
  CHECK(compute_lambda(systems::identity_map(g), q("1/2")) == q("1/4"));
  PLMap constant(g, {{{Rat(0), Rat(1), Walk{{WalkStep{0, q("1/2"), q("1/2")}}}}}});
  CHECK(compute_lambda(constant, q("1/8")) == q("1/16"));
  CHECK_THROWS_AS(compute_lambda(constant, 0), input_error);
}

TEST_CASE("eta and lambda satisfy the margin ordering") {
  GraphPtr g = systems::unit_interval();
  PLMap t = systems::tent_map(g);
  Rat eps = q("2/5");
  TautCover c = build_taut_cover(t, eps);
  EtaLambda el = select_eta_lambda(t, c, eps);
  CHECK(el.eta > 0);
  CHECK(el.eta <= eps / 5);
  CHECK(el.lambda == rat_min(compute_lambda(t, eps), Rat(el.eta / 2)));
  CHECK(el.eta > el.lambda);
}

TEST_CASE("certification establishes every stored invariant") {
  GraphPtr g = systems::unit_interval();
  PLMap t = systems::tent_map(g);
  ShadowingCertificate cert = certify_perturbation(t, q("2/5"), 2);
  validate_certificate(cert);

  CHECK(cert.eps == q("2/5"));
  CHECK(cert.n == 2);
  CHECK(cert.gamma > 0);
  CHECK(cert.delta == cert.cover.lebesgue());
  CHECK(sup_distance(cert.g, t) < q("2/5"));
  CHECK(compute_transition(cert.g, cert.cover) == cert.phi);

  // The perturbed transitions contain those of the source.
  TransitionRelation base = compute_transition(t, cert.cover);
  REQUIRE(base.k == cert.phi.k);
  for (int i = 0; i < base.k; ++i)
    for (int j : base.succ[i]) CHECK(cert.phi.has(i, j));

  CHECK_THROWS_AS(certify_perturbation(t, q("1/2"), 2), input_error);
}

TEST_CASE("surjective certification keeps the map onto") {
  GraphPtr g = systems::unit_interval();
  PLMap t = systems::tent_map(g);
  CertifyOptions opt;
  opt.surjective = true;
  ShadowingCertificate cert = certify_perturbation(t, q("2/5"), 2, opt);
  validate_certificate(cert);
  CHECK(cert.surjective);
  CHECK(cert.g.is_surjective());
  CHECK(sup_distance(cert.g, t) < q("2/5"));
}

TEST_CASE("a retraction with a small fiber bound is accepted") {
  auto sys = systems::by_name("whisker");
  CertifyOptions opt;
  opt.retraction = systems::whisker_retraction(sys.graph);
  ShadowingCertificate cert = certify_perturbation(sys.map, q("1/4"), 2, opt);
  validate_certificate(cert);
  CHECK(sup_distance(cert.g, sys.map) < q("1/4"));
}

TEST_CASE("ball verification is deterministic across kernels and runs") {
  GraphPtr g = systems::unit_interval();
  PLMap t = systems::tent_map(g);
  ShadowingCertificate cert = certify_perturbation(t, q("1/4"), 2);

  VerificationReport par = verify_ball(cert, 6, 4, 30, 5);
  CHECK(par.failures == 0);
  CHECK(!par.refuted);
  CHECK(par.strategy == "mixed");
  REQUIRE(par.results.size() == 6);
  CHECK(par.results[0].distance == 0);  // sample 0 is g itself
  for (const SampleResult& s : par.results) {
    CHECK(s.transition_ok);
    CHECK(s.distance < cert.gamma);
  }

  VerificationReport ser = verify_ball_serial(cert, 6, 4, 30, 5);
  CHECK(ser.to_json() == par.to_json());
  VerificationReport again = verify_ball(cert, 6, 4, 30, 5);
  CHECK(again.to_json() == par.to_json());

  VerificationReport drift = verify_ball(cert, 3, 2, 20, 5, TrialStrategy::Drift);
  CHECK(drift.strategy == "drift");
  CHECK(drift.failures == 0);
}
