#include "shadowcert/verify.hpp"

#include <json.hpp>

namespace shadowcert {

namespace {

// Identity outside [c0, c1] on edge e; the point at tp moves to tp + alpha.
PLMap wobble_map(const GraphPtr& g, int e, const Rat& c0, const Rat& tp, const Rat& c1,
                 const Rat& alpha) {
  std::vector<std::vector<Segment>> segs(g->edge_count());
  for (int d = 0; d < g->edge_count(); ++d) {
    const Rat& len = g->edge(d).length;
    if (d != e) {
      segs[d].push_back(Segment{Rat(0), len, Walk{{WalkStep{d, Rat(0), len}}}});
      continue;
    }
    auto part = [&](const Rat& lo, const Rat& hi, const Rat& va, const Rat& vb) {
      if (!(lo < hi)) return;
      segs[d].push_back(Segment{lo, hi, Walk{{WalkStep{d, va, vb}}}});
    };
    part(Rat(0), c0, Rat(0), c0);
    part(c0, tp, c0, tp + alpha);
    part(tp, c1, tp + alpha, c1);
    part(c1, len, c1, len);
  }
  return PLMap(g, std::move(segs));
}

struct Perturbation {
  PLMap h;
  Rat distance;
};

Perturbation make_sample(const ShadowingCertificate& cert, int sample, std::uint64_t seed) {
  const GraphPtr& g = cert.g.graph();
  if (sample == 0) return {cert.g, Rat(0)};
  SplitMix rng(mix_seed(seed, static_cast<std::uint64_t>(sample)));
  Rat lg = cert.g.lipschitz_modulus();
  if (lg < 1) lg = 1;

  const int kind = (sample - 1) % 3;  // 0 domain, 1 image, 2 at an arc endpoint
  int e;
  Rat tp, width;
  if (kind == 2 && !cert.arcs.empty()) {
    const ArcSpec& a = cert.arcs[static_cast<std::size_t>(rng.below(cert.arcs.size()))];
    e = a.edge;
    tp = rng.below(2) == 0 ? a.lo : a.hi;
    width = a.gap;
  } else {
    e = static_cast<int>(rng.below(static_cast<std::uint64_t>(g->edge_count())));
    tp = dyadic_inside_at(Rat(0), g->edge(e).length, rng.next());
    width = g->edge(e).length / 8;
  }
  const Rat& len = g->edge(e).length;
  Rat c0 = tp - width;
  if (c0 < 0) c0 = Rat(0);
  Rat c1 = tp + width;
  if (c1 > len) c1 = len;

  const bool neg = rng.below(2) == 0;
  Rat amp = kind == 1 ? Rat(cert.gamma / 2) : Rat(cert.gamma / (lg * 2));
  Rat room = (neg ? tp : len - tp) / 2;
  if (amp > room) amp = room;
  if (!(amp > 0)) return {cert.g, Rat(0)};
  Rat alpha = neg ? Rat(-amp) : amp;
  for (int round = 0; round < 8; ++round) {
    PLMap w = wobble_map(g, e, c0, tp, c1, alpha);
    PLMap h = kind == 1 ? w.compose_after(cert.g) : cert.g.compose_after(w);
    Rat d = sup_distance(h, cert.g);
    if (d < cert.gamma) return {std::move(h), std::move(d)};
    alpha /= 2;
  }
  return {cert.g, Rat(0)};
}

VerificationReport run(const ShadowingCertificate& cert, int samples, int orbits, int length,
                       std::uint64_t seed, TrialStrategy strategy, bool parallel) {
  if (samples < 1 || orbits < 0 || length < 1)
    throw input_error("verification sizes must be positive");
  VerificationReport rep;
  rep.samples = samples;
  rep.orbits = orbits;
  rep.length = length;
  rep.strategy = trial_strategy_name(strategy);
  rep.n = cert.n;
  rep.gamma = cert.gamma;
  rep.delta = cert.delta;
  rep.seed = seed;
  rep.results.resize(samples);
  std::vector<std::string> errors(samples);
  const Rat radius(1, cert.n);

#pragma omp parallel for schedule(dynamic, 1) if (parallel)
  for (int s = 0; s < samples; ++s) {
    try {
      Perturbation p = make_sample(cert, s, seed);
      SampleResult& out = rep.results[s];
      out.distance = std::move(p.distance);
      out.transition_ok = compute_transition(p.h, cert.cover) == cert.phi;
      out.orbits.resize(orbits);
      for (int o = 0; o < orbits; ++o) {
        std::uint64_t oseed =
            mix_seed(mix_seed(seed, static_cast<std::uint64_t>(s)), static_cast<std::uint64_t>(o) + 1);
        OrbitStrategy strat = strategy == TrialStrategy::Random ? OrbitStrategy::Random
                              : strategy == TrialStrategy::Drift
                                  ? OrbitStrategy::Drift
                                  : (o % 2 == 0 ? OrbitStrategy::Random : OrbitStrategy::Drift);
        PseudoOrbit po = generate_pseudo_orbit(p.h, cert.delta, length, strat, oseed);
        out.orbits[o] = {check_shadowing(p.h, po, radius).shadowed, oseed};
      }
    } catch (const std::exception& ex) {
      errors[s] = ex.what();
    }
  }
  for (const std::string& err : errors)
    if (!err.empty()) throw construction_error("verification trial failed: " + err);

  for (const SampleResult& r : rep.results) {
    if (!r.transition_ok) ++rep.failures;
    for (const TrialResult& t : r.orbits)
      if (!t.shadowed) ++rep.failures;
  }
  rep.refuted = rep.failures > 0;
  return rep;
}

}  // namespace

const char* trial_strategy_name(TrialStrategy s) {
  switch (s) {
    case TrialStrategy::Random:
      return "random";
    case TrialStrategy::Drift:
      return "drift";
    default:
      return "mixed";
  }
}

TrialStrategy parse_trial_strategy(const std::string& name) {
  if (name == "mixed") return TrialStrategy::Mixed;
  if (name == "random") return TrialStrategy::Random;
  if (name == "drift") return TrialStrategy::Drift;
  throw input_error("unknown strategy '" + name + "'; choose mixed, random, or drift");
}

VerificationReport verify_ball(const ShadowingCertificate& cert, int samples, int orbits,
                               int length, std::uint64_t seed, TrialStrategy strategy) {
  return run(cert, samples, orbits, length, seed, strategy, true);
}

VerificationReport verify_ball_serial(const ShadowingCertificate& cert, int samples, int orbits,
                                      int length, std::uint64_t seed, TrialStrategy strategy) {
  return run(cert, samples, orbits, length, seed, strategy, false);
}

std::string VerificationReport::to_json() const {
  nlohmann::ordered_json j;
  j["samples"] = samples;
  j["orbits"] = orbits;
  j["length"] = length;
  j["strategy"] = strategy;
  j["n"] = n;
  j["gamma"] = rat_str(gamma);
  j["delta"] = rat_str(delta);
  j["seed"] = seed;
  j["failures"] = failures;
  j["refuted"] = refuted;
  nlohmann::ordered_json arr = nlohmann::ordered_json::array();
  for (std::size_t s = 0; s < results.size(); ++s) {
    const SampleResult& r = results[s];
    nlohmann::ordered_json js;
    js["sample"] = s;
    js["distance"] = rat_str(r.distance);
    js["transition_ok"] = r.transition_ok;
    nlohmann::ordered_json orbs = nlohmann::ordered_json::array();
    for (const TrialResult& t : r.orbits) {
      nlohmann::ordered_json jo;
      jo["shadowed"] = t.shadowed;
      jo["replay"] = t.replay;
      orbs.push_back(std::move(jo));
    }
    js["orbits"] = std::move(orbs);
    arr.push_back(std::move(js));
  }
  j["results"] = std::move(arr);
  return j.dump(2);
}

}  // namespace shadowcert
