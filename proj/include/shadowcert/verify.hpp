// Empirical certificate verification: random maps inside the gamma-ball are
// checked for transition rigidity and pseudo-orbit shadowing.
#pragma once

#include "shadowcert/certificate.hpp"

namespace shadowcert {

struct TrialResult {
  bool shadowed = false;
  std::uint64_t replay = 0;  // seed regenerating the pseudo-orbit
};

struct SampleResult {
  bool transition_ok = false;
  Rat distance;  // exact sup distance of the perturbation from g
  std::vector<TrialResult> orbits;
};

// Pseudo-orbit policy across the trials of one sample: Mixed alternates
// random and drift orbits.
enum class TrialStrategy { Mixed, Random, Drift };

const char* trial_strategy_name(TrialStrategy s);
TrialStrategy parse_trial_strategy(const std::string& name);

struct VerificationReport {
  int samples = 0, orbits = 0, length = 0;
  std::string strategy;
  int n = 0;
  Rat gamma, delta;
  std::uint64_t seed = 0;
  int failures = 0;
  bool refuted = false;
  std::vector<SampleResult> results;

  // Deterministic (insertion-ordered, exact rationals as strings).
  std::string to_json() const;
};

// Sample 0 is g itself; later samples mix domain wobbles, image wobbles, and
// wobbles at arc endpoints, all with exact sup_distance below gamma.  Each
// sample h is checked for compute_transition(h) == cert.phi, then `orbits`
// pseudo-orbits of the given length run through check_shadowing at radius
// 1/n.  Any failure refutes.
VerificationReport verify_ball(const ShadowingCertificate& cert, int samples, int orbits,
                               int length, std::uint64_t seed,
                               TrialStrategy strategy = TrialStrategy::Mixed);
// Single-threaded reference with identical results.
VerificationReport verify_ball_serial(const ShadowingCertificate& cert, int samples, int orbits,
                                      int length, std::uint64_t seed,
                                      TrialStrategy strategy = TrialStrategy::Mixed);

}  // namespace shadowcert
