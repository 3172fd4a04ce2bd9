// Acceptance harness.  `setup <fixture> --dir D` certifies one fixture and
// stores its artifacts; `criterion <N> --dir D` evaluates one of the eight
// acceptance properties against the stored artifacts and prints a single
// PASS/FAIL line.  All verdict arithmetic is exact.
#include <json.hpp>

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "shadowcert/system_io.hpp"
#include "shadowcert/systems.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace shadowcert;

namespace {

struct Fixture {
  std::string name;    // artifact stem
  std::string system;  // systems::by_name key
  int n = 0;
  bool surjective = false;
  bool main_pair = false;  // one of the 6 systems x n in {2,3}
  std::uint64_t seed = 0;
};

const std::vector<std::string>& main_systems() {
  static const std::vector<std::string> m{"tent",     "identity", "hump",
                                          "doubling", "rotation", "yfold"};
  return m;
}

const std::vector<Fixture>& fixtures() {
  static const std::vector<Fixture> fx = [] {
    std::vector<Fixture> v;
    std::uint64_t seed = 101;
    for (const std::string& s : main_systems())
      for (int n : {2, 3})
        v.push_back({s + "-" + std::to_string(n), s, n, false, true, seed++});
    v.push_back({"smallfold-2", "smallfold", 2, false, false, seed++});
    v.push_back({"smallrot-2", "smallrot", 2, false, false, seed++});
    v.push_back({"tent-2-surj", "tent", 2, true, false, seed++});
    v.push_back({"doubling-2-surj", "doubling", 2, true, false, seed++});
    return v;
  }();
  return fx;
}

const Fixture& fixture_by_name(const std::string& name) {
  for (const Fixture& f : fixtures())
    if (f.name == name) return f;
  throw input_error("unknown fixture '" + name + "'");
}

ShadowingCertificate load_cert(const fs::path& dir, const std::string& name) {
  return load_certificate((dir / (name + ".cert")).string());
}

json load_report(const fs::path& dir, const std::string& name) {
  std::ifstream in(dir / (name + ".report.json"));
  if (!in) throw input_error("missing report for fixture '" + name + "'");
  return json::parse(in);
}

// Criterion 4 instances: the lexicographically first transition walks of
// lengths 1..4 plus random index tuples, over the source map and a cover
// wide enough that the one-sided grid guarantee applies at 2^12.
void write_pattern_instances(const systems::NamedSystem& sys, int system_index,
                             const fs::path& dir) {
  TautCover cover = build_taut_cover(sys.map, Rat(2) / 5);
  TransitionRelation phi = compute_transition(sys.map, cover);

  std::vector<std::vector<int>> pats;
  std::set<std::vector<int>> seen;
  for (int len = 1; len <= 4 && pats.size() < 150; ++len) {
    PatternStream ps(phi, std::nullopt, len);
    std::vector<int> w;
    while (pats.size() < 150 && ps.next(w)) {
      pats.push_back(w);
      seen.insert(w);
    }
  }
  SplitMix rng(mix_seed(4096, static_cast<std::uint64_t>(system_index)));
  while (pats.size() < 210) {
    std::vector<int> p(1 + rng.below(4));
    for (int& v : p) v = static_cast<int>(rng.below(static_cast<std::uint64_t>(phi.k)));
    if (seen.insert(p).second) pats.push_back(p);
  }

  SystemDescription sd;
  sd.graph = sys.graph;
  sd.maps.emplace_back("f", sys.map);
  sd.covers.emplace_back("cover", cover);
  for (std::size_t i = 0; i < pats.size(); ++i)
    sd.patterns.emplace_back("pat" + std::to_string(i + 1), pats[i]);
  save_system(sd, (dir / (sys.name + ".patterns.desc")).string());
}

int run_setup(const std::string& name, const fs::path& dir) {
  const Fixture& fx = fixture_by_name(name);
  fs::create_directories(dir);
  systems::NamedSystem sys = systems::by_name(fx.system);

  Rat eps = Rat(1) / (2 * fx.n);
  CertifyOptions opt;
  opt.surjective = fx.surjective;
  opt.seed = fx.seed;
  ShadowingCertificate cert = certify_perturbation(sys.map, eps, fx.n, opt);
  validate_certificate(cert);
  save_certificate(cert, (dir / (name + ".cert")).string());

  VerificationReport rep = verify_ball(cert, 50, 20, 100, fx.seed);
  std::ofstream out(dir / (name + ".report.json"));
  out << rep.to_json();

  if (fx.main_pair && fx.n == 2) {
    int idx = 0;
    while (main_systems()[idx] != fx.system) ++idx;
    write_pattern_instances(sys, idx, dir);
  }

  std::cout << "setup " << name << ": k=" << cert.phi.k << " gamma=" << rat_str(cert.gamma)
            << " delta=" << rat_str(cert.delta) << " failures=" << rep.failures << "\n";
  return 0;
}

struct Verdict {
  bool pass = true;
  std::string detail;
  void fail(const std::string& why) {
    pass = false;
    if (!detail.empty()) detail += "; ";
    detail += why;
  }
};

// Exact closure-chain replay of a realization witness.
bool witness_replays(const PLMap& h, const TautCover& c, const std::vector<int>& pattern,
                     GraphPoint z) {
  for (std::size_t i = 0; i < pattern.size(); ++i) {
    if (!c.closure_of(pattern[i]).contains(z)) return false;
    if (i + 1 < pattern.size()) z = h.evaluate(z);
  }
  return true;
}

bool report_clean(const json& rep, Verdict& v, const std::string& name) {
  bool ok = true;
  if (rep.at("samples") != 50 || rep.at("orbits") != 20 || rep.at("length") != 100) {
    v.fail(name + ": report ran at the wrong scale");
    ok = false;
  }
  if (rep.at("failures") != 0 || rep.at("refuted") != false) {
    v.fail(name + ": " + rep.at("failures").dump() + " ball failures");
    ok = false;
  }
  return ok;
}

// Transition rows of the stored source are contained in the certified rows,
// and every sampled map in the report kept the relation.
bool containment_and_rigidity(const ShadowingCertificate& cert, const json& rep, Verdict& v,
                              const std::string& name, long& samples, long& endpoint) {
  bool ok = true;
  TransitionRelation base = compute_transition(cert.source, cert.cover);
  if (base.k != cert.phi.k) {
    v.fail(name + ": cover size drifted");
    return false;
  }
  for (int i = 0; i < base.k && ok; ++i)
    for (int j : base.succ[i])
      if (!cert.phi.has(i, j)) {
        v.fail(name + ": source transition " + std::to_string(i + 1) + "->" +
               std::to_string(j + 1) + " lost");
        ok = false;
        break;
      }
  for (const json& s : rep.at("results")) {
    ++samples;
    long idx = s.at("sample").get<long>();
    if (idx >= 1 && (idx - 1) % 3 == 2) ++endpoint;
    if (s.at("transition_ok") != true) {
      v.fail(name + ": sample " + std::to_string(idx) + " changed the relation");
      ok = false;
    }
  }
  return ok;
}

Verdict criterion1(const fs::path& dir) {
  Verdict v;
  int certs = 0;
  long trials = 0;
  for (const Fixture& fx : fixtures()) {
    if (!fx.main_pair) continue;
    ShadowingCertificate cert = load_cert(dir, fx.name);
    validate_certificate(cert);
    if (cert.eps != Rat(1) / (2 * fx.n) || cert.n != fx.n) {
      v.fail(fx.name + ": wrong scale stored");
      continue;
    }
    json rep = load_report(dir, fx.name);
    if (report_clean(rep, v, fx.name)) trials += 50L * 20L;
    ++certs;
  }
  if (certs != 12) v.fail("expected 12 main certificates, saw " + std::to_string(certs));
  if (v.pass)
    v.detail = "12 certificates validated, " + std::to_string(trials) +
               " pseudo-orbit trials with zero failures";
  return v;
}

Verdict criterion2(const fs::path& dir) {
  Verdict v;
  long samples = 0, endpoint = 0;
  for (const Fixture& fx : fixtures()) {
    ShadowingCertificate cert = load_cert(dir, fx.name);
    json rep = load_report(dir, fx.name);
    containment_and_rigidity(cert, rep, v, fx.name, samples, endpoint);
  }
  if (v.pass)
    v.detail = "containment exact on 16 certificates; relation preserved by " +
               std::to_string(samples) + " sampled maps (" + std::to_string(endpoint) +
               " arc-endpoint samples)";
  return v;
}

Verdict criterion3(const fs::path& dir) {
  Verdict v;
  int used = 0;
  long walks = 0;
  for (const Fixture& fx : fixtures()) {
    ShadowingCertificate cert = load_cert(dir, fx.name);
    if (cert.phi.k > 5) continue;
    ++used;
    PatternStream ps(cert.phi, std::nullopt, 6);
    std::vector<int> w;
    while (ps.next(w)) {
      ++walks;
      RealizationResult r = realize_pattern(cert.g, cert.cover, w);
      if (!r.realized || !r.witness) {
        std::ostringstream os;
        os << fx.name << ": walk";
        for (int j : w) os << " " << j + 1;
        os << " not realized";
        v.fail(os.str());
        break;
      }
      if (!witness_replays(cert.g, cert.cover, w, *r.witness)) {
        v.fail(fx.name + ": witness failed exact replay");
        break;
      }
    }
  }
  if (used == 0) v.fail("vacuous: no certificate with k <= 5");
  if (v.pass)
    v.detail = "all " + std::to_string(walks) + " length-6 walks realized across " +
               std::to_string(used) + " certificates, witnesses replay exactly";
  return v;
}

Verdict criterion4(const fs::path& dir) {
  Verdict v;
  const long resolution = 4096;
  long agree = 0, explained = 0, unexplained = 0, total = 0;
  for (const std::string& sname : main_systems()) {
    SystemDescription sd = load_system((dir / (sname + ".patterns.desc")).string());
    const PLMap& f = sd.find_map("f");
    const TautCover& cover = sd.find_cover("cover");
    const GraphPtr& g = cover.graph();
    Rat cell(0);
    for (int e = 0; e < g->edge_count(); ++e)
      cell = rat_max(cell, Rat(g->edge(e).length / resolution));
    if (sd.patterns.size() < 200) {
      v.fail(sname + ": only " + std::to_string(sd.patterns.size()) + " stored instances");
      continue;
    }
    for (const auto& [pname, pattern] : sd.patterns) {
      ++total;
      RealizationResult exact = realize_pattern(f, cover, pattern);
      OracleResult grid = grid_oracle(f, cover, pattern, resolution);
      if (exact.realized == grid.realized) {
        ++agree;
        continue;
      }
      if (!exact.realized && grid.realized && grid.witness) {
        // A grid hit without an exact realization must sit inside the
        // one-cell fattening of every closure along the pattern.
        GraphPoint z = *grid.witness;
        bool inside = true;
        for (std::size_t i = 0; i < pattern.size() && inside; ++i) {
          inside = closed_neighborhood(cover.closure_of(pattern[i]), cell).contains(z);
          if (i + 1 < pattern.size()) z = f.evaluate(z);
        }
        if (inside) {
          ++explained;
          continue;
        }
      }
      ++unexplained;
      v.fail(sname + "/" + pname + ": exact=" + (exact.realized ? "yes" : "no") +
             " grid=" + (grid.realized ? "yes" : "no"));
    }
  }
  if (v.pass)
    v.detail = std::to_string(total) + " instances over 6 systems: " + std::to_string(agree) +
               " agree, " + std::to_string(explained) +
               " grid-only hits inside the fattening, 0 unexplained";
  return v;
}

Verdict criterion5(const fs::path& dir) {
  Verdict v;
  GraphPtr g = systems::unit_interval();
  PLMap id = systems::identity_map(g);
  PseudoOrbit po = generate_pseudo_orbit(id, Rat(1) / 10, 11, OrbitStrategy::Drift, 1);
  if (!pseudo_orbit_valid(id, po)) v.fail("drift orbit failed validity");
  ShadowingResult sr = check_shadowing(id, po, Rat(3) / 10);
  if (sr.shadowed) v.fail("drift orbit reported shadowed at 3/10");
  ShadowingCertificate cert = load_cert(dir, "identity-2");
  Rat moved = sup_distance(cert.g, cert.source);
  if (!(moved > 0)) v.fail("certified identity map did not move");
  if (v.pass)
    v.detail = "drift orbit refuted exactly at eps=3/10; certified g sits at distance " +
               rat_str(moved) + " from the identity";
  return v;
}

Verdict criterion6(const fs::path& dir) {
  Verdict v;
  long samples = 0, endpoint = 0, walks = 0;
  for (const std::string& name : {std::string("tent-2-surj"), std::string("doubling-2-surj")}) {
    ShadowingCertificate cert = load_cert(dir, name);
    validate_certificate(cert);
    if (!cert.surjective) v.fail(name + ": not flagged surjective");
    if (!cert.g.is_surjective()) v.fail(name + ": certified map is not onto");
    json rep = load_report(dir, name);
    report_clean(rep, v, name);
    containment_and_rigidity(cert, rep, v, name, samples, endpoint);
    if (cert.phi.k <= 5) {
      PatternStream ps(cert.phi, std::nullopt, 6);
      std::vector<int> w;
      while (ps.next(w)) {
        ++walks;
        RealizationResult r = realize_pattern(cert.g, cert.cover, w);
        if (!r.realized || !witness_replays(cert.g, cert.cover, w, *r.witness)) {
          v.fail(name + ": walk realization failed");
          break;
        }
      }
    }
  }
  if (v.pass)
    v.detail = "both surjective maps are exactly onto; ball reports clean over " +
               std::to_string(samples) + " samples" +
               (walks ? " and " + std::to_string(walks) + " walks realized" : "");
  return v;
}

Verdict criterion7(const fs::path& dir) {
  Verdict v;
  int rows = 0;
  for (const Fixture& fx : fixtures()) {
    ShadowingCertificate cert = load_cert(dir, fx.name);
    if (!(sup_distance(cert.g, cert.source) < cert.eps))
      v.fail(fx.name + ": distance budget exceeded");
    for (int i = 0; i < cert.phi.k; ++i) {
      Region u = Region::empty(cert.cover.graph());
      for (int j : cert.phi.succ[i]) u = u.united(cert.cover.member(j));
      ++rows;
      if (!(region_diameter(u) < cert.eps)) {
        v.fail(fx.name + ": successor union of row " + std::to_string(i + 1) + " too wide");
        break;
      }
    }
  }
  if (v.pass)
    v.detail = "sup distances below eps on 16 certificates; " + std::to_string(rows) +
               " successor unions below eps";
  return v;
}

Verdict criterion8(const fs::path&) {
  Verdict v;
  long metric = 0, lebesgue = 0, taut = 0, consistency = 0;

  std::vector<GraphPtr> graphs;
  for (const std::string& s : main_systems()) graphs.push_back(systems::by_name(s).graph);
  graphs.push_back(systems::small_interval());
  graphs.push_back(systems::small_circle());
  graphs.push_back(systems::whisker_graph());

  SplitMix rng(8101);
  for (long t = 0; t < 1200; ++t) {
    const GraphPtr& g = graphs[t % graphs.size()];
    Region full = Region::full(g);
    GraphPoint x = region_sample(full, rng);
    GraphPoint y = region_sample(full, rng);
    GraphPoint z = region_sample(full, rng);
    Rat xy = g->distance(x, y), yx = g->distance(y, x);
    Rat yz = g->distance(y, z), xz = g->distance(x, z);
    ++metric;
    if (xy != yx) v.fail("asymmetric distance");
    if (xy < 0 || g->distance(x, x) != 0) v.fail("distance not a point separator");
    if ((xy == 0) != (x == y)) v.fail("zero distance on distinct points");
    if (xz > xy + yz) v.fail("triangle inequality violated");
    if (!v.pass) break;
  }

  std::vector<systems::NamedSystem> sys;
  for (const std::string& s : main_systems()) sys.push_back(systems::by_name(s));
  std::vector<TautCover> covers;
  for (const auto& s : sys) covers.push_back(build_taut_cover(s.map, Rat(2) / 5));

  for (std::size_t c = 0; c < covers.size() && v.pass; ++c) {
    const TautCover& cover = covers[c];
    const GraphPtr& g = cover.graph();
    Rat radius = Rat(cover.lebesgue() / 4);
    for (int t = 0; t < 200; ++t) {
      GraphPoint x = region_sample(Region::full(g), rng);
      Region b = closed_ball(g, x, radius);
      bool inside = false;
      for (int i = 0; i < cover.size() && !inside; ++i)
        inside = cover.member(i).contains_region(b);
      ++lebesgue;
      if (!inside) {
        v.fail(sys[c].name + ": small ball escapes every member");
        break;
      }
    }
  }

  for (std::size_t c = 0; c < covers.size() && v.pass; ++c) {
    const TautCover& cover = covers[c];
    for (int i = 0; i < cover.size() && v.pass; ++i) {
      Region priv = cover.member(i);
      for (int j = 0; j < cover.size(); ++j) {
        if (j == i) continue;
        ++taut;
        bool meet = cover.closure_of(i).intersects(cover.closure_of(j));
        if (meet != cover.closures_meet(i, j)) v.fail("cached closure relation wrong");
        if (meet && !cover.member(i).intersects(cover.member(j)))
          v.fail("closures meet but members do not");
        priv = priv.subtracted(cover.closure_of(j));
      }
      ++taut;
      if (priv.empty()) v.fail("member without a private part");
    }
  }

  for (long t = 0; t < 1200 && v.pass; ++t) {
    const systems::NamedSystem& s = sys[t % sys.size()];
    const GraphPtr& g = s.graph;
    GraphPoint x = region_sample(Region::full(g), rng);
    int e = static_cast<int>(rng.below(static_cast<std::uint64_t>(g->edge_count())));
    const Rat& len = g->edge(e).length;
    Rat lo = dyadic_inside_at(0, len, rng.next());
    Rat hi = dyadic_inside_at(0, len, rng.next());
    if (lo == hi) continue;
    if (lo > hi) std::swap(lo, hi);
    Region r = Region::edge_interval(g, e, lo, hi, rng.below(2) == 0, rng.below(2) == 0);
    ++consistency;
    bool via_preimage = s.map.preimage_region(r).contains(x);
    bool via_value = r.contains(s.map.evaluate(x));
    if (via_preimage != via_value) v.fail(s.name + ": preimage disagrees with evaluate");
    if (!s.map.image_region(Region::point(g, x)).contains(s.map.evaluate(x)))
      v.fail(s.name + ": image of a point misses its value");
  }

  if (metric < 1000 || lebesgue < 1000 || taut < 1000 || consistency < 1000)
    v.fail("a randomized suite ran under 1000 trials (" + std::to_string(metric) + "/" +
           std::to_string(lebesgue) + "/" + std::to_string(taut) + "/" +
           std::to_string(consistency) + ")");
  if (v.pass)
    v.detail = "metric " + std::to_string(metric) + ", lebesgue " + std::to_string(lebesgue) +
               ", tautness " + std::to_string(taut) + ", preimage " +
               std::to_string(consistency) + " trials, zero violations";
  return v;
}

Verdict run_criterion(int n, const fs::path& dir) {
  switch (n) {
    case 1: return criterion1(dir);
    case 2: return criterion2(dir);
    case 3: return criterion3(dir);
    case 4: return criterion4(dir);
    case 5: return criterion5(dir);
    case 6: return criterion6(dir);
    case 7: return criterion7(dir);
    case 8: return criterion8(dir);
    default: throw input_error("criterion number must be 1 through 8");
  }
}

int usage() {
  std::cerr << "usage: acceptance setup <fixture> --dir DIR\n"
            << "       acceptance criterion <1..8> --dir DIR\n"
            << "       acceptance all --dir DIR\n";
  return 2;
}

}  // namespace

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  try {
    std::string mode, target, dir;
    for (std::size_t i = 0; i < args.size(); ++i) {
      if (args[i] == "--dir" && i + 1 < args.size())
        dir = args[++i];
      else if (mode.empty())
        mode = args[i];
      else if (target.empty())
        target = args[i];
      else
        return usage();
    }
    if (dir.empty() || mode.empty()) return usage();

    if (mode == "setup") {
      if (target.empty()) return usage();
      return run_setup(target, dir);
    }
    if (mode == "criterion") {
      if (target.empty()) return usage();
      Verdict v = run_criterion(std::stoi(target), dir);
      std::cout << "criterion " << target << ": " << (v.pass ? "PASS" : "FAIL") << " ("
                << v.detail << ")\n";
      return v.pass ? 0 : 1;
    }
    if (mode == "all") {
      for (const Fixture& fx : fixtures()) run_setup(fx.name, dir);
      bool ok = true;
      for (int n = 1; n <= 8; ++n) {
        Verdict v = run_criterion(n, dir);
        std::cout << "criterion " << n << ": " << (v.pass ? "PASS" : "FAIL") << " (" << v.detail
                  << ")\n";
        ok = ok && v.pass;
      }
      return ok ? 0 : 1;
    }
    return usage();
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
