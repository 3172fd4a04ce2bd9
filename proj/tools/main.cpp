// Command line front end: cover generation, transition relations, shadowing
// checks, certification, ball verification, and oracle comparison over
// system-description files.
//
// Exit codes: 0 success / property verified, 1 property refuted, 2 usage or
// construction error.
#include <CLI11.hpp>
#include <json.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "shadowcert/certificate.hpp"
#include "shadowcert/realize.hpp"
#include "shadowcert/system_io.hpp"
#include "shadowcert/systems.hpp"
#include "shadowcert/verify.hpp"

using namespace shadowcert;

namespace {

Rat rat_flag(const std::string& s, const char* what) {
  auto r = rat_parse(s);
  if (!r) throw input_error(std::string("flag ") + what + ": '" + s + "' is not a rational");
  return *r;
}

void write_text(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw input_error("cannot write '" + path + "'");
  out << text;
  if (!out) throw input_error("write to '" + path + "' failed");
}

// Shared source selection: either a named built-in system or a map from a
// description file.
struct SourceArgs {
  std::string system;
  std::string in;
  std::string map;

  void attach(CLI::App* cmd, bool map_needed = true) {
    cmd->add_option("--system", system, "built-in system name");
    CLI::Option* oin = cmd->add_option("--in", in, "system-description file");
    if (map_needed) cmd->add_option("--map", map, "map name inside --in")->needs(oin);
  }

  struct Loaded {
    std::string name;
    PLMap map;
    std::optional<SystemDescription> sd;
  };

  Loaded load() const {
    if (!system.empty()) {
      if (!in.empty()) throw input_error("--system and --in are mutually exclusive");
      auto sys = systems::by_name(system);
      return {system, std::move(sys.map), std::nullopt};
    }
    if (in.empty()) throw input_error("need --system or --in");
    SystemDescription sd = load_system(in);
    if (map.empty()) throw input_error("--in needs --map");
    PLMap m = sd.find_map(map);
    return {map, std::move(m), std::move(sd)};
  }
};

void print_relation(const TransitionRelation& phi) {
  for (int i = 0; i < phi.k; ++i) {
    std::string row = std::to_string(i + 1) + ":";
    for (int j : phi.succ[i]) row += " " + std::to_string(j + 1);
    std::puts(row.c_str());
  }
}

int cmd_gen_cover(const SourceArgs& src, const std::string& eps_s, const std::string& out) {
  SourceArgs::Loaded s = src.load();
  Rat eps = rat_flag(eps_s, "--eps");
  TautCover cover = build_taut_cover(s.map, eps);
  std::printf("cover: %d members, max diameter %s, Lebesgue number %s\n", cover.size(),
              rat_str(cover.max_member_diameter()).c_str(), rat_str(cover.lebesgue()).c_str());
  if (!out.empty()) {
    SystemDescription sd;
    if (s.sd) sd = std::move(*s.sd);
    sd.graph = s.map.graph();
    bool have_map = false;
    for (const auto& m : sd.maps) have_map |= m.first == s.name;
    if (!have_map) sd.maps.emplace_back(s.name, s.map);
    sd.covers.emplace_back("cover", std::move(cover));
    save_system(sd, out);
    std::printf("wrote %s\n", out.c_str());
  }
  return 0;
}

int cmd_transition(const SourceArgs& src, const std::string& cover_name,
                   const std::string& eps_s, const std::string& out) {
  SourceArgs::Loaded s = src.load();
  std::optional<TautCover> built;
  if (!eps_s.empty()) {
    built = build_taut_cover(s.map, rat_flag(eps_s, "--eps"));
  } else {
    if (!s.sd || cover_name.empty())
      throw input_error("need --cover with --in, or --eps to build a cover");
    built = s.sd->find_cover(cover_name);
  }
  TransitionRelation phi = compute_transition(s.map, *built);
  print_relation(phi);
  if (!out.empty()) {
    std::string text;
    for (int i = 0; i < phi.k; ++i) {
      text += std::to_string(i + 1) + ":";
      for (int j : phi.succ[i]) text += " " + std::to_string(j + 1);
      text += "\n";
    }
    write_text(out, text);
  }
  return 0;
}

int cmd_check_shadowing(const SourceArgs& src, const std::string& orbit_name,
                        const std::string& eps_s, const std::string& delta_s, int length,
                        const std::string& strategy, std::uint64_t seed, const std::string& plot,
                        const std::string& out) {
  SourceArgs::Loaded s = src.load();
  Rat eps = rat_flag(eps_s, "--eps");
  PseudoOrbit po;
  if (!orbit_name.empty()) {
    if (!s.sd) throw input_error("--orbit needs --in");
    po = s.sd->find_orbit(orbit_name);
  } else {
    if (delta_s.empty()) throw input_error("need --orbit, or --delta with --length to generate");
    OrbitStrategy strat = OrbitStrategy::Random;
    if (strategy == "drift")
      strat = OrbitStrategy::Drift;
    else if (!strategy.empty() && strategy != "random")
      throw input_error("generation strategy must be random or drift");
    po = generate_pseudo_orbit(s.map, rat_flag(delta_s, "--delta"), length, strat, seed);
    po.generator = s.name;
  }
  ShadowingResult res = check_shadowing(s.map, po, eps);

  const GraphPtr& g = s.map.graph();
  if (!plot.empty()) {
    // Tabular data: per-step pseudo-orbit defect and shadow-orbit distance.
    std::string text = "step\tdefect\tshadow_distance\n";
    GraphPoint y{};
    if (res.shadowed) y = *res.witness;
    for (std::size_t i = 0; i < po.points.size(); ++i) {
      Rat defect =
          i == 0 ? Rat(0) : g->distance(po.points[i], s.map.evaluate(po.points[i - 1]));
      text += std::to_string(i) + "\t" + rat_str(defect);
      if (res.shadowed) {
        text += "\t" + rat_str(g->distance(y, po.points[i]));
        if (i + 1 < po.points.size()) y = s.map.evaluate(y);
      } else {
        text += "\t";
      }
      text += "\n";
    }
    write_text(plot, text);
  }
  if (!out.empty()) {
    SystemDescription sd;
    if (s.sd) sd = std::move(*s.sd);
    sd.graph = s.map.graph();
    bool have_map = false;
    for (const auto& m : sd.maps) have_map |= m.first == s.name;
    if (!have_map) sd.maps.emplace_back(s.name, s.map);
    if (orbit_name.empty()) sd.orbits.emplace_back("orbit", po);
    save_system(sd, out);
  }
  if (res.shadowed) {
    const GraphPoint& w = *res.witness;
    if (w.is_vertex())
      std::printf("shadowed; witness vertex %d\n", w.vertex + 1);
    else
      std::printf("shadowed; witness point %d %s\n", w.edge + 1, rat_str(w.offset).c_str());
    return 0;
  }
  std::printf("not shadowed at eps %s (orbit length %zu, delta %s)\n", rat_str(eps).c_str(),
              po.points.size(), rat_str(po.delta).c_str());
  return 1;
}

int cmd_certify(const SourceArgs& src, const std::string& eps_s, int n, bool surjective,
                std::uint64_t seed, const std::string& out) {
  SourceArgs::Loaded s = src.load();
  CertifyOptions opt;
  opt.surjective = surjective;
  opt.seed = seed;
  ShadowingCertificate cert = certify_perturbation(s.map, rat_flag(eps_s, "--eps"), n, opt);
  validate_certificate(cert);
  std::printf("certificate: %d members, gamma %s, delta %s, distance to source %s\n",
              cert.cover.size(), rat_str(cert.gamma).c_str(), rat_str(cert.delta).c_str(),
              rat_str(sup_distance(cert.g, cert.source)).c_str());
  if (!out.empty()) {
    save_certificate(cert, out);
    std::printf("wrote %s\n", out.c_str());
  }
  return 0;
}

int cmd_verify_ball(const std::string& cert_path, int samples, int orbits, int length,
                    std::uint64_t seed, const std::string& strategy, bool serial,
                    const std::string& out) {
  ShadowingCertificate cert = load_certificate(cert_path);
  TrialStrategy strat = parse_trial_strategy(strategy);
  VerificationReport rep = serial ? verify_ball_serial(cert, samples, orbits, length, seed, strat)
                                  : verify_ball(cert, samples, orbits, length, seed, strat);
  if (!out.empty()) write_text(out, rep.to_json() + "\n");
  if (rep.refuted) {
    std::printf("REFUTED: %d failures across %d samples; see report\n", rep.failures,
                rep.samples);
    return 1;
  }
  std::printf("verified: %d samples, %d orbits each, length %d, zero failures\n", rep.samples,
              rep.orbits, rep.length);
  return 0;
}

int cmd_oracle_compare(const std::string& in, const std::string& cert_path,
                       const std::string& map_name, const std::string& cover_name,
                       const std::string& indices, long resolution, const std::string& out) {
  SystemDescription sd;
  std::optional<PLMap> map;
  std::optional<TautCover> cover;
  if (!cert_path.empty()) {
    sd = load_system(cert_path);
    if (sd.certificates.empty()) throw input_error("no certificate in '" + cert_path + "'");
    const CertificateEntry& e = sd.certificates.front().second;
    map = sd.find_map(e.g);
    cover = sd.find_cover(e.cover);
  } else {
    if (in.empty()) throw input_error("need --in or --cert");
    sd = load_system(in);
    if (map_name.empty() || cover_name.empty()) throw input_error("need --map and --cover");
    map = sd.find_map(map_name);
    cover = sd.find_cover(cover_name);
  }
  if (!indices.empty()) {
    std::vector<int> pat;
    std::size_t pos = 0;
    while (pos <= indices.size()) {
      std::size_t comma = indices.find(',', pos);
      if (comma == std::string::npos) comma = indices.size();
      int v = 0;
      try {
        v = std::stoi(indices.substr(pos, comma - pos));
      } catch (...) {
        throw input_error("--indices expects comma-separated 1-based member numbers");
      }
      if (v < 1 || v > cover->size())
        throw input_error("--indices: member " + std::to_string(v) + " is out of range");
      pat.push_back(v - 1);
      pos = comma + 1;
    }
    sd.patterns.emplace_back("indices", std::move(pat));
  }
  if (sd.patterns.empty()) throw input_error("no stored patterns to compare");

  nlohmann::ordered_json rows = nlohmann::ordered_json::array();
  int unexplained = 0, agree = 0, explained = 0;
  for (const auto& [name, pattern] : sd.patterns) {
    RealizationResult exact = realize_pattern(*map, *cover, pattern);
    OracleResult grid = grid_oracle(*map, *cover, pattern, resolution);
    const char* cls;
    if (exact.realized == grid.realized) {
      cls = "agree";
      ++agree;
    } else if (!exact.realized && grid.realized) {
      cls = "explained-fattening";
      ++explained;
    } else {
      cls = "unexplained";
      ++unexplained;
    }
    nlohmann::ordered_json row;
    row["pattern"] = name;
    row["exact_realized"] = exact.realized;
    row["oracle_realized"] = grid.realized;
    row["oracle_exact_membership"] = grid.exact_membership;
    row["class"] = cls;
    rows.push_back(std::move(row));
    std::printf("%s: exact=%d oracle=%d %s\n", name.c_str(), exact.realized ? 1 : 0,
                grid.realized ? 1 : 0, cls);
  }
  if (!out.empty()) {
    nlohmann::ordered_json j;
    j["resolution"] = resolution;
    j["patterns"] = static_cast<int>(sd.patterns.size());
    j["agree"] = agree;
    j["explained"] = explained;
    j["unexplained"] = unexplained;
    j["rows"] = std::move(rows);
    write_text(out, j.dump(2) + "\n");
  }
  std::printf("%d agree, %d explained by fattening, %d unexplained\n", agree, explained,
              unexplained);
  return unexplained == 0 ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact shadowing certificates for piecewise-linear maps on metric graphs"};
  app.require_subcommand(1);

  int result = 2;

  // gen-cover
  SourceArgs gc_src;
  std::string gc_eps, gc_out;
  CLI::App* gc = app.add_subcommand("gen-cover", "build a taut cover adapted to a map");
  gc_src.attach(gc);
  gc->add_option("--eps", gc_eps, "target scale (rational)")->required();
  gc->add_option("--out", gc_out, "write system description here");
  gc->callback([&] { result = cmd_gen_cover(gc_src, gc_eps, gc_out); });

  // transition
  SourceArgs tr_src;
  std::string tr_cover, tr_eps, tr_out;
  CLI::App* tr = app.add_subcommand("transition", "cover transition relation of a map");
  tr_src.attach(tr);
  tr->add_option("--cover", tr_cover, "cover name inside --in");
  tr->add_option("--eps", tr_eps, "build the cover at this scale instead");
  tr->add_option("--out", tr_out, "write the relation rows here");
  tr->callback([&] { result = cmd_transition(tr_src, tr_cover, tr_eps, tr_out); });

  // check-shadowing
  SourceArgs cs_src;
  std::string cs_orbit, cs_eps, cs_delta, cs_strategy = "random", cs_plot, cs_out;
  int cs_length = 50;
  std::uint64_t cs_seed = 0;
  CLI::App* cs = app.add_subcommand("check-shadowing", "is a pseudo-orbit eps-shadowed?");
  cs_src.attach(cs);
  cs->add_option("--orbit", cs_orbit, "pseudo-orbit name inside --in");
  cs->add_option("--eps", cs_eps, "shadowing radius (rational)")->required();
  cs->add_option("--delta", cs_delta, "generate a delta-pseudo-orbit instead");
  cs->add_option("--length", cs_length, "generated orbit length");
  cs->add_option("--strategy", cs_strategy, "generation strategy: random or drift");
  cs->add_option("--seed", cs_seed, "generation seed");
  cs->add_option("--plot", cs_plot, "write per-step distance table (TSV) here");
  cs->add_option("--out", cs_out, "write the system and generated orbit here");
  cs->callback([&] {
    result = cmd_check_shadowing(cs_src, cs_orbit, cs_eps, cs_delta, cs_length, cs_strategy,
                                 cs_seed, cs_plot, cs_out);
  });

  // certify
  SourceArgs cf_src;
  std::string cf_eps, cf_out;
  int cf_n = 2;
  bool cf_surjective = false;
  std::uint64_t cf_seed = 0;
  CLI::App* cf = app.add_subcommand("certify", "build a certified perturbation of a map");
  cf_src.attach(cf);
  cf->add_option("--eps", cf_eps, "perturbation budget (rational)")->required();
  cf->add_option("--n", cf_n, "certifies 1/n-shadowing")->required();
  cf->add_flag("--surjective", cf_surjective, "keep the perturbation surjective");
  cf->add_option("--seed", cf_seed, "recorded in the certificate");
  cf->add_option("--out", cf_out, "write the certificate here");
  cf->callback([&] { result = cmd_certify(cf_src, cf_eps, cf_n, cf_surjective, cf_seed, cf_out); });

  // verify-ball
  std::string vb_cert, vb_strategy = "mixed", vb_out;
  int vb_samples = 50, vb_orbits = 20, vb_length = 100;
  std::uint64_t vb_seed = 0;
  bool vb_serial = false;
  CLI::App* vb = app.add_subcommand("verify-ball", "stress a certificate with sampled maps");
  vb->add_option("--cert", vb_cert, "certificate file")->required();
  vb->add_option("--samples", vb_samples, "perturbations to sample");
  vb->add_option("--orbits", vb_orbits, "pseudo-orbits per sample");
  vb->add_option("--length", vb_length, "pseudo-orbit length");
  vb->add_option("--seed", vb_seed, "sampling seed (recorded in the report)");
  vb->add_option("--strategy", vb_strategy, "orbit mix: mixed, random, or drift");
  vb->add_flag("--serial", vb_serial, "single-threaded reference path");
  vb->add_option("--out", vb_out, "write the JSON report here");
  vb->callback([&] {
    result = cmd_verify_ball(vb_cert, vb_samples, vb_orbits, vb_length, vb_seed, vb_strategy,
                             vb_serial, vb_out);
  });

  // oracle-compare
  std::string oc_in, oc_cert, oc_map, oc_cover, oc_indices, oc_out;
  long oc_resolution = 4096;
  CLI::App* oc = app.add_subcommand("oracle-compare",
                                    "exact realization vs. grid oracle on stored patterns");
  oc->add_option("--in", oc_in, "system-description file with patterns");
  oc->add_option("--cert", oc_cert, "certificate file (uses its map and cover)");
  oc->add_option("--map", oc_map, "map name inside --in");
  oc->add_option("--cover", oc_cover, "cover name inside --in");
  oc->add_option("--indices", oc_indices, "one extra pattern, comma-separated 1-based");
  oc->add_option("--resolution", oc_resolution, "grid points per edge");
  oc->add_option("--out", oc_out, "write the JSON report here");
  oc->callback([&] {
    result = cmd_oracle_compare(oc_in, oc_cert, oc_map, oc_cover, oc_indices, oc_resolution,
                                oc_out);
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  }
  return result;
}
