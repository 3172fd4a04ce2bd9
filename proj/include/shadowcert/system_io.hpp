// Line-oriented, versioned, human-diffable text format for graphs, maps,
// covers, pseudo-orbits, patterns, and certificates.  All rationals are
// stored exactly; indices are 1-based in files; round-trips are identities.
#pragma once

#include <iosfwd>

#include "shadowcert/verify.hpp"

namespace shadowcert {

struct parse_error : input_error {
  parse_error(const std::string& origin, int line, int col, const std::string& msg)
      : input_error(origin + ":" + std::to_string(line) + ":" + std::to_string(col) + ": " +
                    msg) {}
};

// A certificate inside a description references its cover and maps by name.
struct CertificateEntry {
  std::string cover, g, source;
  Rat eps;
  int n = 0;
  Rat gamma, delta, tau, xi, eta, lambda;
  bool surjective = false;
  std::uint64_t seed = 0;
  TransitionRelation phi;
  std::vector<ArcSpec> arcs;
  std::vector<std::string> log;
};

struct SystemDescription {
  GraphPtr graph;
  std::vector<std::pair<std::string, PLMap>> maps;
  std::vector<std::pair<std::string, TautCover>> covers;
  std::vector<std::pair<std::string, PseudoOrbit>> orbits;
  std::vector<std::pair<std::string, std::vector<int>>> patterns;  // 0-based in memory
  std::vector<std::pair<std::string, CertificateEntry>> certificates;

  const PLMap& find_map(const std::string& name) const;
  const TautCover& find_cover(const std::string& name) const;
  const PseudoOrbit& find_orbit(const std::string& name) const;
  const std::vector<int>& find_pattern(const std::string& name) const;
  const CertificateEntry& find_certificate(const std::string& name) const;
};

SystemDescription parse_system(const std::string& text, const std::string& origin);
SystemDescription load_system(const std::string& path);
std::string format_system(const SystemDescription& sd);
void save_system(const SystemDescription& sd, const std::string& path);

// Resolves the entry's references into a self-contained certificate.
ShadowingCertificate materialize(const SystemDescription& sd, const CertificateEntry& e);
// Inserts the certificate plus its cover and maps under derived names
// (<name>.cover, <name>.g, <name>.source).
void add_certificate(SystemDescription& sd, const std::string& name,
                     const ShadowingCertificate& cert);

void save_certificate(const ShadowingCertificate& cert, const std::string& path);
ShadowingCertificate load_certificate(const std::string& path);

}  // namespace shadowcert
