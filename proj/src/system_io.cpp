#include "shadowcert/system_io.hpp"

#include <cstdlib>
#include <fstream>
#include <sstream>

namespace shadowcert {

namespace {

struct Tok {
  int col;
  std::string s;
};

std::vector<Tok> tokenize(const std::string& line) {
  std::vector<Tok> out;
  std::size_t i = 0;
  while (i < line.size()) {
    if (line[i] == ' ' || line[i] == '\t' || line[i] == '\r') {
      ++i;
      continue;
    }
    std::size_t j = i;
    while (j < line.size() && line[j] != ' ' && line[j] != '\t' && line[j] != '\r') ++j;
    out.push_back({static_cast<int>(i) + 1, line.substr(i, j - i)});
    i = j;
  }
  return out;
}

struct Parser {
  std::string origin;
  std::vector<std::string> raw;
  SystemDescription sd;

  [[noreturn]] void fail(int line, int col, const std::string& msg) const {
    throw parse_error(origin, line, col, msg);
  }

  Rat need_rat(const Tok& t, int line) const {
    auto r = rat_parse(t.s);
    if (!r) fail(line, t.col, "expected a rational, got '" + t.s + "'");
    return *r;
  }
  long need_long(const Tok& t, int line) const {
    const char* s = t.s.c_str();
    char* endp = nullptr;
    long v = std::strtol(s, &endp, 10);
    if (endp == s || *endp != '\0') fail(line, t.col, "expected an integer, got '" + t.s + "'");
    return v;
  }
  std::uint64_t need_u64(const Tok& t, int line) const {
    const char* s = t.s.c_str();
    char* endp = nullptr;
    unsigned long long v = std::strtoull(s, &endp, 10);
    if (endp == s || *endp != '\0' || t.s[0] == '-')
      fail(line, t.col, "expected an unsigned integer, got '" + t.s + "'");
    return v;
  }
  void need_count(const std::vector<Tok>& toks, std::size_t n, int line) const {
    if (toks.size() != n)
      fail(line, toks[0].col, "'" + toks[0].s + "' takes " + std::to_string(n - 1) + " values");
  }
  int need_edge(const Tok& t, int line) const {
    long e = need_long(t, line);
    if (e < 1 || e > sd.graph->edge_count())
      fail(line, t.col, "edge " + t.s + " is out of range");
    return static_cast<int>(e - 1);
  }
  int need_vertex(const Tok& t, int line) const {
    long v = need_long(t, line);
    if (v < 1 || v > sd.graph->vertex_count())
      fail(line, t.col, "vertex " + t.s + " is out of range");
    return static_cast<int>(v - 1);
  }
  Rat need_offset(const Tok& t, int e, int line) const {
    Rat r = need_rat(t, line);
    if (r < 0 || r > sd.graph->edge(e).length)
      fail(line, t.col,
           "offset " + t.s + " lies outside edge " + std::to_string(e + 1) + " of length " +
               rat_str(sd.graph->edge(e).length));
    return r;
  }
  bool need_flag(const Tok& t, int line) const {
    if (t.s == "closed") return true;
    if (t.s == "open") return false;
    fail(line, t.col, "expected 'open' or 'closed', got '" + t.s + "'");
  }

  // Advances li past the section; li enters at the section header line.
  int section_end(std::size_t li) const {
    for (std::size_t j = li + 1; j < raw.size(); ++j) {
      std::vector<Tok> t = tokenize(raw[j]);
      if (!t.empty() && t[0].s[0] != '#' && t[0].s == "end") return static_cast<int>(j);
    }
    fail(static_cast<int>(li) + 1, 1, "section has no matching 'end'");
  }

  void parse(const std::string& text);
  std::size_t parse_graph(std::size_t li);
  std::size_t parse_cover(std::size_t li, const std::string& name);
  std::size_t parse_map(std::size_t li, const std::string& name);
  std::size_t parse_orbit(std::size_t li, const std::string& name);
  std::size_t parse_pattern(std::size_t li, const std::string& name);
  std::size_t parse_certificate(std::size_t li, const std::string& name);
};

void Parser::parse(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) raw.push_back(line);

  bool versioned = false;
  std::size_t li = 0;
  while (li < raw.size()) {
    std::vector<Tok> toks = tokenize(raw[li]);
    const int line = static_cast<int>(li) + 1;
    if (toks.empty() || toks[0].s[0] == '#') {
      ++li;
      continue;
    }
    if (!versioned) {
      if (toks[0].s != "%sysdesc" || toks.size() != 2 || toks[1].s != "1")
        fail(line, toks[0].col, "expected version line '%sysdesc 1'");
      versioned = true;
      ++li;
      continue;
    }
    const std::string& kw = toks[0].s;
    if (kw == "graph") {
      if (sd.graph) fail(line, toks[0].col, "duplicate graph section");
      need_count(toks, 1, line);
      li = parse_graph(li);
      continue;
    }
    if (kw == "cover" || kw == "map" || kw == "orbit" || kw == "pattern" ||
        kw == "certificate") {
      if (!sd.graph) fail(line, toks[0].col, "the graph section must come first");
      need_count(toks, 2, line);
      const std::string& name = toks[1].s;
      if (kw == "cover")
        li = parse_cover(li, name);
      else if (kw == "map")
        li = parse_map(li, name);
      else if (kw == "orbit")
        li = parse_orbit(li, name);
      else if (kw == "pattern")
        li = parse_pattern(li, name);
      else
        li = parse_certificate(li, name);
      continue;
    }
    fail(line, toks[0].col, "unrecognized section '" + kw + "'");
  }
  if (!versioned) fail(1, 1, "empty description");
  if (!sd.graph) fail(static_cast<int>(raw.size()), 1, "missing graph section");
}

std::size_t Parser::parse_graph(std::size_t li) {
  const int endl_ = section_end(li);
  int vertices = -1;
  std::vector<Edge> edges;
  for (std::size_t j = li + 1; j < static_cast<std::size_t>(endl_); ++j) {
    std::vector<Tok> toks = tokenize(raw[j]);
    const int line = static_cast<int>(j) + 1;
    if (toks.empty() || toks[0].s[0] == '#') continue;
    if (toks[0].s == "vertices") {
      need_count(toks, 2, line);
      vertices = static_cast<int>(need_long(toks[1], line));
    } else if (toks[0].s == "edge") {
      need_count(toks, 4, line);
      if (vertices < 0) fail(line, toks[0].col, "'vertices' must precede edges");
      long a = need_long(toks[1], line), b = need_long(toks[2], line);
      if (a < 1 || a > vertices) fail(line, toks[1].col, "vertex out of range");
      if (b < 1 || b > vertices) fail(line, toks[2].col, "vertex out of range");
      edges.push_back(
          {static_cast<int>(a - 1), static_cast<int>(b - 1), need_rat(toks[3], line), ""});
    } else {
      fail(line, toks[0].col, "unrecognized field '" + toks[0].s + "' in graph section");
    }
  }
  if (vertices < 0) fail(static_cast<int>(li) + 1, 1, "graph section lacks a vertex count");
  try {
    sd.graph = std::make_shared<const MetricGraph>(vertices, std::move(edges));
  } catch (const input_error& e) {
    fail(static_cast<int>(li) + 1, 1, std::string("invalid graph: ") + e.what());
  }
  return static_cast<std::size_t>(endl_) + 1;
}

std::size_t Parser::parse_cover(std::size_t li, const std::string& name) {
  const int endl_ = section_end(li);
  std::vector<Region> members;
  std::optional<Region> cur;
  auto flush = [&] {
    if (cur) {
      cur->normalize();
      members.push_back(std::move(*cur));
      cur.reset();
    }
  };
  for (std::size_t j = li + 1; j < static_cast<std::size_t>(endl_); ++j) {
    std::vector<Tok> toks = tokenize(raw[j]);
    const int line = static_cast<int>(j) + 1;
    if (toks.empty() || toks[0].s[0] == '#') continue;
    if (toks[0].s == "member") {
      need_count(toks, 1, line);
      flush();
      cur = Region::empty(sd.graph);
    } else if (toks[0].s == "vertex") {
      need_count(toks, 2, line);
      if (!cur) fail(line, toks[0].col, "'vertex' outside a member");
      cur->add_vertex(need_vertex(toks[1], line));
    } else if (toks[0].s == "interval") {
      need_count(toks, 6, line);
      if (!cur) fail(line, toks[0].col, "'interval' outside a member");
      int e = need_edge(toks[1], line);
      Rat lo = need_offset(toks[2], e, line), hi = need_offset(toks[3], e, line);
      bool lc = need_flag(toks[4], line), hc = need_flag(toks[5], line);
      if (lo > hi || (lo == hi && !(lc && hc)))
        fail(line, toks[2].col, "degenerate interval");
      cur->add_interval(e, lo, hi, lc, hc);
    } else {
      fail(line, toks[0].col, "unrecognized field '" + toks[0].s + "' in cover section");
    }
  }
  flush();
  try {
    sd.covers.emplace_back(name, TautCover(sd.graph, std::move(members)));
  } catch (const construction_error& e) {
    fail(static_cast<int>(li) + 1, 1, "invalid cover '" + name + "': " + e.what());
  }
  return static_cast<std::size_t>(endl_) + 1;
}

std::size_t Parser::parse_map(std::size_t li, const std::string& name) {
  const int endl_ = section_end(li);
  std::vector<std::vector<Segment>> segs(sd.graph->edge_count());
  int cur = -1;
  for (std::size_t j = li + 1; j < static_cast<std::size_t>(endl_); ++j) {
    std::vector<Tok> toks = tokenize(raw[j]);
    const int line = static_cast<int>(j) + 1;
    if (toks.empty() || toks[0].s[0] == '#') continue;
    if (toks[0].s == "edge") {
      need_count(toks, 2, line);
      cur = need_edge(toks[1], line);
    } else if (toks[0].s == "segment") {
      need_count(toks, 3, line);
      if (cur < 0) fail(line, toks[0].col, "'segment' outside an edge");
      Rat lo = need_offset(toks[1], cur, line), hi = need_offset(toks[2], cur, line);
      if (!(lo < hi)) fail(line, toks[1].col, "segment domain is not increasing");
      segs[cur].push_back({std::move(lo), std::move(hi), Walk{}});
    } else if (toks[0].s == "step") {
      need_count(toks, 4, line);
      if (cur < 0 || segs[cur].empty()) fail(line, toks[0].col, "'step' outside a segment");
      int e = need_edge(toks[1], line);
      Rat a = need_offset(toks[2], e, line), b = need_offset(toks[3], e, line);
      segs[cur].back().walk.steps.push_back({e, std::move(a), std::move(b)});
    } else {
      fail(line, toks[0].col, "unrecognized field '" + toks[0].s + "' in map section");
    }
  }
  try {
    sd.maps.emplace_back(name, PLMap(sd.graph, std::move(segs)));
  } catch (const construction_error& e) {
    fail(static_cast<int>(li) + 1, 1, "invalid map '" + name + "': " + e.what());
  } catch (const input_error& e) {
    fail(static_cast<int>(li) + 1, 1, "invalid map '" + name + "': " + e.what());
  }
  return static_cast<std::size_t>(endl_) + 1;
}

std::size_t Parser::parse_orbit(std::size_t li, const std::string& name) {
  const int endl_ = section_end(li);
  PseudoOrbit po;
  bool have_delta = false;
  for (std::size_t j = li + 1; j < static_cast<std::size_t>(endl_); ++j) {
    std::vector<Tok> toks = tokenize(raw[j]);
    const int line = static_cast<int>(j) + 1;
    if (toks.empty() || toks[0].s[0] == '#') continue;
    if (toks[0].s == "delta") {
      need_count(toks, 2, line);
      po.delta = need_rat(toks[1], line);
      if (!(po.delta > 0)) fail(line, toks[1].col, "delta must be positive");
      have_delta = true;
    } else if (toks[0].s == "generator") {
      need_count(toks, 2, line);
      po.generator = toks[1].s;
    } else if (toks[0].s == "vertex") {
      need_count(toks, 2, line);
      po.points.push_back(sd.graph->vertex_point(need_vertex(toks[1], line)));
    } else if (toks[0].s == "point") {
      need_count(toks, 3, line);
      int e = need_edge(toks[1], line);
      po.points.push_back(sd.graph->point(e, need_offset(toks[2], e, line)));
    } else {
      fail(line, toks[0].col, "unrecognized field '" + toks[0].s + "' in orbit section");
    }
  }
  if (!have_delta) fail(static_cast<int>(li) + 1, 1, "orbit '" + name + "' lacks a delta");
  if (po.points.empty()) fail(static_cast<int>(li) + 1, 1, "orbit '" + name + "' has no points");
  sd.orbits.emplace_back(name, std::move(po));
  return static_cast<std::size_t>(endl_) + 1;
}

std::size_t Parser::parse_pattern(std::size_t li, const std::string& name) {
  const int endl_ = section_end(li);
  std::optional<std::vector<int>> indices;
  for (std::size_t j = li + 1; j < static_cast<std::size_t>(endl_); ++j) {
    std::vector<Tok> toks = tokenize(raw[j]);
    const int line = static_cast<int>(j) + 1;
    if (toks.empty() || toks[0].s[0] == '#') continue;
    if (toks[0].s == "indices") {
      if (toks.size() < 2) fail(line, toks[0].col, "'indices' needs at least one value");
      std::vector<int> v;
      for (std::size_t x = 1; x < toks.size(); ++x) {
        long idx = need_long(toks[x], line);
        if (idx < 1) fail(line, toks[x].col, "indices are 1-based");
        v.push_back(static_cast<int>(idx - 1));
      }
      indices = std::move(v);
    } else {
      fail(line, toks[0].col, "unrecognized field '" + toks[0].s + "' in pattern section");
    }
  }
  if (!indices) fail(static_cast<int>(li) + 1, 1, "pattern '" + name + "' has no indices");
  sd.patterns.emplace_back(name, std::move(*indices));
  return static_cast<std::size_t>(endl_) + 1;
}

std::size_t Parser::parse_certificate(std::size_t li, const std::string& name) {
  const int endl_ = section_end(li);
  CertificateEntry e;
  std::vector<std::vector<int>> rows;
  bool have[10] = {};
  enum { EPS, N, GAMMA, DELTA, TAU, XI, ETA, LAMBDA, SURJ, SEED };
  for (std::size_t j = li + 1; j < static_cast<std::size_t>(endl_); ++j) {
    std::vector<Tok> toks = tokenize(raw[j]);
    const int line = static_cast<int>(j) + 1;
    if (toks.empty() || toks[0].s[0] == '#') continue;
    const std::string& kw = toks[0].s;
    if (kw == "cover" || kw == "map" || kw == "source") {
      need_count(toks, 2, line);
      (kw == "cover" ? e.cover : kw == "map" ? e.g : e.source) = toks[1].s;
    } else if (kw == "eps" || kw == "gamma" || kw == "delta" || kw == "tau" || kw == "xi" ||
               kw == "eta" || kw == "lambda") {
      need_count(toks, 2, line);
      Rat v = need_rat(toks[1], line);
      if (kw == "eps") e.eps = v, have[EPS] = true;
      if (kw == "gamma") e.gamma = v, have[GAMMA] = true;
      if (kw == "delta") e.delta = v, have[DELTA] = true;
      if (kw == "tau") e.tau = v, have[TAU] = true;
      if (kw == "xi") e.xi = v, have[XI] = true;
      if (kw == "eta") e.eta = v, have[ETA] = true;
      if (kw == "lambda") e.lambda = v, have[LAMBDA] = true;
    } else if (kw == "n") {
      need_count(toks, 2, line);
      e.n = static_cast<int>(need_long(toks[1], line));
      have[N] = true;
    } else if (kw == "surjective") {
      need_count(toks, 2, line);
      e.surjective = need_long(toks[1], line) != 0;
      have[SURJ] = true;
    } else if (kw == "seed") {
      need_count(toks, 2, line);
      e.seed = need_u64(toks[1], line);
      have[SEED] = true;
    } else if (kw == "row") {
      if (toks.size() < 2) fail(line, toks[0].col, "'row' needs an index");
      long i = need_long(toks[1], line);
      if (i != static_cast<long>(rows.size()) + 1)
        fail(line, toks[1].col, "relation rows must appear in order");
      std::vector<int> succ;
      for (std::size_t x = 2; x < toks.size(); ++x) {
        long v = need_long(toks[x], line);
        if (v < 1) fail(line, toks[x].col, "successors are 1-based");
        succ.push_back(static_cast<int>(v - 1));
      }
      std::sort(succ.begin(), succ.end());
      rows.push_back(std::move(succ));
    } else if (kw == "arc") {
      need_count(toks, 6, line);
      ArcSpec a;
      long i = need_long(toks[1], line);
      if (i != static_cast<long>(e.arcs.size()) + 1)
        fail(line, toks[1].col, "arcs must appear in order");
      a.cover_index = static_cast<int>(i - 1);
      a.edge = need_edge(toks[2], line);
      a.lo = need_offset(toks[3], a.edge, line);
      a.hi = need_offset(toks[4], a.edge, line);
      a.gap = need_rat(toks[5], line);
      e.arcs.push_back(std::move(a));
    } else if (kw == "arcpoints" || kw == "arcslots" || kw == "arcpieces") {
      if (e.arcs.empty()) fail(line, toks[0].col, "'" + kw + "' outside an arc");
      ArcSpec& a = e.arcs.back();
      for (std::size_t x = 1; x < toks.size(); ++x) {
        if (kw == "arcpoints") {
          a.points.push_back(need_offset(toks[x], a.edge, line));
        } else {
          long v = need_long(toks[x], line);
          if (v < 1) fail(line, toks[x].col, "indices are 1-based");
          (kw == "arcslots" ? a.slots : a.pieces).push_back(static_cast<int>(v - 1));
        }
      }
    } else if (kw == "note") {
      std::size_t at = raw[j].find("note");
      std::string rest = raw[j].substr(at + 4);
      if (!rest.empty() && rest[0] == ' ') rest.erase(0, 1);
      e.log.push_back(rest);
    } else {
      fail(line, toks[0].col, "unrecognized field '" + kw + "' in certificate section");
    }
  }
  const int sline = static_cast<int>(li) + 1;
  const char* names[10] = {"eps", "n",   "gamma",      "delta", "tau",
                           "xi",  "eta", "lambda",     "surjective", "seed"};
  for (int x = 0; x < 10; ++x)
    if (!have[x])
      fail(sline, 1, "certificate '" + name + "' lacks field '" + std::string(names[x]) + "'");
  if (e.cover.empty() || e.g.empty() || e.source.empty())
    fail(sline, 1, "certificate '" + name + "' must reference a cover, a map, and a source");
  const int k = static_cast<int>(rows.size());
  for (const auto& r : rows)
    for (int v : r)
      if (v >= k) fail(sline, 1, "relation successor out of range");
  e.phi = TransitionRelation{k, std::move(rows)};
  for (const ArcSpec& a : e.arcs)
    if (a.points.size() != 2 * (a.slots.size() + a.pieces.size()) + 2)
      fail(sline, 1, "arc subdivision of certificate '" + name + "' is inconsistent");
  if (static_cast<int>(e.arcs.size()) != k)
    fail(sline, 1, "certificate '" + name + "' needs one arc per relation row");

  // Dangling references are rejected at parse time.
  bool cov_ok = false, g_ok = false, src_ok = false;
  for (const auto& c : sd.covers) cov_ok |= c.first == e.cover;
  for (const auto& m : sd.maps) {
    g_ok |= m.first == e.g;
    src_ok |= m.first == e.source;
  }
  if (!cov_ok) fail(sline, 1, "certificate '" + name + "' references unknown cover '" + e.cover + "'");
  if (!g_ok) fail(sline, 1, "certificate '" + name + "' references unknown map '" + e.g + "'");
  if (!src_ok)
    fail(sline, 1, "certificate '" + name + "' references unknown map '" + e.source + "'");
  sd.certificates.emplace_back(name, std::move(e));
  return static_cast<std::size_t>(endl_) + 1;
}

}  // namespace

const PLMap& SystemDescription::find_map(const std::string& name) const {
  for (const auto& m : maps)
    if (m.first == name) return m.second;
  throw input_error("no map named '" + name + "'");
}
const TautCover& SystemDescription::find_cover(const std::string& name) const {
  for (const auto& c : covers)
    if (c.first == name) return c.second;
  throw input_error("no cover named '" + name + "'");
}
const PseudoOrbit& SystemDescription::find_orbit(const std::string& name) const {
  for (const auto& o : orbits)
    if (o.first == name) return o.second;
  throw input_error("no orbit named '" + name + "'");
}
const std::vector<int>& SystemDescription::find_pattern(const std::string& name) const {
  for (const auto& p : patterns)
    if (p.first == name) return p.second;
  throw input_error("no pattern named '" + name + "'");
}
const CertificateEntry& SystemDescription::find_certificate(const std::string& name) const {
  for (const auto& c : certificates)
    if (c.first == name) return c.second;
  throw input_error("no certificate named '" + name + "'");
}

SystemDescription parse_system(const std::string& text, const std::string& origin) {
  Parser p;
  p.origin = origin;
  p.parse(text);
  return std::move(p.sd);
}

SystemDescription load_system(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw input_error("cannot open '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_system(buf.str(), path);
}

std::string format_system(const SystemDescription& sd) {
  std::ostringstream os;
  os << "%sysdesc 1\n";
  const MetricGraph& g = *sd.graph;
  os << "graph\n";
  os << "vertices " << g.vertex_count() << "\n";
  for (int e = 0; e < g.edge_count(); ++e)
    os << "edge " << g.edge(e).from + 1 << " " << g.edge(e).to + 1 << " "
       << rat_str(g.edge(e).length) << "\n";
  os << "end\n";
  for (const auto& [name, cov] : sd.covers) {
    os << "cover " << name << "\n";
    for (int i = 0; i < cov.size(); ++i) {
      os << "member\n";
      const Region& m = cov.member(i);
      for (int v = 0; v < g.vertex_count(); ++v)
        if (m.has_vertex(v)) os << "vertex " << v + 1 << "\n";
      for (int e = 0; e < g.edge_count(); ++e)
        for (const Interval& iv : m.on_edge(e).parts)
          os << "interval " << e + 1 << " " << rat_str(iv.lo) << " " << rat_str(iv.hi) << " "
             << (iv.lo_closed ? "closed" : "open") << " " << (iv.hi_closed ? "closed" : "open")
             << "\n";
    }
    os << "end\n";
  }
  for (const auto& [name, m] : sd.maps) {
    os << "map " << name << "\n";
    for (int e = 0; e < g.edge_count(); ++e) {
      os << "edge " << e + 1 << "\n";
      for (const Segment& s : m.on_edge(e)) {
        os << "segment " << rat_str(s.lo) << " " << rat_str(s.hi) << "\n";
        for (const WalkStep& st : s.walk.steps)
          os << "step " << st.edge + 1 << " " << rat_str(st.a) << " " << rat_str(st.b) << "\n";
      }
    }
    os << "end\n";
  }
  for (const auto& [name, po] : sd.orbits) {
    os << "orbit " << name << "\n";
    os << "delta " << rat_str(po.delta) << "\n";
    if (!po.generator.empty()) os << "generator " << po.generator << "\n";
    for (const GraphPoint& p : po.points) {
      if (p.is_vertex())
        os << "vertex " << p.vertex + 1 << "\n";
      else
        os << "point " << p.edge + 1 << " " << rat_str(p.offset) << "\n";
    }
    os << "end\n";
  }
  for (const auto& [name, pat] : sd.patterns) {
    os << "pattern " << name << "\n";
    os << "indices";
    for (int v : pat) os << " " << v + 1;
    os << "\nend\n";
  }
  for (const auto& [name, e] : sd.certificates) {
    os << "certificate " << name << "\n";
    os << "cover " << e.cover << "\n";
    os << "map " << e.g << "\n";
    os << "source " << e.source << "\n";
    os << "eps " << rat_str(e.eps) << "\n";
    os << "n " << e.n << "\n";
    os << "gamma " << rat_str(e.gamma) << "\n";
    os << "delta " << rat_str(e.delta) << "\n";
    os << "tau " << rat_str(e.tau) << "\n";
    os << "xi " << rat_str(e.xi) << "\n";
    os << "eta " << rat_str(e.eta) << "\n";
    os << "lambda " << rat_str(e.lambda) << "\n";
    os << "surjective " << (e.surjective ? 1 : 0) << "\n";
    os << "seed " << e.seed << "\n";
    for (int i = 0; i < e.phi.k; ++i) {
      os << "row " << i + 1;
      for (int j : e.phi.succ[i]) os << " " << j + 1;
      os << "\n";
    }
    for (std::size_t i = 0; i < e.arcs.size(); ++i) {
      const ArcSpec& a = e.arcs[i];
      os << "arc " << i + 1 << " " << a.edge + 1 << " " << rat_str(a.lo) << " " << rat_str(a.hi)
         << " " << rat_str(a.gap) << "\n";
      os << "arcpoints";
      for (const Rat& r : a.points) os << " " << rat_str(r);
      os << "\narcslots";
      for (int s : a.slots) os << " " << s + 1;
      os << "\n";
      if (!a.pieces.empty()) {
        os << "arcpieces";
        for (int t : a.pieces) os << " " << t + 1;
        os << "\n";
      }
    }
    for (const std::string& l : e.log) os << "note " << l << "\n";
    os << "end\n";
  }
  return os.str();
}

void save_system(const SystemDescription& sd, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw input_error("cannot write '" + path + "'");
  out << format_system(sd);
  if (!out) throw input_error("write to '" + path + "' failed");
}

ShadowingCertificate materialize(const SystemDescription& sd, const CertificateEntry& e) {
  const TautCover& cover = sd.find_cover(e.cover);
  if (e.phi.k != cover.size())
    throw input_error("certificate relation arity does not match its cover");
  return ShadowingCertificate{e.eps,   e.n,     cover,  sd.find_map(e.g), sd.find_map(e.source),
                              e.gamma, e.delta, e.tau,  e.xi,             e.eta,
                              e.lambda, e.phi,  e.arcs, e.surjective,     e.seed,
                              e.log};
}

void add_certificate(SystemDescription& sd, const std::string& name,
                     const ShadowingCertificate& cert) {
  if (!sd.graph) sd.graph = cert.g.graph();
  if (sd.graph != cert.g.graph())
    throw input_error("certificate lives on a different graph than the description");
  CertificateEntry e;
  e.cover = name + ".cover";
  e.g = name + ".g";
  e.source = name + ".source";
  e.eps = cert.eps;
  e.n = cert.n;
  e.gamma = cert.gamma;
  e.delta = cert.delta;
  e.tau = cert.tau;
  e.xi = cert.xi;
  e.eta = cert.eta;
  e.lambda = cert.lambda;
  e.surjective = cert.surjective;
  e.seed = cert.seed;
  e.phi = cert.phi;
  e.arcs = cert.arcs;
  e.log = cert.log;
  sd.covers.emplace_back(e.cover, cert.cover);
  sd.maps.emplace_back(e.g, cert.g);
  sd.maps.emplace_back(e.source, cert.source);
  sd.certificates.emplace_back(name, std::move(e));
}

void save_certificate(const ShadowingCertificate& cert, const std::string& path) {
  SystemDescription sd;
  add_certificate(sd, "cert", cert);
  save_system(sd, path);
}

ShadowingCertificate load_certificate(const std::string& path) {
  SystemDescription sd = load_system(path);
  if (sd.certificates.empty()) throw input_error("'" + path + "' holds no certificate");
  return materialize(sd, sd.certificates.front().second);
}

}  // namespace shadowcert
