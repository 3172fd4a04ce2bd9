#include "shadowcert/cover.hpp"

#include <algorithm>

#include "shadowcert/geometry.hpp"

namespace shadowcert {

TautCover::TautCover(GraphPtr g, std::vector<Region> members)
    : g_(std::move(g)), members_(std::move(members)) {
  const int k = static_cast<int>(members_.size());
  if (k == 0) throw construction_error("cover: no members");
  Region all = Region::empty(g_);
  for (int i = 0; i < k; ++i) {
    const Region& u = members_[i];
    if (!u.graph()->same_shape(*g_)) throw construction_error("cover: member on wrong graph");
    if (u.empty()) throw construction_error("cover: empty member");
    if (!u.is_open()) throw construction_error("cover: member not open");
    if (!u.connected()) throw construction_error("cover: member not connected");
    all = all.united(u);
    closures_.push_back(u.closure());
  }
  if (!(all == Region::full(g_))) throw construction_error("cover: members do not cover");
  meet_.assign(static_cast<size_t>(k) * k, 0);
  for (int i = 0; i < k; ++i) {
    meet_[i * k + i] = 1;
    for (int j = i + 1; j < k; ++j) {
      bool m = region_intersects(closures_[i], closures_[j]);
      meet_[i * k + j] = meet_[j * k + i] = m ? 1 : 0;
      if (m && !region_intersects(members_[i], members_[j]))
        throw construction_error("cover: closures meet but members do not");
    }
  }
  for (int i = 0; i < k; ++i) {
    Region priv = members_[i];
    for (int j = 0; j < k; ++j) {
      if (j == i || !meet_[i * k + j]) continue;
      priv = priv.subtracted(closures_[j]);
      if (priv.empty()) break;
    }
    if (priv.empty()) throw construction_error("cover: member has no private part");
  }
  diam_.reserve(k);
  for (int i = 0; i < k; ++i) diam_.push_back(region_diameter(closures_[i]));
}

Rat TautCover::max_member_diameter() const {
  Rat best(0);
  for (const Rat& d : diam_) best = rat_max(best, d);
  return best;
}

const Rat& TautCover::lebesgue() const {
  if (!lebesgue_) lebesgue_ = lebesgue_number(g_, members_);
  return *lebesgue_;
}

int TautCover::member_containing(const GraphPoint& p) const {
  for (int i = 0; i < size(); ++i)
    if (members_[i].contains(p)) return i;
  return -1;
}

std::vector<int> TautCover::members_containing(const GraphPoint& p) const {
  std::vector<int> out;
  for (int i = 0; i < size(); ++i)
    if (members_[i].contains(p)) out.push_back(i);
  return out;
}

Rat lebesgue_number(GraphPtr g, const std::vector<Region>& members) {
  if (members.empty()) throw input_error("lebesgue_number: no members");
  const Region full = Region::full(g);
  std::vector<Region> complements;
  complements.reserve(members.size());
  for (const Region& u : members) {
    if (u == full) return region_diameter(full) / 2;  // member is everything
    complements.push_back(u.complemented());
  }
  std::optional<Rat> best;
  for (int e = 0; e < g->edge_count(); ++e) {
    PLFunction m = edge_distance_profile(*g, e, complements[0]);
    for (size_t i = 1; i < complements.size(); ++i)
      m = m.max_with(edge_distance_profile(*g, e, complements[i]));
    Rat val = m.min_point().first;
    if (!best || val < *best) best = val;
  }
  return *best;
}

std::vector<Region> core_sets(const TautCover& c, const Rat& eta) {
  const int k = c.size();
  std::vector<Region> nbhd;
  nbhd.reserve(k);
  for (int j = 0; j < k; ++j) nbhd.push_back(closed_neighborhood(c.closure_of(j), eta));
  std::vector<Region> cores;
  cores.reserve(k);
  for (int i = 0; i < k; ++i) {
    Region core = c.member(i);
    for (int j = 0; j < k && !core.empty(); ++j) {
      if (j == i) continue;
      if (!region_intersects(core, nbhd[j])) continue;
      core = core.subtracted(nbhd[j]);
    }
    cores.push_back(std::move(core));
  }
  return cores;
}

Region core_set(const TautCover& c, int i, const Rat& eta) {
  if (i < 0 || i >= c.size()) throw input_error("core_set: index out of range");
  Region core = c.member(i);
  for (int j = 0; j < c.size() && !core.empty(); ++j) {
    if (j == i) continue;
    Region nb = closed_neighborhood(c.closure_of(j), eta);
    if (!region_intersects(core, nb)) continue;
    core = core.subtracted(nb);
  }
  return core;
}

namespace {

std::vector<Region> star_chain_members(const GraphPtr& g, const Rat& r, const Rat& ell) {
  std::vector<Region> out;
  for (int v = 0; v < g->vertex_count(); ++v) out.push_back(ball(g, g->vertex_point(v), r));
  const Rat rho(11, 20);  // step/width ratio: > 1/2 separates alternate closures
  const Rat o = r / 4;    // how deep chain ends reach into the vertex balls
  for (int e = 0; e < g->edge_count(); ++e) {
    const Rat& L = g->edge(e).length;
    Rat c0 = r - o;
    Rat M = L - 2 * c0;  // chain span
    if (M <= ell) {
      out.push_back(Region::edge_interval(g, e, c0, c0 + M, false, false));
      continue;
    }
    // J members of width w at step s = rho*w with w + (J-1)s = M, w <= ell.
    Rat excess = (M - ell) / (rho * ell);
    long J = rat_floor(excess).get_num().get_si() + 1;
    if (Rat(J - 1) * rho * ell < M - ell) ++J;  // ceil
    Rat w = M / (1 + rho * Rat(J - 1));
    Rat s = rho * w;
    for (long j = 0; j < J; ++j) {
      Rat lo = c0 + Rat(j) * s;
      out.push_back(Region::edge_interval(g, e, lo, lo + w, false, false));
    }
  }
  return out;
}

}  // namespace

TautCover build_taut_cover(const PLMap& f, const Rat& eps) {
  if (eps <= 0) throw input_error("build_taut_cover: eps must be positive");
  GraphPtr g = f.graph();
  const Rat bound = eps / 5;
  Rat diam_x = region_diameter(Region::full(g));
  if (diam_x < bound) return TautCover(g, {Region::full(g)});

  Rat lip = f.lipschitz_modulus();
  Rat cap = bound;
  if (lip > 1) cap = eps / (5 * lip);
  Rat ell = cap * 9 / 10;
  Rat r = rat_min(ell / 2, g->min_edge_length() / 4);

  std::string last_error = "cover: construction failed";
  for (int round = 0; round < 64; ++round) {
    try {
      TautCover cover(g, star_chain_members(g, r, ell));
      for (int i = 0; i < cover.size(); ++i) {
        if (!(cover.member_diameter(i) < bound))
          throw construction_error("cover: member diameter at bound");
        Rat idiam = region_diameter(f.image_region(cover.closure_of(i)));
        if (!(idiam < bound)) throw construction_error("cover: image diameter at bound");
      }
      return cover;
    } catch (const construction_error& err) {
      last_error = err.what();
      r = r * 63 / 64;  // nudge off coincidences such as closures touching exactly
    }
  }
  throw construction_error(std::string("build_taut_cover: no taut cover after refinement: ") +
                           last_error);
}

}  // namespace shadowcert
