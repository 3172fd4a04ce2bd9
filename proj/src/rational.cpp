#include "shadowcert/rational.hpp"

namespace shadowcert {

std::string rat_str(const Rat& r) {
  Rat c(r);
  c.canonicalize();
  if (c.get_den() == 1) return c.get_num().get_str();
  return c.get_num().get_str() + "/" + c.get_den().get_str();
}

std::optional<Rat> rat_parse(const std::string& s) {
  if (s.empty()) return std::nullopt;
  auto digits_ok = [](const std::string& t, bool sign_ok) {
    if (t.empty()) return false;
    size_t i = 0;
    if (sign_ok && (t[0] == '-' || t[0] == '+')) i = 1;
    if (i == t.size()) return false;
    for (; i < t.size(); ++i)
      if (t[i] < '0' || t[i] > '9') return false;
    return true;
  };
  auto slash = s.find('/');
  if (slash != std::string::npos) {
    std::string num = s.substr(0, slash), den = s.substr(slash + 1);
    if (!digits_ok(num, true) || !digits_ok(den, false)) return std::nullopt;
    Rat r;
    if (r.set_str(s, 10) != 0) return std::nullopt;
    if (r.get_den() == 0) return std::nullopt;
    r.canonicalize();
    return r;
  }
  auto dot = s.find('.');
  if (dot != std::string::npos) {
    std::string whole = s.substr(0, dot), frac = s.substr(dot + 1);
    if (!digits_ok(whole, true) || !digits_ok(frac, false)) return std::nullopt;
    Rat r;
    if (r.set_str(whole + frac, 10) != 0) return std::nullopt;
    mpz_class den(1);
    for (size_t i = 0; i < frac.size(); ++i) den *= 10;
    r /= Rat(den);
    r.canonicalize();
    return r;
  }
  if (!digits_ok(s, true)) return std::nullopt;
  Rat r;
  if (r.set_str(s, 10) != 0) return std::nullopt;
  r.canonicalize();
  return r;
}

Rat rat_floor(const Rat& r) {
  mpz_class q;
  mpz_fdiv_q(q.get_mpz_t(), r.get_num().get_mpz_t(), r.get_den().get_mpz_t());
  return Rat(q);
}

Rat dyadic_inside(const Rat& lo, const Rat& hi) { return dyadic_inside_at(lo, hi, 0); }

Rat dyadic_inside_at(const Rat& lo, const Rat& hi, std::uint64_t k) {
  if (!(lo < hi)) throw input_error("dyadic_inside: empty interval");
  Rat w = hi - lo;
  // Smallest m with 2^-m < w, then one more bit so several grid points fit.
  mpz_class two(2), pow(1);
  unsigned m = 0;
  while (Rat(1, pow) >= w) {
    pow *= 2;
    ++m;
  }
  pow *= 4;
  m += 2;
  // Grid points strictly inside: floor(lo*pow)+1 .. ceil(hi*pow)-1.
  Rat lo_scaled = lo * Rat(pow);
  mpz_class first;
  mpz_fdiv_q(first.get_mpz_t(), lo_scaled.get_num().get_mpz_t(), lo_scaled.get_den().get_mpz_t());
  first += 1;
  mpz_class count(0);
  {
    Rat hi_scaled = hi * Rat(pow);
    mpz_class last;
    mpz_cdiv_q(last.get_mpz_t(), hi_scaled.get_num().get_mpz_t(), hi_scaled.get_den().get_mpz_t());
    last -= 1;
    count = last - first + 1;
  }
  if (count <= 0) throw construction_error("dyadic_inside: no grid point");
  mpz_class idx(static_cast<unsigned long>(k % 0xffffffffull));
  idx %= count;
  Rat out(first + idx, pow);
  out.canonicalize();
  if (!(lo < out && out < hi)) throw construction_error("dyadic_inside: out of range");
  return out;
}

double rat_double(const Rat& r) { return r.get_d(); }

}  // namespace shadowcert
