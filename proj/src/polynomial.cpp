#include "toric_af/polynomial.hpp"

#include <algorithm>
#include <cctype>
#include <cstdint>
#include <optional>

#include "toric_af/error.hpp"

namespace toric_af {

Interval operator+(const Interval& a, const Interval& b) { return {a.lo + b.lo, a.hi + b.hi}; }
Interval operator-(const Interval& a, const Interval& b) { return {a.lo - b.hi, a.hi - b.lo}; }

Interval operator*(const Interval& a, const Interval& b) {
  if (a.lo >= 0 && b.lo >= 0) return {a.lo * b.lo, a.hi * b.hi};
  Rational p[4] = {a.lo * b.lo, a.lo * b.hi, a.hi * b.lo, a.hi * b.hi};
  return {*std::min_element(p, p + 4), *std::max_element(p, p + 4)};
}

Interval operator*(const Rational& s, const Interval& a) {
  if (s >= 0) return {s * a.lo, s * a.hi};
  return {s * a.hi, s * a.lo};
}

namespace poly {

void trim(RatPoly& p) {
  while (!p.empty() && p.back() == 0) p.pop_back();
}

int degree(const RatPoly& p) {
  for (std::size_t i = p.size(); i-- > 0;)
    if (p[i] != 0) return static_cast<int>(i);
  return -1;
}

RatPoly from_integers(const IntPoly& p) {
  RatPoly out(p.begin(), p.end());
  trim(out);
  return out;
}

Rational evaluate(const RatPoly& p, const Rational& x) {
  Rational acc = 0;
  for (std::size_t i = p.size(); i-- > 0;) acc = acc * x + p[i];
  return acc;
}

Interval evaluate(const RatPoly& p, const Interval& x) {
  Interval acc{0, 0};
  for (std::size_t i = p.size(); i-- > 0;) {
    acc = acc * x;
    acc.lo += p[i];
    acc.hi += p[i];
  }
  return acc;
}

RatPoly derivative(const RatPoly& p) {
  if (p.size() <= 1) return {};
  RatPoly d(p.size() - 1);
  for (std::size_t i = 1; i < p.size(); ++i) d[i - 1] = p[i] * static_cast<long>(i);
  trim(d);
  return d;
}

std::pair<RatPoly, RatPoly> divmod(const RatPoly& a, const RatPoly& b) {
  const int db = degree(b);
  if (db < 0) throw Error(ErrorKind::DivisionByZero, "polynomial division by zero");
  RatPoly r = a;
  trim(r);
  int dr = degree(r);
  if (dr < db) return {{}, r};
  RatPoly q(static_cast<std::size_t>(dr - db + 1));
  const Rational lead = b[static_cast<std::size_t>(db)];
  while (dr >= db) {
    Rational c = r[static_cast<std::size_t>(dr)] / lead;
    const auto shift = static_cast<std::size_t>(dr - db);
    q[shift] = c;
    for (int i = 0; i <= db; ++i) r[shift + static_cast<std::size_t>(i)] -= c * b[static_cast<std::size_t>(i)];
    trim(r);
    dr = degree(r);
  }
  trim(q);
  return {q, r};
}

RatPoly multiply(const RatPoly& a, const RatPoly& b) {
  if (a.empty() || b.empty()) return {};
  RatPoly out(a.size() + b.size() - 1);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; j < b.size(); ++j) out[i + j] += a[i] * b[j];
  }
  trim(out);
  return out;
}

std::vector<RatPoly> sturm_chain(const RatPoly& f) {
  std::vector<RatPoly> chain{f, derivative(f)};
  trim(chain[0]);
  while (degree(chain.back()) > 0) {
    auto [q, r] = divmod(chain[chain.size() - 2], chain.back());
    if (degree(r) < 0) break;
    for (auto& c : r) c = -c;
    chain.push_back(std::move(r));
  }
  return chain;
}

namespace {

int sign_variations(const std::vector<RatPoly>& chain, const Rational& x) {
  int variations = 0;
  int last = 0;
  for (const auto& p : chain) {
    int s = sgn(evaluate(p, x));
    if (s == 0) continue;
    if (last != 0 && s != last) ++variations;
    last = s;
  }
  return variations;
}

}  // namespace

int count_roots(const std::vector<RatPoly>& chain, const Rational& lo, const Rational& hi) {
  return sign_variations(chain, lo) - sign_variations(chain, hi);
}

namespace {

bool integer_root_in(const RatPoly& f, const std::vector<RatPoly>& chain, const Rational& lo, const Rational& hi) {
  int n = count_roots(chain, lo, hi);
  if (n == 0) return false;
  if (hi - lo <= 1) {
    for (Integer k = ceil(lo); k <= floor(hi); ++k)
      if (evaluate(f, Rational(k)) == 0) return true;
    return false;
  }
  Rational mid = floor((lo + hi) / 2);
  if (mid <= lo) mid = lo + 1;
  return integer_root_in(f, chain, lo, mid) || integer_root_in(f, chain, mid, hi);
}

// Arithmetic in F_p[x] for p < 2^32; polynomials low degree first.
using ModPoly = std::vector<std::uint64_t>;

void mtrim(ModPoly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

std::uint64_t mpow(std::uint64_t b, std::uint64_t e, std::uint64_t p) {
  std::uint64_t r = 1;
  b %= p;
  while (e) {
    if (e & 1) r = r * b % p;
    b = b * b % p;
    e >>= 1;
  }
  return r;
}

ModPoly mmod(ModPoly a, const ModPoly& m, std::uint64_t p) {
  mtrim(a);
  const std::size_t dm = m.size() - 1;
  const std::uint64_t inv = mpow(m.back(), p - 2, p);
  while (a.size() > dm) {
    std::uint64_t c = a.back() * inv % p;
    const std::size_t shift = a.size() - 1 - dm;
    for (std::size_t i = 0; i <= dm; ++i) a[shift + i] = (a[shift + i] + p - c * m[i] % p) % p;
    mtrim(a);
  }
  return a;
}

ModPoly mmul(const ModPoly& a, const ModPoly& b, const ModPoly& m, std::uint64_t p) {
  if (a.empty() || b.empty()) return {};
  ModPoly out(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) out[i + j] = (out[i + j] + a[i] * b[j]) % p;
  return mmod(std::move(out), m, p);
}

ModPoly mgcd(ModPoly a, ModPoly b, std::uint64_t p) {
  mtrim(a);
  mtrim(b);
  while (!b.empty()) {
    ModPoly r = mmod(a, b, p);
    a = std::move(b);
    b = std::move(r);
  }
  if (!a.empty()) {
    std::uint64_t inv = mpow(a.back(), p - 2, p);
    for (auto& c : a) c = c * inv % p;
  }
  return a;
}

ModPoly mdivexact(ModPoly a, const ModPoly& b, std::uint64_t p) {
  mtrim(a);
  const std::size_t db = b.size() - 1;
  const std::uint64_t inv = mpow(b.back(), p - 2, p);
  ModPoly q(a.size() >= b.size() ? a.size() - db : 0, 0);
  while (a.size() > db) {
    std::uint64_t c = a.back() * inv % p;
    const std::size_t shift = a.size() - 1 - db;
    q[shift] = c;
    for (std::size_t i = 0; i <= db; ++i) a[shift + i] = (a[shift + i] + p - c * b[i] % p) % p;
    mtrim(a);
  }
  return q;
}

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

// Degrees of the irreducible factors of f mod p, or nullopt when f is not
// squarefree mod p.
std::optional<std::vector<std::size_t>> factor_degrees_mod(const IntPoly& f, std::uint64_t p) {
  ModPoly g(f.size());
  for (std::size_t i = 0; i < f.size(); ++i) {
    Integer r;
    mpz_fdiv_r_ui(r.get_mpz_t(), f[i].get_mpz_t(), p);
    g[i] = r.get_ui();
  }
  mtrim(g);
  if (g.size() != f.size()) return std::nullopt;
  ModPoly dg;
  for (std::size_t i = 1; i < g.size(); ++i) dg.push_back(g[i] * (i % p) % p);
  mtrim(dg);
  if (dg.empty() || mgcd(g, dg, p).size() != 1) return std::nullopt;

  std::vector<std::size_t> degrees;
  ModPoly rest = g;
  ModPoly h{0, 1};  // x
  for (std::size_t d = 1; 2 * d < rest.size(); ++d) {
    // h <- h^p mod rest
    ModPoly acc{1};
    ModPoly base = mmod(h, rest, p);
    for (std::uint64_t e = p; e; e >>= 1) {
      if (e & 1) acc = mmul(acc, base, rest, p);
      base = mmul(base, base, rest, p);
    }
    h = acc;
    ModPoly hx = h;
    hx.resize(std::max<std::size_t>(hx.size(), 2), 0);
    hx[1] = (hx[1] + p - 1) % p;
    ModPoly common = mgcd(rest, hx, p);
    if (common.size() > 1) {
      for (std::size_t k = 0; k < (common.size() - 1) / d; ++k) degrees.push_back(d);
      rest = mdivexact(rest, common, p);
      h = mmod(h, rest, p);
    }
  }
  if (rest.size() > 1) degrees.push_back(rest.size() - 1);
  return degrees;
}

}  // namespace

bool has_rational_root(const IntPoly& monic) {
  RatPoly f = from_integers(monic);
  if (degree(f) <= 0) return false;
  if (f[0] == 0) return true;
  Rational bound = 1;
  for (const auto& c : f) bound = std::max(bound, Rational(abs(c) + 1));
  return integer_root_in(f, sturm_chain(f), -bound, bound);
}

bool certify_irreducible(const IntPoly& monic) {
  const int n = degree(from_integers(monic));
  if (n < 1) return false;
  if (n == 1) return true;
  if (has_rational_root(monic)) return false;
  if (n <= 3) return true;

  // Possible degrees of a proper rational factor must be subset sums of the
  // factor-degree pattern modulo every good prime.
  std::vector<bool> possible(static_cast<std::size_t>(n), true);
  possible[0] = false;
  int checked = 0;
  for (std::uint64_t p = 3; p < 5000 && checked < 200; p += 2) {
    if (!is_prime(p)) continue;
    auto degrees = factor_degrees_mod(monic, p);
    if (!degrees) continue;
    ++checked;
    std::vector<bool> sums(static_cast<std::size_t>(n) + 1, false);
    sums[0] = true;
    for (std::size_t d : *degrees)
      for (std::size_t s = static_cast<std::size_t>(n); s >= d; --s)
        if (sums[s - d]) sums[s] = true;
    bool any = false;
    for (std::size_t s = 1; s < static_cast<std::size_t>(n); ++s) {
      possible[s] = possible[s] && sums[s];
      any = any || possible[s];
    }
    if (!any) return true;
  }
  return false;
}

std::string to_string(const IntPoly& p) {
  std::string out;
  for (std::size_t i = p.size(); i-- > 0;) {
    const Integer& c = p[i];
    if (c == 0) continue;
    Integer mag = abs(c);
    if (c < 0)
      out += "-";
    else if (!out.empty())
      out += "+";
    if (i == 0 || mag != 1) out += mag.get_str();
    if (i >= 1) out += "t";
    if (i >= 2) out += "^" + std::to_string(i);
  }
  return out.empty() ? "0" : out;
}

IntPoly parse(std::string_view text) {
  std::string s;
  for (char c : text)
    if (!std::isspace(static_cast<unsigned char>(c))) s += c;
  if (s.empty()) throw Error(ErrorKind::ParseError, "empty polynomial");
  IntPoly out;
  std::size_t i = 0;
  auto fail = [&](const std::string& why) {
    throw Error(ErrorKind::ParseError, "polynomial '" + std::string(text) + "': " + why);
  };
  while (i < s.size()) {
    int sign = 1;
    if (s[i] == '+' || s[i] == '-') {
      sign = s[i] == '-' ? -1 : 1;
      ++i;
    } else if (i != 0) {
      fail("expected '+' or '-'");
    }
    std::size_t start = i;
    while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i;
    Integer coeff = 1;
    bool has_coeff = i > start;
    if (has_coeff) coeff.set_str(s.substr(start, i - start), 10);
    std::size_t power = 0;
    if (i < s.size() && s[i] == '*') {
      if (!has_coeff) fail("dangling '*'");
      ++i;
      if (i >= s.size() || s[i] != 't') fail("expected 't' after '*'");
    }
    if (i < s.size() && s[i] == 't') {
      ++i;
      power = 1;
      if (i < s.size() && s[i] == '^') {
        ++i;
        std::size_t ps = i;
        while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i;
        if (i == ps) fail("missing exponent");
        power = std::stoul(s.substr(ps, i - ps));
        if (power > 64) fail("degree too large");
      }
    } else if (!has_coeff) {
      fail("expected a term");
    }
    if (out.size() <= power) out.resize(power + 1);
    out[power] += sign * coeff;
  }
  while (!out.empty() && out.back() == 0) out.pop_back();
  return out;
}

}  // namespace poly
}  // namespace toric_af
