#include "toric_af/afstable.hpp"

#include <algorithm>
#include <unordered_map>

#include "toric_af/error.hpp"
#include "toric_af/hnf.hpp"

namespace toric_af {

namespace {

void check_stop(const std::stop_token& stop) {
  if (stop.stop_requested()) throw Error(ErrorKind::Cancelled, "stable isomorphism search cancelled");
}

void require_exact(const ProjectivePseudoLattice& p) {
  for (const auto& t : p.thetas()) {
    if (!t.is_exact()) throw Error(ErrorKind::InexactInput, "stable isomorphism verdicts need exact thetas");
  }
}

bool contexts_agree(const std::vector<ExactReal>& a, const std::vector<ExactReal>& b) {
  FieldPtr fa = common_context(a);
  FieldPtr fb = common_context(b);
  return !fa || !fb || fa == fb || fa->same_field(*fb);
}

StableIsoVerdict isomorphic(std::string method, std::optional<TailOffsets> tail, std::optional<MatrixWitness> m) {
  StableIsoVerdict v;
  v.outcome = Outcome::Isomorphic;
  v.method = std::move(method);
  v.tail = tail;
  v.matrix = std::move(m);
  return v;
}

StableIsoVerdict distinct(std::string method, std::string invariant) {
  StableIsoVerdict v;
  v.outcome = Outcome::Distinct;
  v.method = std::move(method);
  v.invariant = std::move(invariant);
  return v;
}

StableIsoVerdict unknown(std::string method) {
  StableIsoVerdict v;
  v.method = std::move(method);
  return v;
}

// With equal projective states after k and k' steps, (1, theta) = mu P s and
// (1, theta') = mu' P' s, hence (1, theta') = (mu'/mu) P' P^{-1} (1, theta).
MatrixWitness witness_from_states(const std::vector<ExactReal>& ga, std::span<const DigitVector> da, std::size_t k,
                                  const std::vector<ExactReal>& gb, std::span<const DigitVector> db,
                                  std::size_t k_prime) {
  const std::size_t n = ga.size();
  IntMatrix p = k == 0 ? IntMatrix::identity(n) : convergents(da, k).matrix;
  IntMatrix q = k_prime == 0 ? IntMatrix::identity(n) : convergents(db, k_prime).matrix;
  IntMatrix p_inv = p.unimodular_inverse();
  auto sa = apply_columns(p_inv.transpose(), ga);
  auto sb = apply_columns(q.unimodular_inverse().transpose(), gb);
  ExactReal scale = sb[n - 1] / sa[n - 1];
  IntMatrix at = q * p_inv;
  return {at.transpose(), scale};
}

std::vector<std::vector<Rational>> nullspace(std::vector<std::vector<Rational>> m, std::size_t cols) {
  // Reduced row echelon form, then one basis vector per free column.
  std::vector<std::size_t> pivots;
  std::size_t row = 0;
  for (std::size_t c = 0; c < cols && row < m.size(); ++c) {
    std::size_t p = row;
    while (p < m.size() && m[p][c] == 0) ++p;
    if (p == m.size()) continue;
    std::swap(m[p], m[row]);
    Rational inv = 1 / m[row][c];
    for (auto& x : m[row]) x *= inv;
    for (std::size_t r = 0; r < m.size(); ++r) {
      if (r == row || m[r][c] == 0) continue;
      Rational f = m[r][c];
      for (std::size_t j = 0; j < cols; ++j) m[r][j] -= f * m[row][j];
    }
    pivots.push_back(c);
    ++row;
  }
  std::vector<std::vector<Rational>> basis;
  for (std::size_t free = 0; free < cols; ++free) {
    if (std::find(pivots.begin(), pivots.end(), free) != pivots.end()) continue;
    std::vector<Rational> v(cols);
    v[free] = 1;
    for (std::size_t i = 0; i < pivots.size(); ++i) v[pivots[i]] = -m[i][free];
    basis.push_back(std::move(v));
  }
  return basis;
}

std::vector<Integer> primitive(const std::vector<Rational>& v) {
  Integer den = 1;
  for (const auto& x : v) mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), x.get_den_mpz_t());
  std::vector<Integer> out;
  Integer g = 0;
  for (const auto& x : v) {
    Rational s = x * Rational(den);
    out.push_back(s.get_num());
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), out.back().get_mpz_t());
  }
  for (auto& x : out) x /= g;
  return out;
}

// Rank 2, theta of degree >= 3 over one field: the Moebius relation
// theta' = (a theta + b)/(c theta + d) is unique up to scale if it exists.
StableIsoVerdict moebius_verdict(const ExactReal& t, const ExactReal& u) {
  FieldPtr f = common_context({t, u});
  std::vector<ExactReal> gens{ExactReal(1), t, u, t * u};
  ModuleCoords coords = module_coords(gens, f);
  const std::size_t d = f->degree();
  std::vector<std::vector<Rational>> system(d, std::vector<Rational>(4));
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < 4; ++j) system[i][j] = coords.rows[j][i];
  auto kernel = nullspace(system, 4);
  const std::string method = "rank-2 fractional linear relation";
  if (kernel.empty()) return distinct(method, "theta' is not a fractional linear image of theta over Q");
  if (kernel.size() > 1) return unknown(method);
  // x1 + x2 t + x3 u + x4 t u = 0, so u = (a t + b) / (c t + d).
  auto x = primitive(kernel.front());
  Integer a = -x[1], b = -x[0], c = x[3], dd = x[2];
  Integer det = a * dd - b * c;
  if (abs(det) != 1) {
    return distinct(method, "fractional linear relation has determinant " + det.get_str() + ", not +-1");
  }
  ExactReal denom = ExactReal(Rational(c)) * t + ExactReal(Rational(dd));
  IntMatrix A{{0, 0}, {0, 0}};
  A(0, 0) = dd;
  A(0, 1) = b;
  A(1, 0) = c;
  A(1, 1) = a;
  if (sign(denom) < 0) {
    for (std::size_t i = 0; i < 2; ++i)
      for (std::size_t j = 0; j < 2; ++j) A(i, j) = -A(i, j);
    denom = -denom;
  }
  return isomorphic(method, std::nullopt, MatrixWitness{A, ExactReal(1) / denom});
}

// Rank 2, both thetas quadratic irrationals: compare the periodic tails.
StableIsoVerdict quadratic_verdict(const ProjectivePseudoLattice& a, const ProjectivePseudoLattice& b,
                                   const StableIsoOptions& options) {
  const std::string method = "rank-2 periodic continued fraction tails";
  std::size_t horizon = std::max<std::size_t>(options.period_horizon, 2);
  auto pa = find_period(a.representative(), horizon);
  check_stop(options.stop);
  auto pb = find_period(b.representative(), horizon);
  check_stop(options.stop);
  if (!pa.period || !pb.period) return unknown(method + " (period not found within horizon)");
  auto cycle = [](const PeriodSearch& p) {
    std::string out;
    for (std::size_t i = p.period->preperiod; i < p.period->preperiod + p.period->period; ++i)
      out += (out.empty() ? "" : ",") + p.expansion.digits[i][0].get_str();
    return "(" + out + ")*";
  };
  const std::string tails = "distinct periodic tails " + cycle(pa) + " vs " + cycle(pb);
  if (!contexts_agree(a.thetas(), b.thetas())) return distinct(method, tails);

  std::unordered_map<std::string, std::size_t> seen;
  const auto& sa = pa.expansion.states;
  const auto& sb = pb.expansion.states;
  for (std::size_t k = 0; k < sa.size(); ++k) seen.emplace(projective_key(sa[k]), k);
  std::optional<TailOffsets> best;
  for (std::size_t kp = 0; kp < sb.size(); ++kp) {
    auto it = seen.find(projective_key(sb[kp]));
    if (it == seen.end()) continue;
    TailOffsets t{it->second, kp};
    if (!best || t.k + t.k_prime < best->k + best->k_prime ||
        (t.k + t.k_prime == best->k + best->k_prime && t.k < best->k)) {
      best = t;
    }
  }
  if (!best) return distinct(method, tails);
  auto m = witness_from_states(a.representative(), pa.expansion.digits, best->k, b.representative(),
                               pb.expansion.digits, best->k_prime);
  return isomorphic(method, best, std::move(m));
}

StableIsoVerdict rank_two(const ProjectivePseudoLattice& a, const ProjectivePseudoLattice& b,
                          const StableIsoOptions& options) {
  const ExactReal& t = a.thetas()[0];
  const ExactReal& u = b.thetas()[0];
  if (t.is_rational() && u.is_rational()) {
    // Z + (p/q) Z = (1/q) Z.
    Rational scale(t.rational().get_den(), u.rational().get_den());
    scale.canonicalize();
    return isomorphic("rank-2 rational thetas", std::nullopt, MatrixWitness{IntMatrix::identity(2), ExactReal(scale)});
  }
  if (t.is_rational() != u.is_rational()) {
    return distinct("rank-2 continued fractions", "terminating vs infinite digits");
  }
  std::size_t dt = element_degree(t);
  std::size_t du = element_degree(u);
  if (dt != du) {
    return distinct("rank-2 element degrees",
                    "theta has degree " + std::to_string(dt) + ", theta' has degree " + std::to_string(du));
  }
  if (dt == 2) return quadratic_verdict(a, b, options);
  if (!contexts_agree(a.thetas(), b.thetas())) return unknown("rank-2 thetas presented in different fields");
  return moebius_verdict(t, u);
}

std::optional<MatrixWitness> scale_search(const std::vector<ExactReal>& ga, const std::vector<ExactReal>& gb,
                                          const std::vector<ExactReal>& candidates, const std::stop_token& stop) {
  for (const auto& c : candidates) {
    check_stop(stop);
    if (!c.is_exact() || sign(c) <= 0) continue;
    std::vector<ExactReal> scaled;
    for (const auto& g : ga) scaled.push_back(c * g);
    if (!module_equal(scaled, gb)) continue;
    // Solve A^T (c g) = g' when the coordinates determine A.
    FieldPtr f = common_context({ga.front(), ga.back(), gb.front(), gb.back(), c});
    ModuleCoords cs = module_coords(scaled, f);
    ModuleCoords ct = module_coords(gb, f);
    const std::size_t n = ga.size();
    const std::size_t d = cs.rows.front().size();
    IntMatrix A = IntMatrix::identity(n);
    if (lattice_rank(cs.integer_rows()) == n) {
      bool ok = true;
      IntMatrix solved(n, n);
      for (std::size_t j = 0; j < n && ok; ++j) {
        // sum_i A(i, j) cs.rows[i] = ct.rows[j]
        std::vector<std::vector<Rational>> system(d, std::vector<Rational>(n + 1));
        for (std::size_t r = 0; r < d; ++r) {
          for (std::size_t i = 0; i < n; ++i) system[r][i] = cs.rows[i][r];
          system[r][n] = -ct.rows[j][r];
        }
        auto kernel = nullspace(system, n + 1);
        ok = kernel.size() == 1 && kernel.front()[n] != 0;
        if (!ok) break;
        Rational last = kernel.front()[n];
        for (std::size_t i = 0; i < n && ok; ++i) {
          Rational v = kernel.front()[i] / last;
          ok = v.get_den() == 1;
          if (ok) solved(i, j) = v.get_num();
        }
      }
      if (ok && solved.is_unimodular()) A = solved;
    }
    return MatrixWitness{A, c};
  }
  return std::nullopt;
}

StableIsoVerdict higher_rank(const ProjectivePseudoLattice& a, const ProjectivePseudoLattice& b,
                             const StableIsoOptions& options) {
  const auto ga = a.representative();
  const auto gb = b.representative();
  const bool comparable = contexts_agree(a.thetas(), b.thetas());

  // Exact projective states shared between the two expansions.
  if (comparable) {
    JpaExpander ea(ga, true);
    JpaExpander eb(gb, true);
    std::unordered_map<std::string, std::size_t> seen_a;
    std::unordered_map<std::string, std::size_t> seen_b;
    seen_a.emplace(projective_key(ea.expansion().states[0]), 0);
    seen_b.emplace(projective_key(eb.expansion().states[0]), 0);
    std::optional<TailOffsets> hit;
    if (seen_a.begin()->first == seen_b.begin()->first) hit = TailOffsets{0, 0};
    std::size_t steps = 0;
    for (std::size_t round = 0; !hit && round < options.horizon; ++round) {
      check_stop(options.stop);
      if (options.step_budget && steps + 2 > options.step_budget) break;
      bool moved = false;
      // Advance both sides by one state; check each new state against the other side.
      for (int side = 0; side < 2 && !hit; ++side) {
        JpaExpander& e = side == 0 ? ea : eb;
        if (e.finished()) continue;
        e.advance();
        ++steps;
        if (e.expansion().states.size() <= round + 1) continue;
        moved = true;
        std::size_t idx = e.expansion().states.size() - 1;
        auto key = projective_key(e.expansion().states.back());
        auto& own = side == 0 ? seen_a : seen_b;
        auto& other = side == 0 ? seen_b : seen_a;
        own.emplace(key, idx);
        if (auto it = other.find(key); it != other.end()) {
          hit = side == 0 ? TailOffsets{idx, it->second} : TailOffsets{it->second, idx};
        }
      }
      if (!moved) break;
    }
    if (hit) {
      auto m = witness_from_states(ga, ea.expansion().digits, hit->k, gb, eb.expansion().digits, hit->k_prime);
      return isomorphic("shared Jacobi-Perron state", hit, std::move(m));
    }
  }

  if (comparable) {
    std::vector<ExactReal> candidates;
    if (options.scale_candidates) {
      candidates = *options.scale_candidates;
    } else {
      for (const auto& y : gb)
        for (const auto& x : ga) candidates.push_back(y / x);
    }
    if (auto m = scale_search(ga, gb, candidates, options.stop)) {
      return isomorphic("module equality at a candidate scale", std::nullopt, std::move(m));
    }
  }

  std::size_t ra = module_rank(ga);
  std::size_t rb = module_rank(gb);
  if (ra != rb) {
    std::string invariant = "Z-rank " + std::to_string(ra) + " vs " + std::to_string(rb) +
                            ": no scaling matches the modules";
    if ((ra < ga.size()) != (rb < gb.size())) invariant += " (rationally dependent vs independent generators)";
    return distinct("module rank", invariant);
  }
  return unknown(comparable ? "no shared state or module scale found within the horizon"
                            : "thetas are presented in different fields");
}

}  // namespace

std::optional<TailOffsets> tail_equivalent(std::span<const DigitVector> a, std::span<const DigitVector> b,
                                           std::size_t horizon) {
  if (!a.empty() && !b.empty() && a.front().rank() != b.front().rank()) {
    throw Error(ErrorKind::RankMismatch, "digit sequences have different ranks");
  }
  const std::size_t h = std::min({horizon, a.size(), b.size()});
  if (h == 0) return std::nullopt;
  const std::size_t max_k = a.size() - h;
  const std::size_t max_kp = b.size() - h;
  for (std::size_t sum = 0; sum <= max_k + max_kp; ++sum) {
    for (std::size_t k = sum > max_kp ? sum - max_kp : 0; k <= std::min(sum, max_k); ++k) {
      std::size_t kp = sum - k;
      bool match = true;
      for (std::size_t i = 0; i < h && match; ++i) match = a[k + i] == b[kp + i];
      if (match) return TailOffsets{k, kp};
    }
  }
  return std::nullopt;
}

std::string to_string(Outcome o) {
  switch (o) {
    case Outcome::Isomorphic: return "Isomorphic";
    case Outcome::Distinct: return "Distinct";
    case Outcome::Unknown: return "Unknown";
  }
  return "Unknown";
}

std::size_t element_degree(const ExactReal& x) {
  if (!x.is_exact()) throw Error(ErrorKind::InexactInput, "degree of a float value");
  if (x.is_rational()) return 1;
  const std::size_t d = x.context()->degree();
  std::vector<ExactReal> powers{ExactReal(1)};
  for (std::size_t i = 1; i < d; ++i) powers.push_back(powers.back() * x);
  return lattice_rank(module_coords(powers, x.context()).integer_rows());
}

StableIsoVerdict stable_iso(const ProjectivePseudoLattice& a, const ProjectivePseudoLattice& b,
                            const StableIsoOptions& options) {
  if (a.rank() != b.rank()) throw Error(ErrorKind::RankMismatch, "algebras have different ranks");
  require_exact(a);
  require_exact(b);
  check_stop(options.stop);
  if (options.witness && contexts_agree(a.thetas(), b.thetas())) {
    const auto& w = *options.witness;
    if (w.a.is_unimodular() && verify_witness(a, b, BasisChange(w.a), w.scale)) {
      return isomorphic("supplied witness", std::nullopt, w);
    }
  }
  if (contexts_agree(a.thetas(), b.thetas()) && a == b) {
    return isomorphic("identical thetas", TailOffsets{0, 0}, MatrixWitness{IntMatrix::identity(a.rank()), ExactReal(1)});
  }
  if (a.rank() == 2) return rank_two(a, b, options);
  return higher_rank(a, b, options);
}

StableIsoVerdict stable_iso(const ToricAfAlgebra& a, const ToricAfAlgebra& b, const StableIsoOptions& options) {
  return stable_iso(a.theta, b.theta, options);
}

bool verify_witness(const ProjectivePseudoLattice& a, const ProjectivePseudoLattice& b, const BasisChange& A,
                    const ExactReal& scale) {
  if (A.size() != a.rank() || a.rank() != b.rank()) throw Error(ErrorKind::RankMismatch, "witness size mismatch");
  if (!scale.is_exact()) throw Error(ErrorKind::InexactInput, "witness scale must be exact");
  if (sign(scale) <= 0) return false;
  std::vector<ExactReal> scaled;
  for (const auto& g : a.representative()) scaled.push_back(scale * g);
  return module_equal(apply_columns(A.matrix(), scaled), b.representative());
}

bool verify_witness(const ToricAfAlgebra& a, const ToricAfAlgebra& b, const BasisChange& A, const ExactReal& scale) {
  return verify_witness(a.theta, b.theta, A, scale);
}

bool verify_tail_witness(const ProjectivePseudoLattice& a, const ProjectivePseudoLattice& b, const TailOffsets& t) {
  if (a.rank() != b.rank()) throw Error(ErrorKind::RankMismatch, "algebras have different ranks");
  auto ea = jpa_expand(a.representative(), t.k, true);
  auto eb = jpa_expand(b.representative(), t.k_prime, true);
  if (ea.digits.size() != t.k || eb.digits.size() != t.k_prime) return false;
  if (!ea.exact() || !eb.exact()) throw Error(ErrorKind::InexactInput, "tail witnesses need exact thetas");
  const auto& sa = ea.states.back();
  const auto& sb = eb.states.back();
  const ExactReal& la = sa.back();
  const ExactReal& lb = sb.back();
  for (std::size_t i = 0; i + 1 < sa.size(); ++i) {
    if (!(sa[i] * lb == sb[i] * la)) return false;
  }
  return true;
}

}  // namespace toric_af
