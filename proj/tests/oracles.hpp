#pragma once
// Test-only helpers: random generators and independent oracles. Nothing here
// calls the code paths the oracles are used to check.

#include <cstdint>
#include <random>
#include <vector>

#include "toric_af/exact.hpp"
#include "toric_af/int_matrix.hpp"

namespace toric_af::testing {

inline FieldPtr sqrt_field(long d) {
  long r = 1;
  while ((r + 1) * (r + 1) <= d) ++r;
  return FieldContext::intern({Integer(-d), 0, 1}, {Rational(r), Rational(r + 1)});
}

inline FieldPtr cbrt_field(long d) {
  long r = 1;
  while ((r + 1) * (r + 1) * (r + 1) <= d) ++r;
  return FieldContext::intern({Integer(-d), 0, 0, 1}, {Rational(r), Rational(r + 1)});
}

inline FieldPtr golden_field() { return FieldContext::intern({-1, -1, 1}, {Rational(1), Rational(2)}); }

inline ExactReal sqrt_of(long d) { return ExactReal::generator(sqrt_field(d)); }
inline ExactReal cbrt_of(long d) { return ExactReal::generator(cbrt_field(d)); }
inline ExactReal golden() { return ExactReal::generator(golden_field()); }

inline bool is_square(long d) {
  long r = 0;
  while (r * r < d) ++r;
  return r * r == d;
}
inline bool is_cube(long d) {
  long r = 0;
  while (r * r * r < d) ++r;
  return r * r * r == d;
}

/// Largest integer k with k^p <= n: integer-power oracle for floor(n^(1/p)).
inline long integer_root_floor(long n, int p) {
  long k = 0;
  auto pow = [p](long b) {
    long r = 1;
    for (int i = 0; i < p; ++i) r *= b;
    return r;
  };
  while (pow(k + 1) <= n) ++k;
  return k;
}

struct Rng {
  std::mt19937_64 engine;
  explicit Rng(std::uint64_t seed) : engine(seed) {}
  long uniform(long lo, long hi) { return std::uniform_int_distribution<long>(lo, hi)(engine); }
  Rational rational(long max_num, long max_den) {
    Rational q(uniform(-max_num, max_num), uniform(1, max_den));
    q.canonicalize();
    return q;
  }
  Rational positive_rational(long max_num, long max_den) {
    Rational q(uniform(1, max_num), uniform(1, max_den));
    q.canonicalize();
    return q;
  }
  FieldPtr quadratic_field() {
    long d;
    do d = uniform(2, 60);
    while (is_square(d));
    return sqrt_field(d);
  }
  FieldPtr cubic_field() {
    long d;
    do d = uniform(2, 40);
    while (is_cube(d));
    return cbrt_field(d);
  }
  ExactReal element(const FieldPtr& f, long max_num = 9, long max_den = 5) {
    FieldContext::Coords c;
    for (std::size_t i = 0; i < f->degree(); ++i) c.push_back(rational(max_num, max_den));
    return ExactReal::field(f, c);
  }
  /// A positive element: an element shifted by a rational exceeding its size.
  ExactReal positive_element(const FieldPtr& f, long max_num = 9, long max_den = 5) {
    ExactReal x = element(f, max_num, max_den);
    double v = x.to_double();
    long shift = static_cast<long>(v < 0 ? -v : 0) + 1;
    return x + ExactReal(Rational(shift) + positive_rational(3, 4));
  }
};

}  // namespace toric_af::testing

namespace toric_af::testing {

/// Classical all-integer continued fraction of (p + sqrt(d)) / q, valid when
/// q divides d - p^2 (Perron's recurrence on (m, s) pairs).
inline std::vector<long> quadratic_cf(long p, long d, long q, std::size_t terms) {
  long root = 0;
  while ((root + 1) * (root + 1) <= d) ++root;
  std::vector<long> out;
  long m = p;
  long s = q;
  auto floor_div = [](long a, long b) {
    long r = a / b;
    if ((a % b != 0) && ((a < 0) != (b < 0))) --r;
    return r;
  };
  for (std::size_t k = 0; k < terms; ++k) {
    // sqrt d lies strictly inside (root, root+1), so the floor only depends on root.
    long a = s > 0 ? floor_div(m + root, s) : -(floor_div(m + root, -s) + 1);
    out.push_back(a);
    m = a * s - m;
    s = (d - m * m) / s;
  }
  return out;
}

/// Rational value of [b_1; b_2, ..., b_k] by backward recursion.
inline Rational evaluate_cf(const std::vector<Integer>& digits) {
  Rational x = Rational(digits.back());
  for (std::size_t i = digits.size() - 1; i-- > 0;) x = Rational(digits[i]) + 1 / x;
  return x;
}

/// Random non-negative unimodular matrix: a product of elementary
/// matrices I + E_ij (i != j) and transpositions. Such matrices keep the
/// positive cone inside itself.
inline IntMatrix positive_unimodular(Rng& rng, std::size_t n, int factors) {
  IntMatrix m = IntMatrix::identity(n);
  for (int f = 0; f < factors; ++f) {
    IntMatrix e = IntMatrix::identity(n);
    std::size_t i = static_cast<std::size_t>(rng.uniform(0, static_cast<long>(n) - 1));
    std::size_t j = static_cast<std::size_t>(rng.uniform(0, static_cast<long>(n) - 2));
    if (j >= i) ++j;
    if (rng.uniform(0, 3) == 0) {
      e(i, i) = 0;
      e(j, j) = 0;
      e(i, j) = 1;
      e(j, i) = 1;
    } else {
      e(i, j) = 1;
    }
    m = m * e;
  }
  return m;
}

/// Rows of `a` lie in the row lattice of the square non-singular `b`:
/// solve x b = a over Q and check integrality.
inline bool rows_in_lattice(const IntMatrix& a, const IntMatrix& b) {
  const std::size_t n = b.rows();
  for (std::size_t r = 0; r < a.rows(); ++r) {
    // Augmented system b^T x = a_r^T.
    std::vector<std::vector<Rational>> m(n, std::vector<Rational>(n + 1));
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) m[i][j] = Rational(b(j, i));
      m[i][n] = Rational(a(r, i));
    }
    for (std::size_t c = 0; c < n; ++c) {
      std::size_t p = c;
      while (m[p][c] == 0) ++p;
      std::swap(m[p], m[c]);
      for (std::size_t i = 0; i < n; ++i) {
        if (i == c || m[i][c] == 0) continue;
        Rational f = m[i][c] / m[c][c];
        for (std::size_t j = c; j <= n; ++j) m[i][j] -= f * m[c][j];
      }
    }
    for (std::size_t i = 0; i < n; ++i) {
      Rational x = m[i][n] / m[i][i];
      if (x.get_den() != 1) return false;
    }
  }
  return true;
}

}  // namespace toric_af::testing
