#pragma once

#include <string>
#include <utility>
#include <vector>

#include "toric_af/numeric.hpp"

namespace toric_af {

/// Closed interval with exact rational endpoints, lo <= hi.
struct Interval {
  Rational lo;
  Rational hi;

  Rational width() const { return hi - lo; }
  Rational midpoint() const { return (lo + hi) / 2; }
  bool contains(const Rational& x) const { return lo <= x && x <= hi; }
  bool excludes_zero() const { return lo > 0 || hi < 0; }
};

Interval operator+(const Interval& a, const Interval& b);
Interval operator-(const Interval& a, const Interval& b);
Interval operator*(const Interval& a, const Interval& b);
Interval operator*(const Rational& s, const Interval& a);

/// Dense polynomials, coefficient i multiplies t^i. Trailing zeros are trimmed.
namespace poly {

using RatPoly = std::vector<Rational>;
using IntPoly = std::vector<Integer>;

void trim(RatPoly& p);
int degree(const RatPoly& p);  // -1 for the zero polynomial
RatPoly from_integers(const IntPoly& p);
Rational evaluate(const RatPoly& p, const Rational& x);
Interval evaluate(const RatPoly& p, const Interval& x);
RatPoly derivative(const RatPoly& p);
std::pair<RatPoly, RatPoly> divmod(const RatPoly& a, const RatPoly& b);
RatPoly multiply(const RatPoly& a, const RatPoly& b);

/// Sturm chain f, f', -rem(...), ... of a squarefree polynomial.
std::vector<RatPoly> sturm_chain(const RatPoly& f);
/// Number of distinct real roots in the half-open interval (lo, hi].
int count_roots(const std::vector<RatPoly>& chain, const Rational& lo, const Rational& hi);

/// True iff the monic integer polynomial has an integer (hence rational) root.
bool has_rational_root(const IntPoly& monic);
/// Irreducibility over Q: decided exactly for degree <= 3, certified by a
/// factorization-pattern argument modulo small primes above that. Returns
/// false when the polynomial is reducible or no certificate was found.
bool certify_irreducible(const IntPoly& monic);

/// "t^3-9" style rendering of an integer polynomial.
std::string to_string(const IntPoly& p);
/// Inverse of to_string; accepts terms like "3t^2", "-t", "+5", "2*t".
IntPoly parse(std::string_view text);

}  // namespace poly
}  // namespace toric_af
