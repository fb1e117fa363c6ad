#pragma once

#include <compare>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "toric_af/numeric.hpp"
#include "toric_af/polynomial.hpp"

namespace toric_af {

/// A real number field Q(alpha) presented by the minimal polynomial of alpha
/// and a rational interval isolating alpha among the real roots.
///
/// Contexts are immutable apart from the refinement cache, which is guarded
/// by a mutex; insertions are idempotent so concurrent readers agree.
class FieldContext {
 public:
  /// Validates the presentation: monic, degree >= 2, certified irreducible,
  /// and exactly one real root inside `isolating` (endpoints included).
  static std::shared_ptr<const FieldContext> make(poly::IntPoly minpoly, Interval isolating);

  /// Returns a process-wide shared context for the presentation, reusing an
  /// existing one when it selects the same root of the same polynomial.
  static std::shared_ptr<const FieldContext> intern(poly::IntPoly minpoly, Interval isolating);

  std::size_t degree() const noexcept { return minpoly_.size() - 1; }
  const poly::IntPoly& minpoly() const noexcept { return minpoly_; }
  const Interval& isolating_interval() const noexcept { return isolating_; }

  /// Enclosure of alpha of width <= 2^-bits. Enclosures are nested in `bits`.
  Interval root_enclosure(unsigned bits) const;

  /// Same polynomial and same selected root.
  bool same_field(const FieldContext& other) const;

  using Coords = std::vector<Rational>;
  Coords multiply(const Coords& a, const Coords& b) const;
  /// Throws DivisionByZero for the zero element.
  Coords inverse(const Coords& a) const;
  Interval evaluate(const Coords& a, unsigned bits) const;

  std::string describe() const;  // "t^2-2@[1,2]"

 private:
  FieldContext(poly::IntPoly minpoly, Interval isolating);

  poly::IntPoly minpoly_;
  poly::RatPoly minpoly_q_;
  std::vector<poly::RatPoly> sturm_;
  Interval isolating_;
  int sign_at_lo_;

  mutable std::mutex mutex_;
  mutable std::map<unsigned, Interval> refinements_;
};

using FieldPtr = std::shared_ptr<const FieldContext>;

/// A real number in one of three tiers: an exact rational, an exact element
/// of a real number field (stored as power-basis coordinates), or a float
/// value carrying an error radius. Field elements that happen to be rational
/// are stored in the rational tier, so the tier of an exact value tells
/// whether it is rational.
class ExactReal {
 public:
  enum class Kind { Rational, NumberField, Float };

  struct FieldElement {
    FieldPtr context;
    FieldContext::Coords coords;  // exactly degree() entries
  };
  struct Approx {
    double value = 0.0;
    double radius = 0.0;
  };

  ExactReal() : rep_(Rational(0)) {}
  ExactReal(const Rational& q) : rep_(q) {}
  ExactReal(long v) : rep_(Rational(v)) {}
  ExactReal(int v) : rep_(Rational(v)) {}

  static ExactReal field(FieldPtr context, FieldContext::Coords coords);
  /// The generator alpha of the context.
  static ExactReal generator(FieldPtr context);
  static ExactReal approx(double value, double radius = 0.0);

  Kind kind() const noexcept { return static_cast<Kind>(rep_.index()); }
  bool is_exact() const noexcept { return kind() != Kind::Float; }
  bool is_rational() const noexcept { return kind() == Kind::Rational; }

  const Rational& rational() const;
  const FieldElement& field_element() const;
  const Approx& approximation() const;
  /// Null unless the value is a number-field element.
  const FieldPtr& context() const;

  /// Power-basis coordinates padded to `degree`; exact values only.
  FieldContext::Coords coordinates(std::size_t degree) const;

  /// Rational enclosure; exact values only. Width shrinks as bits grow.
  Interval enclosure(unsigned bits) const;
  /// Nearest double (midpoint of a tight enclosure for exact values).
  double to_double() const;
  /// This value in the float tier, radius covering conversion error.
  ExactReal to_approx() const;

 private:
  std::variant<Rational, FieldElement, Approx> rep_;
};

ExactReal operator+(const ExactReal& a, const ExactReal& b);
ExactReal operator-(const ExactReal& a, const ExactReal& b);
ExactReal operator*(const ExactReal& a, const ExactReal& b);
ExactReal operator/(const ExactReal& a, const ExactReal& b);
ExactReal operator-(const ExactReal& a);

/// Exact equality of exact values (MixedContext across unrelated fields).
/// Float values compare by representation.
bool operator==(const ExactReal& a, const ExactReal& b);

/// -1, 0 or +1; exact values only.
int sign(const ExactReal& x);
/// Exact trichotomy (nf_compare); throws InexactInput on floats.
std::strong_ordering compare(const ExactReal& a, const ExactReal& b);
/// Exact floor (nf_floor); throws InexactInput on floats.
Integer floor(const ExactReal& x);
/// floor(y / x) for x > 0 without forming the quotient. Exact values only.
Integer floor_ratio(const ExactReal& y, const ExactReal& x);
/// Floor of a float-tier value when its error interval contains no integer
/// breakpoint, otherwise nullopt. Exact values always resolve.
std::optional<Integer> floor_if_determined(const ExactReal& x);

/// True when both are exact and every field element shares one field.
bool same_field(const ExactReal& a, const ExactReal& b);

/// Common context of a list of exact values (null when all are rational).
/// Throws MixedContext when two different fields occur.
FieldPtr common_context(const std::vector<ExactReal>& values);

/// Canonical text: "p/q", "float:<value>", "nf:<poly>@[lo,hi]:(c0,c1,...)".
std::string to_string(const ExactReal& x);
ExactReal parse_exact_real(std::string_view text);
/// Comma-separated list; commas nested inside [] or () do not split.
std::vector<ExactReal> parse_exact_vector(std::string_view text);
/// Exact key suitable for hashing; distinct exact values give distinct keys.
std::string exact_key(const ExactReal& x);

/// Precision used for the first refinement attempt of every exact sign test.
void set_default_precision_bits(unsigned bits);
unsigned default_precision_bits();

}  // namespace toric_af
