#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "toric_af/exact.hpp"
#include "toric_af/int_matrix.hpp"

namespace toric_af {

/// One Jacobi-Perron digit (b_1, ..., b_{n-1}) for rank n: non-negative and
/// at least one entry long.
class DigitVector {
 public:
  explicit DigitVector(std::vector<Integer> entries);
  DigitVector(std::initializer_list<long> entries);

  std::size_t size() const noexcept { return entries_.size(); }
  std::size_t rank() const noexcept { return entries_.size() + 1; }
  const Integer& operator[](std::size_t i) const { return entries_[i]; }
  const std::vector<Integer>& entries() const noexcept { return entries_; }

  friend bool operator==(const DigitVector&, const DigitVector&) = default;

 private:
  std::vector<Integer> entries_;
};

/// The n x n matrix with first row (0,...,0,1) and rows i+1 = (e_i | b_i).
/// Its determinant is (-1)^(n-1).
IntMatrix jpa_matrix(const DigitVector& digit);
/// Inverse of jpa_matrix; throws DomainError if the shape is wrong.
DigitVector digit_from_matrix(const IntMatrix& m);

struct EuclidResult {
  Integer gcd;
  std::vector<Integer> quotients;
};

/// Euclidean algorithm for a1 >= a2 >= 1, recording every quotient.
EuclidResult euclid(const Integer& a1, const Integer& a2);

struct RegularCf {
  std::vector<Integer> digits;
  bool terminated = false;  // a remainder reached zero
  bool inexact = false;     // float input; stopped early if a floor became ambiguous
};

/// Regular continued fraction [b_1; b_2, ...] of x > 0.
RegularCf regular_cf(const ExactReal& x, std::size_t max_terms);

enum class Termination {
  Running,             // expansion still being extended
  RationalDependence,  // leading remainder reached zero
  Truncated,           // step budget exhausted
  Indeterminate,       // float floor straddled a breakpoint
};

enum class StepStatus { Ok, RationalDependence, Indeterminate };

struct JpaStep {
  DigitVector digit;
  std::vector<ExactReal> next;
};

struct JpaStepOutcome {
  StepStatus status = StepStatus::Ok;
  std::optional<JpaStep> step;
};

/// One Jacobi-Perron step: b_i = floor(l_{i+1} / l_1) and
/// next = (l_2 - b_1 l_1, ..., l_n - b_{n-1} l_1, l_1), so that
/// jpa_matrix(b) * next == lambda. A zero leading entry ends the expansion.
JpaStepOutcome jpa_step(std::span<const ExactReal> lambda);

struct JpaExpansion {
  std::size_t rank = 0;
  std::vector<DigitVector> digits;
  /// states[0] is the input; states[k] follows digit k. In projective mode
  /// every state after the first is scaled so its last entry is 1.
  std::vector<std::vector<ExactReal>> states;
  Termination termination = Termination::Running;
  bool projective = false;

  bool exact() const;
};

/// Incremental driver; the expansion it holds stays valid between steps.
class JpaExpander {
 public:
  explicit JpaExpander(std::vector<ExactReal> lambda, bool projective = false);

  /// Performs one step unless the expansion already ended.
  StepStatus advance();
  bool finished() const noexcept { return expansion_.termination != Termination::Running; }
  const JpaExpansion& expansion() const noexcept { return expansion_; }
  JpaExpansion take() && { return std::move(expansion_); }

 private:
  JpaExpansion expansion_;
};

/// Up to max_steps Jacobi-Perron steps on a positive vector (rank >= 2).
JpaExpansion jpa_expand(std::vector<ExactReal> lambda, std::size_t max_steps, bool projective = false);

struct Convergent {
  IntMatrix matrix;                  // B_1 ... B_k
  std::vector<Integer> last_column;  // matrix * (0,...,0,1)^T
};

/// Product of the first k digit matrices. Digit ranks must agree.
Convergent convergents(std::span<const DigitVector> digits, std::size_t k);

/// B_1 ... B_k * state, evaluated exactly.
std::vector<ExactReal> reconstruct(std::span<const DigitVector> digits, std::span<const ExactReal> state);

struct Period {
  std::size_t preperiod = 0;
  std::size_t period = 0;
  friend bool operator==(const Period&, const Period&) = default;
};

/// Key of the projective class of an exact state (entries divided by the
/// last one).
std::string projective_key(std::span<const ExactReal> state);

/// Least (p, l) with state p+l equal to state p projectively. None when the
/// expansion terminated or no state repeats. Throws InexactState on floats.
std::optional<Period> detect_period(const JpaExpansion& expansion);

struct PeriodSearch {
  JpaExpansion expansion;  // projective; stops at the first repeat
  std::optional<Period> period;
};

inline constexpr std::size_t kDefaultPeriodHorizon = 10'000;

/// Expands projectively until a state repeats or `horizon` states are seen.
PeriodSearch find_period(std::vector<ExactReal> lambda, std::size_t horizon = kDefaultPeriodHorizon);

/// Tracks B_1 ... B_k incrementally and measures how far its last column is
/// from a target direction.
class ConvergentTracker {
 public:
  explicit ConvergentTracker(std::size_t rank);

  void push(const DigitVector& digit);
  const IntMatrix& matrix() const noexcept { return product_; }
  std::size_t steps() const noexcept { return steps_; }

  /// Angle in radians between the last column and `target`. Exactly 0 when
  /// the target is exact and proportional to the column.
  double angle_to(std::span<const ExactReal> target) const;
  double angle_to(std::span<const double> target) const;

 private:
  IntMatrix product_;
  std::size_t steps_ = 0;
};

enum class Trend { Improving, Stalled };

struct DiagnosticOptions {
  double threshold = 1e-6;
  std::size_t tail = 3;  // trailing angles that must be non-increasing
};

struct ConvergenceReport {
  std::vector<double> angles;  // one per digit
  Trend decided = Trend::Stalled;
};

/// Numerical heuristic: the angle after each digit between the convergent
/// column and `target`. Improving when the final angle is below the
/// threshold and the tail does not increase.
ConvergenceReport convergence_diagnostic(std::span<const DigitVector> digits, std::span<const ExactReal> target,
                                         const DiagnosticOptions& options = {});
ConvergenceReport convergence_diagnostic(const JpaExpansion& expansion, std::span<const ExactReal> target,
                                         const DiagnosticOptions& options = {});

/// Decision rule shared by both overloads.
Trend classify_angles(std::span<const double> angles, const DiagnosticOptions& options);

}  // namespace toric_af
