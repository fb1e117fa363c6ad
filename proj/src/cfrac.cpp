#include "toric_af/cfrac.hpp"

#include <climits>
#include <cmath>
#include <numbers>
#include <string>
#include <unordered_map>

#include "toric_af/error.hpp"

namespace toric_af {

DigitVector::DigitVector(std::vector<Integer> entries) : entries_(std::move(entries)) {
  if (entries_.empty()) throw Error(ErrorKind::DomainError, "digit vector must have at least one entry");
  for (const auto& e : entries_)
    if (e < 0) throw Error(ErrorKind::DomainError, "digit entries must be non-negative");
}

DigitVector::DigitVector(std::initializer_list<long> entries)
    : DigitVector(std::vector<Integer>(entries.begin(), entries.end())) {}

IntMatrix jpa_matrix(const DigitVector& digit) {
  const std::size_t n = digit.rank();
  IntMatrix m(n, n);
  m(0, n - 1) = 1;
  for (std::size_t i = 1; i < n; ++i) {
    m(i, i - 1) = 1;
    m(i, n - 1) += digit[i - 1];
  }
  return m;
}

DigitVector digit_from_matrix(const IntMatrix& m) {
  const std::size_t n = m.rows();
  if (!m.square() || n < 2) throw Error(ErrorKind::DomainError, "JPA matrix must be square of size >= 2");
  std::vector<Integer> b(n - 1);
  for (std::size_t i = 1; i < n; ++i) b[i - 1] = m(i, n - 1);
  DigitVector digit(std::move(b));
  if (jpa_matrix(digit) != m) throw Error(ErrorKind::DomainError, "matrix does not have the Jacobi-Perron shape");
  return digit;
}

EuclidResult euclid(const Integer& a1, const Integer& a2) {
  if (a2 < 1 || a1 < a2) throw Error(ErrorKind::DomainError, "euclid requires a1 >= a2 >= 1");
  EuclidResult out;
  Integer r0 = a1;
  Integer r1 = a2;
  while (r1 != 0) {
    Integer q;
    Integer r;
    mpz_fdiv_qr(q.get_mpz_t(), r.get_mpz_t(), r0.get_mpz_t(), r1.get_mpz_t());
    out.quotients.push_back(q);
    r0 = std::move(r1);
    r1 = std::move(r);
  }
  out.gcd = r0;
  return out;
}

namespace {

bool is_zero(const ExactReal& x) {
  if (x.is_exact()) return sign(x) == 0;
  return x.approximation().value == 0.0 && x.approximation().radius == 0.0;
}

}  // namespace

RegularCf regular_cf(const ExactReal& x0, std::size_t max_terms) {
  RegularCf out;
  out.inexact = !x0.is_exact();
  if (x0.is_exact() ? sign(x0) <= 0 : x0.approximation().value <= 0)
    throw Error(ErrorKind::DomainError, "regular_cf requires x > 0");
  ExactReal x = x0;
  while (out.digits.size() < max_terms) {
    auto b = floor_if_determined(x);
    if (!b) return out;
    out.digits.push_back(*b);
    ExactReal r = x - ExactReal(Rational(*b));
    if (is_zero(r)) {
      out.terminated = true;
      return out;
    }
    if (!r.is_exact() && std::abs(r.approximation().value) <= r.approximation().radius) return out;
    x = ExactReal(1) / r;
  }
  return out;
}

JpaStepOutcome jpa_step(std::span<const ExactReal> lambda) {
  const std::size_t n = lambda.size();
  if (n < 2) throw Error(ErrorKind::DomainError, "Jacobi-Perron vectors need rank >= 2");
  bool exact = true;
  for (const auto& v : lambda) exact = exact && v.is_exact();
  const ExactReal& lead = lambda[0];

  if (exact) {
    int s = sign(lead);
    if (s < 0) throw Error(ErrorKind::DomainError, "leading entry must be positive");
    if (s == 0) return {StepStatus::RationalDependence, std::nullopt};
  } else {
    const auto a = lead.to_approx().approximation();
    if (a.value == 0.0 && a.radius == 0.0) return {StepStatus::RationalDependence, std::nullopt};
    if (a.value + a.radius < 0) throw Error(ErrorKind::DomainError, "leading entry must be positive");
    if (a.value - a.radius <= 0) return {StepStatus::Indeterminate, std::nullopt};
  }

  std::vector<Integer> b(n - 1);
  for (std::size_t i = 1; i < n; ++i) {
    if (exact) {
      b[i - 1] = floor_ratio(lambda[i], lead);
    } else {
      auto q = floor_if_determined(lambda[i] / lead);
      if (!q) return {StepStatus::Indeterminate, std::nullopt};
      b[i - 1] = *q;
    }
    if (b[i - 1] < 0) {
      if (!exact) return {StepStatus::Indeterminate, std::nullopt};
      throw Error(ErrorKind::DomainError, "entries must be non-negative");
    }
  }
  std::vector<ExactReal> next;
  next.reserve(n);
  for (std::size_t i = 1; i < n; ++i) next.push_back(lambda[i] - ExactReal(Rational(b[i - 1])) * lead);
  next.push_back(lead);
  return {StepStatus::Ok, JpaStep{DigitVector(std::move(b)), std::move(next)}};
}

bool JpaExpansion::exact() const {
  for (const auto& s : states)
    for (const auto& v : s)
      if (!v.is_exact()) return false;
  return true;
}

JpaExpander::JpaExpander(std::vector<ExactReal> lambda, bool projective) {
  if (lambda.size() < 2) throw Error(ErrorKind::DomainError, "Jacobi-Perron vectors need rank >= 2");
  for (const auto& v : lambda) {
    bool positive = v.is_exact() ? sign(v) > 0 : v.approximation().value > 0;
    if (!positive) throw Error(ErrorKind::DomainError, "initial vector must have positive entries");
  }
  expansion_.rank = lambda.size();
  expansion_.projective = projective;
  expansion_.states.push_back(std::move(lambda));
}

StepStatus JpaExpander::advance() {
  switch (expansion_.termination) {
    case Termination::Running: break;
    case Termination::Indeterminate: return StepStatus::Indeterminate;
    default: return StepStatus::RationalDependence;
  }
  JpaStepOutcome outcome = jpa_step(expansion_.states.back());
  if (outcome.status == StepStatus::RationalDependence) {
    expansion_.termination = Termination::RationalDependence;
    return outcome.status;
  }
  if (outcome.status == StepStatus::Indeterminate) {
    expansion_.termination = Termination::Indeterminate;
    return outcome.status;
  }
  JpaStep& step = *outcome.step;
  if (expansion_.projective) {
    const ExactReal last = step.next.back();
    for (auto& v : step.next) v = v / last;
  }
  expansion_.digits.push_back(std::move(step.digit));
  expansion_.states.push_back(std::move(step.next));
  if (is_zero(expansion_.states.back().front())) expansion_.termination = Termination::RationalDependence;
  return StepStatus::Ok;
}

JpaExpansion jpa_expand(std::vector<ExactReal> lambda, std::size_t max_steps, bool projective) {
  JpaExpander expander(std::move(lambda), projective);
  for (std::size_t k = 0; k < max_steps && !expander.finished(); ++k) expander.advance();
  JpaExpansion out = std::move(expander).take();
  if (out.termination == Termination::Running) out.termination = Termination::Truncated;
  return out;
}

Convergent convergents(std::span<const DigitVector> digits, std::size_t k) {
  if (k > digits.size()) throw Error(ErrorKind::DomainError, "convergent index out of range");
  if (digits.empty()) throw Error(ErrorKind::DomainError, "rank unknown for an empty digit list");
  ConvergentTracker tracker(digits.front().rank());
  for (std::size_t i = 0; i < k; ++i) tracker.push(digits[i]);
  Convergent out{tracker.matrix(), {}};
  out.last_column = out.matrix.column(out.matrix.cols() - 1);
  return out;
}

std::vector<ExactReal> reconstruct(std::span<const DigitVector> digits, std::span<const ExactReal> state) {
  const std::size_t n = state.size();
  std::vector<ExactReal> v(state.begin(), state.end());
  for (std::size_t j = digits.size(); j-- > 0;) {
    const DigitVector& b = digits[j];
    if (b.rank() != n) throw Error(ErrorKind::RankMismatch, "digit rank does not match state rank");
    std::vector<ExactReal> w(n);
    w[0] = v[n - 1];
    for (std::size_t i = 1; i < n; ++i) w[i] = v[i - 1] + ExactReal(Rational(b[i - 1])) * v[n - 1];
    v = std::move(w);
  }
  return v;
}

std::string projective_key(std::span<const ExactReal> state) {
  const ExactReal& last = state.back();
  bool normalized = last.is_rational() && last.rational() == 1;
  std::string key;
  for (std::size_t i = 0; i + 1 < state.size(); ++i) {
    key += exact_key(normalized ? state[i] : state[i] / last);
    key += ';';
  }
  return key;
}

std::optional<Period> detect_period(const JpaExpansion& expansion) {
  if (!expansion.exact()) throw Error(ErrorKind::InexactState, "period detection needs exact remainder states");
  if (expansion.termination == Termination::RationalDependence) return std::nullopt;
  std::unordered_map<std::string, std::size_t> seen;
  for (std::size_t k = 0; k < expansion.states.size(); ++k) {
    auto [it, inserted] = seen.emplace(projective_key(expansion.states[k]), k);
    if (!inserted) return Period{it->second, k - it->second};
  }
  return std::nullopt;
}

PeriodSearch find_period(std::vector<ExactReal> lambda, std::size_t horizon) {
  JpaExpander expander(std::move(lambda), true);
  if (!expander.expansion().exact()) throw Error(ErrorKind::InexactState, "period detection needs exact input");
  std::unordered_map<std::string, std::size_t> seen;
  std::optional<Period> period;
  for (;;) {
    const auto& states = expander.expansion().states;
    const std::size_t k = states.size() - 1;
    auto [it, inserted] = seen.emplace(projective_key(states.back()), k);
    if (!inserted) {
      period = Period{it->second, k - it->second};
      break;
    }
    if (states.size() >= horizon || expander.finished()) break;
    expander.advance();
  }
  PeriodSearch out{std::move(expander).take(), period};
  if (out.expansion.termination == Termination::Running) out.expansion.termination = Termination::Truncated;
  return out;
}

ConvergentTracker::ConvergentTracker(std::size_t rank) : product_(IntMatrix::identity(rank)) {
  if (rank < 2) throw Error(ErrorKind::DomainError, "rank must be >= 2");
}

void ConvergentTracker::push(const DigitVector& digit) {
  const std::size_t n = product_.rows();
  if (digit.rank() != n) throw Error(ErrorKind::RankMismatch, "digit rank does not match convergent rank");
  // P * B: column j <- column j+1 for j < n-1; last <- col 0 + sum b_i col i.
  for (std::size_t r = 0; r < n; ++r) {
    Integer last = product_(r, 0);
    for (std::size_t i = 1; i < n; ++i) last += digit[i - 1] * product_(r, i);
    for (std::size_t j = 0; j + 1 < n; ++j) product_(r, j) = product_(r, j + 1);
    product_(r, n - 1) = std::move(last);
  }
  ++steps_;
}

namespace {

std::vector<double> column_direction(const IntMatrix& p) {
  const std::size_t n = p.rows();
  const std::size_t c = p.cols() - 1;
  long max_exp = LONG_MIN;
  std::vector<std::pair<double, long>> parts(n);
  for (std::size_t r = 0; r < n; ++r) {
    long e = 0;
    double d = mpz_get_d_2exp(&e, p(r, c).get_mpz_t());
    parts[r] = {d, e};
    if (d != 0.0) max_exp = std::max(max_exp, e);
  }
  std::vector<double> out(n, 0.0);
  for (std::size_t r = 0; r < n; ++r)
    if (parts[r].first != 0.0) out[r] = std::ldexp(parts[r].first, static_cast<int>(parts[r].second - max_exp));
  return out;
}

double angle_between(std::span<const double> u, std::span<const double> v) {
  double nu = 0.0;
  double nv = 0.0;
  for (std::size_t i = 0; i < u.size(); ++i) {
    nu += u[i] * u[i];
    nv += v[i] * v[i];
  }
  nu = std::sqrt(nu);
  nv = std::sqrt(nv);
  if (nu == 0.0 || nv == 0.0) return std::numbers::pi;
  double diff = 0.0;
  double sum = 0.0;
  for (std::size_t i = 0; i < u.size(); ++i) {
    double a = u[i] / nu;
    double b = v[i] / nv;
    diff += (a - b) * (a - b);
    sum += (a + b) * (a + b);
  }
  return 2.0 * std::atan2(std::sqrt(diff), std::sqrt(sum));
}

}  // namespace

double ConvergentTracker::angle_to(std::span<const double> target) const {
  if (target.size() != product_.rows()) throw Error(ErrorKind::RankMismatch, "target rank mismatch");
  return angle_between(column_direction(product_), target);
}

double ConvergentTracker::angle_to(std::span<const ExactReal> target) const {
  if (target.size() != product_.rows()) throw Error(ErrorKind::RankMismatch, "target rank mismatch");
  std::vector<double> t;
  bool exact = true;
  for (const auto& v : target) {
    t.push_back(v.to_double());
    exact = exact && v.is_exact();
  }
  double angle = angle_to(std::span<const double>(t));
  if (!exact || angle > 1e-9) return angle;
  const std::size_t c = product_.cols() - 1;
  std::size_t j = 0;
  while (j < product_.rows() && product_(j, c) == 0) ++j;
  if (j == product_.rows()) return angle;
  ExactReal ratio = target[j] / ExactReal(Rational(product_(j, c)));
  if (sign(ratio) <= 0) return angle;
  for (std::size_t i = 0; i < product_.rows(); ++i)
    if (!(target[i] == ratio * ExactReal(Rational(product_(i, c))))) return angle;
  return 0.0;
}

Trend classify_angles(std::span<const double> angles, const DiagnosticOptions& options) {
  if (angles.empty()) return Trend::Stalled;
  if (angles.back() == 0.0) return Trend::Improving;
  if (!(angles.back() < options.threshold)) return Trend::Stalled;
  std::size_t tail = std::min(options.tail, angles.size());
  for (std::size_t i = angles.size() - tail + 1; i < angles.size(); ++i)
    if (angles[i] > angles[i - 1]) return Trend::Stalled;
  return Trend::Improving;
}

ConvergenceReport convergence_diagnostic(std::span<const DigitVector> digits, std::span<const ExactReal> target,
                                         const DiagnosticOptions& options) {
  ConvergenceReport report;
  if (digits.empty()) return report;
  ConvergentTracker tracker(digits.front().rank());
  for (const auto& d : digits) {
    tracker.push(d);
    report.angles.push_back(tracker.angle_to(target));
  }
  report.decided = classify_angles(report.angles, options);
  return report;
}

ConvergenceReport convergence_diagnostic(const JpaExpansion& expansion, std::span<const ExactReal> target,
                                         const DiagnosticOptions& options) {
  return convergence_diagnostic(std::span<const DigitVector>(expansion.digits), target, options);
}

}  // namespace toric_af
