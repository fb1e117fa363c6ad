#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "toric_af/exact.hpp"

namespace toric_af {

/// Final angles binned by decade: bin i counts angles in
/// [10^(lowest + i), 10^(lowest + i + 1)); the first bin also takes smaller
/// angles, including exact zeros.
struct AngleHistogram {
  static constexpr int kLowestExponent = -17;
  static constexpr int kBins = 18;  // up to 10^1, above pi / 2
  std::vector<std::uint64_t> counts = std::vector<std::uint64_t>(kBins, 0);

  void add(double angle);
  void merge(const AngleHistogram& other);
  friend bool operator==(const AngleHistogram&, const AngleHistogram&) = default;
};

struct TrialResult {
  bool converged = false;
  /// A float floor straddled an integer before the angle met the tolerance.
  bool indeterminate = false;
  double final_angle = 0.0;  // angle at the last convergent examined
  std::size_t steps_used = 0;
};

/// Runs Jacobi-Perron steps on `lambda` until the angle between the newest
/// convergent column and lambda drops below `tol`, the expansion ends, or
/// `steps` digits have been produced.
TrialResult run_trial(std::span<const ExactReal> lambda, std::size_t steps, double tol);

struct GenericityReport {
  std::size_t rank = 0;
  std::size_t trials = 0;
  std::size_t steps = 0;
  double tol = 0.0;
  std::uint64_t seed = 0;
  std::size_t converged = 0;
  std::size_t indeterminate = 0;
  /// Not converged, final angle within 10 * tol.
  std::size_t near_misses = 0;
  /// converged / (trials - indeterminate); 0 when every trial is indeterminate.
  double rate = 0.0;
  AngleHistogram histogram;

  friend bool operator==(const GenericityReport&, const GenericityReport&) = default;
};

/// Uniform samples from (0,1)^n in the float tier. Trial t draws from its own
/// generator seeded by (seed, t), so the report does not depend on
/// `workers`.
GenericityReport sample_genericity(std::size_t rank, std::size_t trials, std::size_t steps, double tol,
                                   std::uint64_t seed, unsigned workers = 1);

/// The lambda drawn for trial `trial`.
std::vector<ExactReal> sample_lambda(std::size_t rank, std::uint64_t seed, std::uint64_t trial);

/// "upper_exponent,count" rows; the header is "log10_angle_below,count".
std::string histogram_csv(const AngleHistogram& histogram);

}  // namespace toric_af
