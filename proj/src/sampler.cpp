#include "toric_af/sampler.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <sstream>
#include <thread>

#include "toric_af/cfrac.hpp"
#include "toric_af/error.hpp"

namespace toric_af {

void AngleHistogram::add(double angle) {
  int bin = 0;
  if (angle > 0) {
    int e = static_cast<int>(std::floor(std::log10(angle)));
    bin = std::clamp(e - kLowestExponent, 0, kBins - 1);
  }
  ++counts[static_cast<std::size_t>(bin)];
}

void AngleHistogram::merge(const AngleHistogram& other) {
  for (std::size_t i = 0; i < counts.size(); ++i) counts[i] += other.counts[i];
}

TrialResult run_trial(std::span<const ExactReal> lambda, std::size_t steps, double tol) {
  TrialResult result;
  std::vector<ExactReal> start(lambda.begin(), lambda.end());
  std::vector<double> target;
  for (const auto& v : start) target.push_back(v.to_double());
  ConvergentTracker tracker(start.size());
  JpaExpander expander(std::move(start));
  result.final_angle = std::numbers::pi / 2;
  while (result.steps_used < steps && !expander.finished()) {
    StepStatus status = expander.advance();
    if (status == StepStatus::Indeterminate) {
      result.indeterminate = true;
      break;
    }
    if (status != StepStatus::Ok) break;
    tracker.push(expander.expansion().digits.back());
    ++result.steps_used;
    result.final_angle = tracker.angle_to(std::span<const ExactReal>(lambda));
    if (result.final_angle < tol) {
      result.converged = true;
      break;
    }
  }
  return result;
}

std::vector<ExactReal> sample_lambda(std::size_t rank, std::uint64_t seed, std::uint64_t trial) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(trial), static_cast<std::uint32_t>(trial >> 32)};
  std::mt19937_64 engine(seq);
  std::vector<ExactReal> lambda;
  while (lambda.size() < rank) {
    double u = static_cast<double>(engine() >> 11) * 0x1.0p-53;
    if (u > 0) lambda.push_back(ExactReal::approx(u));
  }
  return lambda;
}

GenericityReport sample_genericity(std::size_t rank, std::size_t trials, std::size_t steps, double tol,
                                   std::uint64_t seed, unsigned workers) {
  if (rank < 2) throw Error(ErrorKind::DomainError, "rank must be at least 2");
  if (trials < 1) throw Error(ErrorKind::DomainError, "need at least one trial");
  if (!(tol > 0)) throw Error(ErrorKind::DomainError, "tolerance must be positive");
  workers = std::max(1u, std::min<unsigned>(workers, static_cast<unsigned>(trials)));

  std::vector<TrialResult> results(trials);
  auto work = [&](unsigned w) {
    for (std::size_t t = w; t < trials; t += workers) {
      results[t] = run_trial(sample_lambda(rank, seed, t), steps, tol);
    }
  };
  if (workers == 1) {
    work(0);
  } else {
    std::vector<std::jthread> pool;
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(work, w);
  }

  GenericityReport report;
  report.rank = rank;
  report.trials = trials;
  report.steps = steps;
  report.tol = tol;
  report.seed = seed;
  for (const auto& r : results) {
    if (r.indeterminate) {
      ++report.indeterminate;
      continue;
    }
    report.histogram.add(r.final_angle);
    if (r.converged) {
      ++report.converged;
    } else if (r.steps_used > 0 && r.final_angle < 10 * tol) {
      ++report.near_misses;
    }
  }
  std::size_t decided = trials - report.indeterminate;
  report.rate = decided == 0 ? 0.0 : static_cast<double>(report.converged) / static_cast<double>(decided);
  return report;
}

std::string histogram_csv(const AngleHistogram& histogram) {
  std::ostringstream out;
  out << "log10_angle_below,count\n";
  for (int i = 0; i < AngleHistogram::kBins; ++i) {
    out << AngleHistogram::kLowestExponent + i + 1 << "," << histogram.counts[static_cast<std::size_t>(i)] << "\n";
  }
  return out.str();
}

}  // namespace toric_af
