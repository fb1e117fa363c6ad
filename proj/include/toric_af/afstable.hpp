#pragma once

#include <optional>
#include <span>
#include <stop_token>
#include <string>
#include <vector>

#include "toric_af/bratteli.hpp"
#include "toric_af/cfrac.hpp"
#include "toric_af/lattice.hpp"

namespace toric_af {

struct TailOffsets {
  std::size_t k = 0;
  std::size_t k_prime = 0;
  friend bool operator==(const TailOffsets&, const TailOffsets&) = default;
};

/// Least offsets, ordered by (k + k', k), with a[k+i] == b[k'+i] for the
/// first `horizon` digits (clipped to the shorter sequence). Offsets range
/// over positions that leave a full comparison window.
std::optional<TailOffsets> tail_equivalent(std::span<const DigitVector> a, std::span<const DigitVector> b,
                                           std::size_t horizon);

enum class Outcome { Isomorphic, Distinct, Unknown };

std::string to_string(Outcome o);

struct MatrixWitness {
  IntMatrix a;
  ExactReal scale;
};

struct StableIsoVerdict {
  Outcome outcome = Outcome::Unknown;
  /// Projective Jacobi-Perron states of the two sides agree after k and k'
  /// steps, so the diagrams agree after telescoping past those levels.
  std::optional<TailOffsets> tail;
  /// A^T (scale (1, theta)) generates the same subgroup of R as (1, theta').
  std::optional<MatrixWitness> matrix;
  /// Why the algebras differ, for Distinct.
  std::optional<std::string> invariant;
  std::string method;
};

struct StableIsoOptions {
  /// Jacobi-Perron steps searched on each side at rank > 2.
  std::size_t horizon = 200;
  /// States searched for a period at rank 2.
  std::size_t period_horizon = kDefaultPeriodHorizon;
  /// Scales c tried with module_equal(c (1, theta), (1, theta')). Defaults to
  /// the ratios of the generators of the two lifts.
  std::optional<std::vector<ExactReal>> scale_candidates;
  std::optional<MatrixWitness> witness;
  /// Total Jacobi-Perron steps allowed; 0 means no limit. Running out turns
  /// the search inconclusive.
  std::size_t step_budget = 0;
  std::stop_token stop;
};

/// Throws RankMismatch on different ranks, InexactInput on float thetas and
/// Cancelled when the stop token fires.
StableIsoVerdict stable_iso(const ProjectivePseudoLattice& a, const ProjectivePseudoLattice& b,
                            const StableIsoOptions& options = {});
StableIsoVerdict stable_iso(const ToricAfAlgebra& a, const ToricAfAlgebra& b, const StableIsoOptions& options = {});

/// scale > 0 and A^T (scale (1, theta)) spans the same subgroup of R as
/// (1, theta'). Positive scaling keeps the order, so module equality is the
/// whole check.
bool verify_witness(const ProjectivePseudoLattice& a, const ProjectivePseudoLattice& b, const BasisChange& A,
                    const ExactReal& scale);
bool verify_witness(const ToricAfAlgebra& a, const ToricAfAlgebra& b, const BasisChange& A, const ExactReal& scale);

/// Exact check of a tail witness: the projective states after k and k'
/// steps coincide.
bool verify_tail_witness(const ProjectivePseudoLattice& a, const ProjectivePseudoLattice& b, const TailOffsets& t);

/// Degree over Q of an exact value.
std::size_t element_degree(const ExactReal& x);

}  // namespace toric_af
