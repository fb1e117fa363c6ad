#pragma once

#include <optional>
#include <span>
#include <vector>

#include "toric_af/exact.hpp"
#include "toric_af/int_matrix.hpp"

namespace toric_af {

/// Positive real vector (lambda_1, ..., lambda_n) standing for the subgroup
/// Z lambda_1 + ... + Z lambda_n of R with its ordered basis.
class PseudoLattice {
 public:
  std::size_t rank() const noexcept { return lambdas_.size(); }
  const std::vector<ExactReal>& lambdas() const noexcept { return lambdas_; }
  const ExactReal& operator[](std::size_t i) const { return lambdas_[i]; }
  const std::optional<long>& genus() const noexcept { return genus_; }

  friend bool operator==(const PseudoLattice& a, const PseudoLattice& b) { return a.lambdas_ == b.lambdas_; }

 private:
  friend PseudoLattice make_pseudolattice(std::vector<ExactReal>, std::optional<long>);
  std::vector<ExactReal> lambdas_;
  std::optional<long> genus_;
};

/// Rank for a surface of genus g: 2 for g = 1, 6g - 6 for g >= 2.
std::size_t rank_for_genus(long genus);

/// Throws DomainError on a non-positive entry, rank < 2, or a genus that
/// does not match the rank.
PseudoLattice make_pseudolattice(std::vector<ExactReal> lambdas, std::optional<long> genus = std::nullopt);

/// (1, theta_1, ..., theta_{n-1}); only the thetas are stored.
class ProjectivePseudoLattice {
 public:
  explicit ProjectivePseudoLattice(std::vector<ExactReal> thetas);
  std::size_t rank() const noexcept { return thetas_.size() + 1; }
  const std::vector<ExactReal>& thetas() const noexcept { return thetas_; }
  /// (1, theta_1, ...)
  std::vector<ExactReal> representative() const;

  friend bool operator==(const ProjectivePseudoLattice&, const ProjectivePseudoLattice&) = default;

 private:
  std::vector<ExactReal> thetas_;
};

/// An element of GL_n(Z).
class BasisChange {
 public:
  /// Throws NotUnimodular unless square with determinant +-1.
  explicit BasisChange(IntMatrix a);
  const IntMatrix& matrix() const noexcept { return a_; }
  std::size_t size() const noexcept { return a_.rows(); }

 private:
  IntMatrix a_;
};

/// lambda'_j = sum_i a_ij lambda_i. Throws RankMismatch on a size mismatch
/// and LeftCone if some lambda'_j is not positive.
PseudoLattice basis_change(const PseudoLattice& pl, const BasisChange& a);

/// The same action on a bare vector, with no positivity requirement.
std::vector<ExactReal> apply_columns(const IntMatrix& a, std::span<const ExactReal> lambda);

struct Projectivized {
  ProjectivePseudoLattice ppl;
  ExactReal scale;
};

Projectivized projectivize(const PseudoLattice& pl);
/// (scale, scale theta_1, ...); DomainError unless scale > 0.
PseudoLattice lift(const ProjectivePseudoLattice& ppl, const ExactReal& scale);

/// Power-basis coordinates of each lambda. Rows are exact; multiplying by
/// `denominator` makes every entry integral.
struct ModuleCoords {
  FieldPtr context;  // null when every lambda is rational
  std::vector<std::vector<Rational>> rows;
  Integer denominator{1};

  /// rows * scale as an integer matrix; scale must be a multiple of denominator.
  IntMatrix integer_rows(const Integer& scale) const;
  IntMatrix integer_rows() const { return integer_rows(denominator); }
};

/// Coordinates of exact values sharing one field. Throws InexactInput on
/// floats and MixedContext across fields. A non-null `context` forces that
/// basis (rational entries are embedded).
ModuleCoords module_coords(std::span<const ExactReal> values, FieldPtr context = nullptr);
ModuleCoords module_coords(const PseudoLattice& pl);

/// Whether the Z-spans agree as subsets of R.
bool module_equal(std::span<const ExactReal> a, std::span<const ExactReal> b);
bool module_equal(const PseudoLattice& a, const PseudoLattice& b);

/// Rank of the Z-span as an abelian group.
std::size_t module_rank(std::span<const ExactReal> values);

}  // namespace toric_af
