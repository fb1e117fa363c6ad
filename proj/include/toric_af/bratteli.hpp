#pragma once

#include <span>
#include <string>
#include <vector>

#include "toric_af/cfrac.hpp"
#include "toric_af/int_matrix.hpp"
#include "toric_af/lattice.hpp"

namespace toric_af {

/// A Bratteli diagram with one root vertex joined by single edges to each of
/// the n vertices of level 1, followed by levels of n vertices. Entry (r, c)
/// of matrices()[k-1] counts the edges from vertex r at level k to vertex c
/// at level k+1, so level dimensions evolve as d^(k+1) = M_k^T d^(k).
class BratteliDiagram {
 public:
  /// Root only.
  explicit BratteliDiagram(std::size_t rank);
  /// Throws DomainError on negative entries, size mismatches, or a vertex
  /// with no incoming or no outgoing edges.
  BratteliDiagram(std::size_t rank, std::vector<IntMatrix> matrices);
  /// As above with explicit level labels (strictly increasing, one per level).
  BratteliDiagram(std::size_t rank, std::vector<IntMatrix> matrices, std::vector<std::size_t> labels);

  std::size_t rank() const noexcept { return rank_; }
  /// Number of levels below the root.
  std::size_t depth() const noexcept { return depth_; }
  const std::vector<IntMatrix>& matrices() const noexcept { return matrices_; }
  /// Level numbers in the diagram this one was telescoped from (1, 2, ... for
  /// an untelescoped diagram).
  const std::vector<std::size_t>& labels() const noexcept { return labels_; }

  friend bool operator==(const BratteliDiagram& a, const BratteliDiagram& b) {
    return a.rank_ == b.rank_ && a.depth_ == b.depth_ && a.matrices_ == b.matrices_;
  }

 private:
  std::size_t rank_;
  std::size_t depth_ = 0;
  std::vector<IntMatrix> matrices_;
  std::vector<std::size_t> labels_;
};

/// Diagram with `depth` levels whose k-th matrix is jpa_matrix(digits[k-1]).
/// Needs depth <= digits.size() + 1 and digits of one length.
BratteliDiagram build_toric_af(std::span<const DigitVector> digits, std::size_t depth);

/// Reads the digits back from the level matrices.
std::vector<DigitVector> diagram_digits(const BratteliDiagram& diagram);

/// [(1)] for the root-only diagram, else d^(1) = (1, ..., 1) through d^(depth).
std::vector<std::vector<Integer>> level_dimensions(const BratteliDiagram& diagram);

/// Keeps level 1 and the listed levels (strictly increasing, within
/// 1..depth); consecutive matrices between kept levels are multiplied.
BratteliDiagram telescope(const BratteliDiagram& diagram, std::span<const std::size_t> cuts);

/// x_1 + x_2 theta_1 + ... + x_n theta_{n-1}.
ExactReal k0_state(const ProjectivePseudoLattice& theta, std::span<const Integer> x);

/// State of the class x sitting at `level` of the diagram (1-based). Level 1
/// carries (1, theta); deeper levels pull it back through the unimodular
/// product of the matrices above them.
ExactReal level_state(const ProjectivePseudoLattice& theta, const BratteliDiagram& diagram, std::size_t level,
                      std::span<const Integer> x);

struct ToricAfAlgebra {
  ProjectivePseudoLattice theta;
  std::vector<DigitVector> digits;
  Termination termination = Termination::Running;
  BratteliDiagram diagram;
};

/// Expands (1, theta) and builds the diagram to `depth` levels, or fewer if
/// the expansion ends first.
ToricAfAlgebra make_toric_af(const ProjectivePseudoLattice& theta, std::size_t depth);

/// Graphviz rendering; edges with multiplicity > 1 are labelled.
std::string to_dot(const BratteliDiagram& diagram);

}  // namespace toric_af
