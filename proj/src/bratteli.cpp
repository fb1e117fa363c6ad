#include "toric_af/bratteli.hpp"

#include <sstream>

#include "toric_af/error.hpp"

namespace toric_af {

BratteliDiagram::BratteliDiagram(std::size_t rank) : rank_(rank) {
  if (rank < 1) throw Error(ErrorKind::DomainError, "diagram rank must be positive");
}

BratteliDiagram::BratteliDiagram(std::size_t rank, std::vector<IntMatrix> matrices)
    : rank_(rank), depth_(matrices.size() + 1), matrices_(std::move(matrices)) {
  if (rank < 1) throw Error(ErrorKind::DomainError, "diagram rank must be positive");
  for (std::size_t k = 0; k < matrices_.size(); ++k) {
    const IntMatrix& m = matrices_[k];
    std::string where = "level matrix " + std::to_string(k + 1);
    if (m.rows() != rank || m.cols() != rank) throw Error(ErrorKind::DomainError, where + " has the wrong size");
    if (!m.is_nonnegative()) throw Error(ErrorKind::DomainError, where + " has a negative entry");
    for (std::size_t i = 0; i < rank; ++i) {
      bool out = false;
      bool in = false;
      for (std::size_t j = 0; j < rank; ++j) {
        out = out || m(i, j) != 0;
        in = in || m(j, i) != 0;
      }
      if (!out || !in) throw Error(ErrorKind::DomainError, where + " leaves vertex " + std::to_string(i + 1) + " dead");
    }
  }
  for (std::size_t k = 1; k <= depth_; ++k) labels_.push_back(k);
}

BratteliDiagram::BratteliDiagram(std::size_t rank, std::vector<IntMatrix> matrices, std::vector<std::size_t> labels)
    : BratteliDiagram(rank, std::move(matrices)) {
  if (labels.size() != depth_) throw Error(ErrorKind::DomainError, "need one label per level");
  for (std::size_t i = 1; i < labels.size(); ++i) {
    if (labels[i] <= labels[i - 1]) throw Error(ErrorKind::DomainError, "level labels must increase");
  }
  labels_ = std::move(labels);
}

BratteliDiagram build_toric_af(std::span<const DigitVector> digits, std::size_t depth) {
  if (digits.empty()) throw Error(ErrorKind::DomainError, "need at least one digit to fix the rank");
  const std::size_t rank = digits.front().rank();
  for (const auto& d : digits) {
    if (d.rank() != rank) throw Error(ErrorKind::DomainError, "inconsistent digit lengths");
  }
  if (depth > digits.size() + 1) {
    throw Error(ErrorKind::DomainError, "depth " + std::to_string(depth) + " needs " + std::to_string(depth - 1) +
                                            " digits, have " + std::to_string(digits.size()));
  }
  if (depth == 0) return BratteliDiagram(rank);
  std::vector<IntMatrix> matrices;
  for (std::size_t k = 0; k + 1 < depth; ++k) matrices.push_back(jpa_matrix(digits[k]));
  return BratteliDiagram(rank, std::move(matrices));
}

std::vector<DigitVector> diagram_digits(const BratteliDiagram& diagram) {
  std::vector<DigitVector> out;
  for (const auto& m : diagram.matrices()) out.push_back(digit_from_matrix(m));
  return out;
}

std::vector<std::vector<Integer>> level_dimensions(const BratteliDiagram& diagram) {
  if (diagram.depth() == 0) return {{Integer(1)}};
  std::vector<std::vector<Integer>> out{std::vector<Integer>(diagram.rank(), Integer(1))};
  for (const auto& m : diagram.matrices()) {
    IntMatrix t = m.transpose();
    out.push_back(t.apply(out.back()));
  }
  return out;
}

BratteliDiagram telescope(const BratteliDiagram& diagram, std::span<const std::size_t> cuts) {
  std::size_t previous = 1;
  for (std::size_t i = 0; i < cuts.size(); ++i) {
    if (cuts[i] < 1 || cuts[i] > diagram.depth()) {
      throw Error(ErrorKind::DomainError, "cut " + std::to_string(cuts[i]) + " is outside 1.." +
                                              std::to_string(diagram.depth()));
    }
    if (i > 0 && cuts[i] <= cuts[i - 1]) throw Error(ErrorKind::DomainError, "cuts must be strictly increasing");
  }
  if (diagram.depth() == 0) return diagram;

  std::vector<IntMatrix> matrices;
  std::vector<std::size_t> labels{diagram.labels().front()};
  for (std::size_t cut : cuts) {
    if (cut == 1) continue;
    IntMatrix product = IntMatrix::identity(diagram.rank());
    for (std::size_t k = previous; k < cut; ++k) product = product * diagram.matrices()[k - 1];
    matrices.push_back(std::move(product));
    labels.push_back(diagram.labels()[cut - 1]);
    previous = cut;
  }
  return BratteliDiagram(diagram.rank(), std::move(matrices), std::move(labels));
}

ExactReal k0_state(const ProjectivePseudoLattice& theta, std::span<const Integer> x) {
  if (x.size() != theta.rank()) throw Error(ErrorKind::RankMismatch, "class length does not match the rank");
  ExactReal value{Rational(x[0])};
  for (std::size_t i = 1; i < x.size(); ++i) {
    if (x[i] != 0) value = value + ExactReal(Rational(x[i])) * theta.thetas()[i - 1];
  }
  return value;
}

ExactReal level_state(const ProjectivePseudoLattice& theta, const BratteliDiagram& diagram, std::size_t level,
                      std::span<const Integer> x) {
  if (diagram.rank() != theta.rank()) throw Error(ErrorKind::RankMismatch, "diagram and theta ranks differ");
  if (level < 1 || level > diagram.depth()) throw Error(ErrorKind::DomainError, "level outside the diagram");
  IntMatrix p = IntMatrix::identity(diagram.rank());
  for (std::size_t k = 1; k < level; ++k) p = p * diagram.matrices()[k - 1];
  // The state vector at this level is P^{-1} (1, theta); pair it with x.
  IntMatrix pulled = p.unimodular_inverse().transpose();
  return k0_state(theta, pulled.apply(x));
}

ToricAfAlgebra make_toric_af(const ProjectivePseudoLattice& theta, std::size_t depth) {
  std::size_t steps = depth == 0 ? 0 : depth - 1;
  JpaExpansion e = jpa_expand(theta.representative(), steps);
  if (e.termination == Termination::Indeterminate) {
    throw Error(ErrorKind::InexactState, "float theta cannot resolve the digits to the requested depth");
  }
  std::size_t usable = std::min(depth, e.digits.size() + 1);
  BratteliDiagram diagram = e.digits.empty() ? (usable == 0 ? BratteliDiagram(theta.rank())
                                                            : BratteliDiagram(theta.rank(), {}))
                                             : build_toric_af(e.digits, usable);
  return {theta, std::move(e.digits), e.termination, std::move(diagram)};
}

std::string to_dot(const BratteliDiagram& diagram) {
  std::ostringstream out;
  const std::size_t n = diagram.rank();
  out << "digraph bratteli {\n  rankdir=TB;\n  root [label=\"\", shape=point];\n";
  for (std::size_t k = 1; k <= diagram.depth(); ++k) {
    out << "  { rank=same;";
    for (std::size_t i = 1; i <= n; ++i) out << " v" << k << "_" << i << ";";
    out << " }\n";
    for (std::size_t i = 1; i <= n; ++i) out << "  v" << k << "_" << i << " [label=\"\", shape=circle, width=0.15];\n";
  }
  if (diagram.depth() > 0) {
    for (std::size_t i = 1; i <= n; ++i) out << "  root -> v1_" << i << ";\n";
  }
  for (std::size_t k = 1; k < diagram.depth(); ++k) {
    const IntMatrix& m = diagram.matrices()[k - 1];
    for (std::size_t r = 0; r < n; ++r) {
      for (std::size_t c = 0; c < n; ++c) {
        if (m(r, c) == 0) continue;
        out << "  v" << k << "_" << r + 1 << " -> v" << k + 1 << "_" << c + 1;
        if (m(r, c) != 1) out << " [label=\"" << m(r, c).get_str() << "\"]";
        out << ";\n";
      }
    }
  }
  out << "}\n";
  return out.str();
}

}  // namespace toric_af
