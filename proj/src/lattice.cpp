#include "toric_af/lattice.hpp"

#include "toric_af/error.hpp"
#include "toric_af/hnf.hpp"

namespace toric_af {

namespace {

bool certainly_positive(const ExactReal& x) {
  if (x.is_exact()) return sign(x) > 0;
  const auto& a = x.approximation();
  return a.value - a.radius > 0;
}

Integer lcm(const Integer& a, const Integer& b) {
  Integer out;
  mpz_lcm(out.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return out;
}

}  // namespace

std::size_t rank_for_genus(long genus) {
  if (genus == 1) return 2;
  if (genus >= 2) return static_cast<std::size_t>(6 * genus - 6);
  throw Error(ErrorKind::DomainError, "genus must be at least 1");
}

PseudoLattice make_pseudolattice(std::vector<ExactReal> lambdas, std::optional<long> genus) {
  if (lambdas.size() < 2) throw Error(ErrorKind::DomainError, "pseudo-lattice needs rank >= 2");
  for (const auto& l : lambdas) {
    if (!certainly_positive(l)) throw Error(ErrorKind::DomainError, "pseudo-lattice entries must be positive");
  }
  if (genus && rank_for_genus(*genus) != lambdas.size()) {
    throw Error(ErrorKind::DomainError, "rank " + std::to_string(lambdas.size()) + " does not match genus " +
                                            std::to_string(*genus));
  }
  PseudoLattice pl;
  pl.lambdas_ = std::move(lambdas);
  pl.genus_ = genus;
  return pl;
}

ProjectivePseudoLattice::ProjectivePseudoLattice(std::vector<ExactReal> thetas) : thetas_(std::move(thetas)) {
  if (thetas_.empty()) throw Error(ErrorKind::DomainError, "projective pseudo-lattice needs rank >= 2");
  for (const auto& t : thetas_) {
    if (!certainly_positive(t)) throw Error(ErrorKind::DomainError, "theta entries must be positive");
  }
}

std::vector<ExactReal> ProjectivePseudoLattice::representative() const {
  std::vector<ExactReal> out{ExactReal(1)};
  out.insert(out.end(), thetas_.begin(), thetas_.end());
  return out;
}

BasisChange::BasisChange(IntMatrix a) : a_(std::move(a)) {
  if (!a_.is_unimodular()) throw Error(ErrorKind::NotUnimodular, "basis change must have determinant +-1");
}

std::vector<ExactReal> apply_columns(const IntMatrix& a, std::span<const ExactReal> lambda) {
  if (!a.square() || a.rows() != lambda.size()) throw Error(ErrorKind::RankMismatch, "matrix size does not match rank");
  std::vector<ExactReal> out(lambda.size());
  for (std::size_t j = 0; j < lambda.size(); ++j) {
    ExactReal sum(0);
    for (std::size_t i = 0; i < lambda.size(); ++i) {
      if (a(i, j) != 0) sum = sum + ExactReal(Rational(a(i, j))) * lambda[i];
    }
    out[j] = std::move(sum);
  }
  return out;
}

PseudoLattice basis_change(const PseudoLattice& pl, const BasisChange& a) {
  auto image = apply_columns(a.matrix(), pl.lambdas());
  for (const auto& l : image) {
    if (!certainly_positive(l)) throw Error(ErrorKind::LeftCone, "basis change leaves the positive cone");
  }
  return make_pseudolattice(std::move(image), pl.genus());
}

Projectivized projectivize(const PseudoLattice& pl) {
  const ExactReal& scale = pl[0];
  std::vector<ExactReal> thetas;
  for (std::size_t i = 1; i < pl.rank(); ++i) thetas.push_back(pl[i] / scale);
  return {ProjectivePseudoLattice(std::move(thetas)), scale};
}

PseudoLattice lift(const ProjectivePseudoLattice& ppl, const ExactReal& scale) {
  if (!certainly_positive(scale)) throw Error(ErrorKind::DomainError, "scale must be positive");
  std::vector<ExactReal> lambdas{scale};
  for (const auto& t : ppl.thetas()) lambdas.push_back(scale * t);
  return make_pseudolattice(std::move(lambdas));
}

IntMatrix ModuleCoords::integer_rows(const Integer& scale) const {
  if (scale % denominator != 0) throw Error(ErrorKind::DomainError, "scale must be a multiple of the denominator");
  std::size_t cols = rows.empty() ? 0 : rows.front().size();
  IntMatrix m(rows.size(), cols);
  for (std::size_t r = 0; r < rows.size(); ++r) {
    for (std::size_t c = 0; c < cols; ++c) {
      Rational v = rows[r][c] * Rational(scale);
      m(r, c) = v.get_num();
    }
  }
  return m;
}

ModuleCoords module_coords(std::span<const ExactReal> values, FieldPtr context) {
  for (const auto& v : values) {
    if (!v.is_exact()) throw Error(ErrorKind::InexactInput, "module coordinates need exact values");
  }
  std::vector<ExactReal> copy(values.begin(), values.end());
  FieldPtr own = common_context(copy);
  if (own && context && !own->same_field(*context)) throw Error(ErrorKind::MixedContext, "values live in different fields");
  if (!context) context = own;
  ModuleCoords out;
  out.context = context;
  std::size_t degree = context ? context->degree() : 1;
  for (const auto& v : values) {
    auto row = v.coordinates(degree);
    for (const auto& q : row) out.denominator = lcm(out.denominator, q.get_den());
    out.rows.push_back(std::move(row));
  }
  return out;
}

ModuleCoords module_coords(const PseudoLattice& pl) { return module_coords(pl.lambdas()); }

bool module_equal(std::span<const ExactReal> a, std::span<const ExactReal> b) {
  std::vector<ExactReal> all(a.begin(), a.end());
  all.insert(all.end(), b.begin(), b.end());
  for (const auto& v : all) {
    if (!v.is_exact()) throw Error(ErrorKind::InexactInput, "module equality needs exact values");
  }
  FieldPtr context = common_context(all);
  ModuleCoords ca = module_coords(a, context);
  ModuleCoords cb = module_coords(b, context);
  Integer scale = lcm(ca.denominator, cb.denominator);
  return same_row_lattice(ca.integer_rows(scale), cb.integer_rows(scale));
}

bool module_equal(const PseudoLattice& a, const PseudoLattice& b) { return module_equal(a.lambdas(), b.lambdas()); }

std::size_t module_rank(std::span<const ExactReal> values) {
  return lattice_rank(module_coords(values).integer_rows());
}

}  // namespace toric_af
