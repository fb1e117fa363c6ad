#include "doctest.h"
#include "oracles.hpp"
#include "toric_af/error.hpp"
#include "toric_af/hnf.hpp"
#include "toric_af/lattice.hpp"

using namespace toric_af;
using namespace toric_af::testing;

namespace {

ErrorKind kind_of(auto&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  FAIL("no error raised");
  return ErrorKind::DomainError;
}

IntMatrix random_matrix(Rng& rng, std::size_t rows, std::size_t cols, long bound) {
  IntMatrix m(rows, cols);
  for (std::size_t r = 0; r < rows; ++r)
    for (std::size_t c = 0; c < cols; ++c) m(r, c) = rng.uniform(-bound, bound);
  return m;
}

}  // namespace

TEST_CASE("make_pseudolattice") {
  auto pl = make_pseudolattice({ExactReal(1), sqrt_of(2)}, 1);
  CHECK(pl.rank() == 2);
  CHECK(kind_of([] { make_pseudolattice({ExactReal(1), ExactReal(-1)}); }) == ErrorKind::DomainError);
  CHECK(kind_of([] { make_pseudolattice({ExactReal(1), ExactReal(2)}, 2); }) == ErrorKind::DomainError);

  ExactReal c = cbrt_of(3);
  std::vector<ExactReal> six;
  for (int i = 1; i <= 6; ++i) six.push_back(ExactReal(i) + c * ExactReal(i % 3));
  auto pl6 = make_pseudolattice(six, 2);
  CHECK(pl6.rank() == rank_for_genus(2));
  CHECK(rank_for_genus(3) == 12);
}

TEST_CASE("basis_change examples") {
  auto pl = make_pseudolattice({ExactReal(1), sqrt_of(2)});
  CHECK(basis_change(pl, BasisChange(IntMatrix::identity(2))) == pl);
  auto image = basis_change(pl, BasisChange(IntMatrix{{1, 1}, {0, 1}}));
  CHECK(image.lambdas() == std::vector<ExactReal>{ExactReal(1), ExactReal(1) + sqrt_of(2)});
  CHECK(kind_of([] { BasisChange(IntMatrix{{2, 0}, {0, 1}}); }) == ErrorKind::NotUnimodular);
  CHECK(kind_of([&] { basis_change(pl, BasisChange(IntMatrix{{1, 0}, {-1, 1}})); }) == ErrorKind::LeftCone);
  CHECK(kind_of([&] { basis_change(pl, BasisChange(IntMatrix::identity(3))); }) == ErrorKind::RankMismatch);
}

TEST_CASE("projectivize and lift examples") {
  auto p = projectivize(make_pseudolattice({ExactReal(2), ExactReal(2) * sqrt_of(2)}));
  CHECK(p.ppl.thetas() == std::vector<ExactReal>{sqrt_of(2)});
  CHECK(p.scale == ExactReal(2));

  p = projectivize(make_pseudolattice({ExactReal(1), golden()}));
  CHECK(p.ppl.thetas() == std::vector<ExactReal>{golden()});
  CHECK(p.scale == ExactReal(1));

  ExactReal c3 = cbrt_of(3);
  ExactReal c9 = c3 * c3;
  p = projectivize(make_pseudolattice({ExactReal(3), ExactReal(3) * c3, ExactReal(3) * c9}));
  // Field oracle: c9 == 3^(2/3) satisfies c9^3 == 9.
  CHECK(p.ppl.thetas()[1] * p.ppl.thetas()[1] * p.ppl.thetas()[1] == ExactReal(9));
  CHECK(p.ppl.thetas() == std::vector<ExactReal>{c3, c9});

  ProjectivePseudoLattice ppl({sqrt_of(2)});
  CHECK(lift(ppl, ExactReal(1)).lambdas() == std::vector<ExactReal>{ExactReal(1), sqrt_of(2)});
  CHECK(lift(ppl, ExactReal(2)).lambdas() == std::vector<ExactReal>{ExactReal(2), ExactReal(2) * sqrt_of(2)});
  CHECK(lift(ProjectivePseudoLattice({c3, c9}), ExactReal(5)).lambdas() ==
        std::vector<ExactReal>{ExactReal(5), ExactReal(5) * c3, ExactReal(5) * c9});
  CHECK(kind_of([&] { lift(ppl, ExactReal(0)); }) == ErrorKind::DomainError);
}

TEST_CASE("module_coords examples") {
  auto c = module_coords(make_pseudolattice({ExactReal(1), sqrt_of(2)}));
  CHECK(c.rows == std::vector<std::vector<Rational>>{{1, 0}, {0, 1}});

  c = module_coords(make_pseudolattice({ExactReal(1) + sqrt_of(2), sqrt_of(2)}));
  CHECK(c.rows == std::vector<std::vector<Rational>>{{1, 1}, {0, 1}});

  c = module_coords(make_pseudolattice({ExactReal(Rational(1, 2)), sqrt_of(2) / ExactReal(3)}));
  CHECK(c.rows == std::vector<std::vector<Rational>>{{Rational(1, 2), 0}, {0, Rational(1, 3)}});
  CHECK(c.denominator == 6);
  CHECK(c.integer_rows() == IntMatrix{{3, 0}, {0, 2}});

  std::vector<ExactReal> mixed{sqrt_of(2), sqrt_of(3)};
  CHECK(kind_of([&] { module_coords(mixed); }) == ErrorKind::MixedContext);
  std::vector<ExactReal> inexact{ExactReal::approx(1.5)};
  CHECK(kind_of([&] { module_coords(inexact); }) == ErrorKind::InexactInput);
}

TEST_CASE("module_equal examples") {
  auto base = make_pseudolattice({ExactReal(1), sqrt_of(2)});
  CHECK(module_equal(base, make_pseudolattice({ExactReal(1) + sqrt_of(2), sqrt_of(2)})));
  CHECK_FALSE(module_equal(base, make_pseudolattice({ExactReal(2), sqrt_of(2)})));
  CHECK_FALSE(module_equal(base, make_pseudolattice({ExactReal(1), ExactReal(2) * sqrt_of(2)})));
  CHECK(module_equal(make_pseudolattice({ExactReal(2), ExactReal(3)}), make_pseudolattice({ExactReal(1), ExactReal(5)})));
  CHECK_FALSE(module_equal(make_pseudolattice({ExactReal(2), ExactReal(4)}), make_pseudolattice({ExactReal(1), ExactReal(5)})));
  CHECK(kind_of([&] { module_equal(base, make_pseudolattice({ExactReal(1), sqrt_of(3)})); }) ==
        ErrorKind::MixedContext);
}

TEST_CASE("hnf agrees with a determinant/integrality oracle") {
  Rng rng(5);
  CHECK(hermite_normal_form(IntMatrix{{2, 0}, {0, 1}}) == IntMatrix{{2, 0}, {0, 1}});
  CHECK(hermite_normal_form(IntMatrix{{4, 6}, {2, 4}}) == IntMatrix{{2, 0}, {0, 2}});
  CHECK(hermite_normal_form(IntMatrix{{1, 2}, {2, 4}}) == IntMatrix{{1, 2}});
  for (int trial = 0; trial < 300; ++trial) {
    std::size_t n = static_cast<std::size_t>(rng.uniform(2, 5));
    IntMatrix a = random_matrix(rng, n, n, 6);
    if (a.determinant() == 0) continue;
    IntMatrix b = trial % 2 ? positive_unimodular(rng, n, 6) * a : random_matrix(rng, n, n, 6);
    if (b.determinant() == 0) continue;
    bool oracle = rows_in_lattice(a, b) && rows_in_lattice(b, a);
    CHECK(same_row_lattice(a, b) == oracle);
    IntMatrix h = hermite_normal_form(a);
    CHECK(hermite_normal_form(h) == h);
    CHECK(abs(h.determinant()) == abs(a.determinant()));
    for (std::size_t r = 0; r < n; ++r) {
      CHECK(h(r, r) > 0);
      for (std::size_t q = 0; q < r; ++q) {
        CHECK(h(r, q) == 0);
        CHECK(h(q, r) >= 0);
        CHECK(h(q, r) < h(r, r));
      }
    }
  }
  // Extra generators: the HNF of a wide generating set.
  for (int trial = 0; trial < 100; ++trial) {
    IntMatrix m = random_matrix(rng, 5, 3, 20);
    IntMatrix h = hermite_normal_form(m);
    CHECK(hermite_normal_form(h) == h);
    auto stacked = m.to_rows();
    for (const auto& r : h.to_rows()) stacked.push_back(r);
    CHECK(same_row_lattice(IntMatrix::from_rows(stacked), m));
  }
}

TEST_CASE("property: module invariance, functoriality, kernel") {
  Rng rng(77);
  for (int trial = 0; trial < 30; ++trial) {
    std::size_t n = static_cast<std::size_t>(rng.uniform(2, 6));
    FieldPtr f = trial % 2 ? rng.cubic_field() : rng.quadratic_field();
    std::vector<ExactReal> lambdas;
    for (std::size_t i = 0; i < n; ++i) lambdas.push_back(rng.positive_element(f));
    auto pl = make_pseudolattice(lambdas);
    IntMatrix a1 = positive_unimodular(rng, n, 5);
    IntMatrix a2 = positive_unimodular(rng, n, 5);
    auto once = basis_change(pl, BasisChange(a1));
    CHECK(module_equal(pl, once));
    CHECK(module_equal(once, pl));
    auto twice = basis_change(once, BasisChange(a2));
    CHECK(twice == basis_change(pl, BasisChange(a1 * a2)));
    CHECK(module_equal(pl, twice));

    Rational c = rng.positive_rational(30, 7);
    auto proj = projectivize(pl);
    CHECK(lift(proj.ppl, proj.scale) == pl);
    CHECK(projectivize(lift(proj.ppl, ExactReal(c))).ppl == proj.ppl);
    std::vector<ExactReal> scaled;
    for (const auto& l : lambdas) scaled.push_back(ExactReal(c) * l);
    CHECK(projectivize(make_pseudolattice(scaled)).ppl == proj.ppl);
    ExactReal irr = rng.positive_element(f);
    scaled.clear();
    for (const auto& l : lambdas) scaled.push_back(irr * l);
    CHECK(projectivize(make_pseudolattice(scaled)).ppl == proj.ppl);

    // Equivalence relation on a triple; the third is a sublattice of pl.
    auto third = basis_change(pl, BasisChange(positive_unimodular(rng, n, 3)));
    CHECK(module_equal(pl, pl));
    CHECK(module_equal(once, third));
    std::vector<ExactReal> doubled = lambdas;
    doubled[0] = doubled[0] * ExactReal(2);
    bool sub = module_equal(pl, make_pseudolattice(doubled));
    CHECK(sub == module_equal(make_pseudolattice(doubled), once));
  }
}
