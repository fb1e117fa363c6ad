#include "doctest.h"
#include "oracles.hpp"
#include "toric_af/bratteli.hpp"
#include "toric_af/error.hpp"

using namespace toric_af;
using namespace toric_af::testing;

namespace {

std::vector<Integer> ints(std::initializer_list<long> v) { return {v.begin(), v.end()}; }

std::vector<DigitVector> random_digits(Rng& rng, std::size_t rank, std::size_t count) {
  std::vector<DigitVector> out;
  for (std::size_t k = 0; k < count; ++k) {
    std::vector<Integer> b;
    for (std::size_t i = 0; i + 1 < rank; ++i) b.push_back(rng.uniform(0, 4));
    out.emplace_back(std::move(b));
  }
  return out;
}

}  // namespace

TEST_CASE("build_toric_af examples") {
  std::vector<DigitVector> ones(3, DigitVector{1});
  CHECK(build_toric_af(ones, 0).depth() == 0);
  CHECK(level_dimensions(build_toric_af(ones, 0)) == std::vector<std::vector<Integer>>{ints({1})});

  auto fib = build_toric_af(ones, 4);
  CHECK(fib.depth() == 4);
  REQUIRE(fib.matrices().size() == 3);
  for (const auto& m : fib.matrices()) CHECK(m == IntMatrix{{0, 1}, {1, 1}});

  // Rank six: multiplicity column (1, b_1, ..., b_5) on vertex 6, unit
  // subdiagonal elsewhere.
  DigitVector b{2, 0, 3, 1, 5};
  std::vector<DigitVector> one{b};
  auto d6 = build_toric_af(one, 2);
  const IntMatrix& m = d6.matrices().front();
  CHECK(m.column(5) == ints({1, 2, 0, 3, 1, 5}));
  for (std::size_t r = 0; r < 6; ++r)
    for (std::size_t c = 0; c < 5; ++c) CHECK(m(r, c) == (r == c + 1 ? 1 : 0));

  std::vector<DigitVector> bad{DigitVector{1}, DigitVector{1, 2}};
  CHECK_THROWS_AS(build_toric_af(bad, 2), Error);
  CHECK_THROWS_AS(build_toric_af(ones, 5), Error);
  CHECK_THROWS_AS(BratteliDiagram(2, {IntMatrix{{1, 0}, {0, 0}}}), Error);
  CHECK_THROWS_AS(BratteliDiagram(2, {IntMatrix{{1, -1}, {0, 1}}}), Error);
}

TEST_CASE("level_dimensions examples") {
  std::vector<DigitVector> ones(4, DigitVector{1});
  auto dims = level_dimensions(build_toric_af(ones, 4));
  CHECK(dims == std::vector<std::vector<Integer>>{ints({1, 1}), ints({1, 2}), ints({2, 3}), ints({3, 5})});

  Rng rng(3);
  for (int t = 0; t < 20; ++t) {
    auto digits = random_digits(rng, static_cast<std::size_t>(rng.uniform(2, 6)), 8);
    auto d = level_dimensions(build_toric_af(digits, 9));
    Integer previous = 0;
    for (const auto& level : d) {
      Integer sum = 0;
      for (const auto& v : level) sum += v;
      CHECK(sum >= previous);
      previous = sum;
    }
  }
}

TEST_CASE("telescope examples") {
  std::vector<DigitVector> ones(6, DigitVector{1});
  auto fib = build_toric_af(ones, 7);
  std::vector<std::size_t> all{1, 2, 3, 4, 5, 6, 7};
  CHECK(telescope(fib, all) == fib);

  std::vector<std::size_t> pairs{3, 5, 7};
  auto paired = telescope(fib, pairs);
  REQUIRE(paired.matrices().size() == 3);
  for (const auto& m : paired.matrices()) CHECK(m == IntMatrix{{1, 1}, {1, 2}});
  CHECK(paired.labels() == std::vector<std::size_t>{1, 3, 5, 7});

  std::vector<std::size_t> last{7};
  auto single = telescope(fib, last);
  REQUIRE(single.matrices().size() == 1);
  CHECK(single.matrices().front() == convergents(ones, 6).matrix);

  std::vector<std::size_t> bad{3, 3};
  CHECK_THROWS_AS(telescope(fib, bad), Error);
  std::vector<std::size_t> beyond{8};
  CHECK_THROWS_AS(telescope(fib, beyond), Error);
}

TEST_CASE("k0_state examples") {
  ProjectivePseudoLattice theta({sqrt_of(2)});
  CHECK(k0_state(theta, ints({1, 0})) == ExactReal(1));
  CHECK(k0_state(theta, ints({0, 1})) == sqrt_of(2));
  ExactReal v = k0_state(theta, ints({-1, 1}));
  CHECK(v == sqrt_of(2) - ExactReal(1));
  CHECK(sign(v) > 0);
  CHECK_THROWS_AS(k0_state(theta, ints({1, 0, 0})), Error);
}

TEST_CASE("level states match the expansion and the inclusion maps") {
  Rng rng(19);
  for (int t = 0; t < 20; ++t) {
    FieldPtr f = rng.cubic_field();
    std::size_t n = static_cast<std::size_t>(rng.uniform(2, 4));
    std::vector<ExactReal> thetas;
    for (std::size_t i = 1; i < n; ++i) thetas.push_back(rng.positive_element(f));
    ProjectivePseudoLattice theta(thetas);
    auto algebra = make_toric_af(theta, 8);
    auto expansion = jpa_expand(theta.representative(), 7);
    CHECK(algebra.digits == expansion.digits);
    CHECK(diagram_digits(algebra.diagram) == expansion.digits);
    for (std::size_t k = 1; k <= algebra.diagram.depth(); ++k) {
      for (std::size_t j = 0; j < n; ++j) {
        std::vector<Integer> e(n, Integer(0));
        e[j] = 1;
        CHECK(level_state(theta, algebra.diagram, k, e) == expansion.states[k - 1][j]);
      }
      if (k < algebra.diagram.depth()) {
        std::vector<Integer> x;
        for (std::size_t i = 0; i < n; ++i) x.push_back(rng.uniform(-5, 5));
        auto pushed = algebra.diagram.matrices()[k - 1].transpose().apply(x);
        CHECK(level_state(theta, algebra.diagram, k + 1, pushed) == level_state(theta, algebra.diagram, k, x));
      }
    }
  }
}

TEST_CASE("property: duality, unimodularity, telescoping invariance") {
  Rng rng(101);
  for (int t = 0; t < 40; ++t) {
    std::size_t n = static_cast<std::size_t>(rng.uniform(2, 6));
    std::size_t levels = static_cast<std::size_t>(rng.uniform(2, 10));
    auto digits = random_digits(rng, n, levels - 1);
    auto diagram = build_toric_af(digits, levels);
    CHECK(diagram_digits(diagram) == digits);
    for (const auto& m : diagram.matrices()) CHECK(abs(m.determinant()) == 1);

    std::vector<std::size_t> cuts;
    for (std::size_t k = 1; k <= levels; ++k)
      if (rng.uniform(0, 1)) cuts.push_back(k);
    auto tele = telescope(diagram, cuts);
    auto dims = level_dimensions(diagram);
    auto tdims = level_dimensions(tele);
    REQUIRE(tdims.size() == tele.labels().size());
    for (std::size_t i = 0; i < tdims.size(); ++i) CHECK(tdims[i] == dims[tele.labels()[i] - 1]);

    std::vector<ExactReal> thetas;
    FieldPtr f = rng.quadratic_field();
    for (std::size_t i = 1; i < n; ++i) thetas.push_back(rng.positive_element(f));
    ProjectivePseudoLattice theta(thetas);
    for (std::size_t i = 0; i < tele.labels().size(); ++i) {
      std::vector<Integer> x;
      for (std::size_t j = 0; j < n; ++j) x.push_back(rng.uniform(-9, 9));
      CHECK(level_state(theta, tele, i + 1, x) == level_state(theta, diagram, tele.labels()[i], x));
    }
  }
  // Fibonacci recurrence for the level sums.
  std::vector<DigitVector> ones(20, DigitVector{1});
  auto dims = level_dimensions(build_toric_af(ones, 21));
  for (std::size_t k = 2; k < dims.size(); ++k) {
    CHECK(dims[k][0] + dims[k][1] == dims[k - 1][0] + dims[k - 1][1] + dims[k - 2][0] + dims[k - 2][1]);
  }
}

TEST_CASE("dot output") {
  std::vector<DigitVector> digits{DigitVector{2}};
  std::string dot = to_dot(build_toric_af(digits, 2));
  CHECK(dot.find("root -> v1_1") != std::string::npos);
  CHECK(dot.find("v1_2 -> v2_2 [label=\"2\"]") != std::string::npos);
  CHECK(dot.find("v1_1 -> v2_2;") != std::string::npos);
}
