#include "doctest.h"
#include "oracles.hpp"
#include "toric_af/error.hpp"
#include "toric_af/exact.hpp"

using namespace toric_af;
using namespace toric_af::testing;

namespace {

ErrorKind kind_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.kind();
  }
  FAIL("no error raised");
  return ErrorKind::DomainError;
}

}  // namespace

TEST_CASE("parse and print exact reals") {
  ExactReal sqrt2 = parse_exact_real("nf:t^2-2@[1,2]:(0,1)");
  CHECK(sqrt2.kind() == ExactReal::Kind::NumberField);
  CHECK(to_string(sqrt2) == "nf:t^2-2@[1,2]:(0,1)");
  CHECK(parse_exact_real("6/4") == ExactReal(Rational(3, 2)));
  CHECK(parse_exact_real("-0.25") == ExactReal(Rational(-1, 4)));
  CHECK(parse_exact_real("float:0.5").approximation().radius == 0.0);
  CHECK(parse_exact_real("float:0.1").approximation().radius > 0.0);
  // Degree-one "fields" collapse to rationals.
  CHECK(parse_exact_real("nf:t-3@[2,4]:(7/2)") == ExactReal(Rational(7, 2)));
  // A field element with zero irrational part is a rational.
  CHECK(parse_exact_real("nf:t^2-2@[1,2]:(5)").is_rational());

  auto v = parse_exact_vector("1, nf:t^3-3@[1,2]:(0,1), 2/3");
  REQUIRE(v.size() == 3);
  CHECK(v[1] * v[1] == parse_exact_real("nf:t^3-3@[1,2]:(0,0,1)"));

  CHECK(kind_of([] { parse_exact_real("nf:t^2-4@[1,3]:(0,1)"); }) == ErrorKind::InvalidField);
  CHECK(kind_of([] { parse_exact_real("nf:t^2-2@[-2,2]:(0,1)"); }) == ErrorKind::InvalidField);
  CHECK(kind_of([] { parse_exact_real("nf:t^2-2@[2,3]:(0,1)"); }) == ErrorKind::InvalidField);
  CHECK(kind_of([] { parse_exact_real("nf:2t^2-1@[0,1]:(0,1)"); }) == ErrorKind::InvalidField);
  CHECK(kind_of([] { parse_exact_real("nf:t^2-2@[1,2]:(0,1,1)"); }) == ErrorKind::ParseError);
  CHECK(kind_of([] { parse_exact_real("1/0"); }) == ErrorKind::DivisionByZero);
  CHECK(kind_of([] { parse_exact_real("abc"); }) == ErrorKind::ParseError);
}

TEST_CASE("irreducibility certificates") {
  CHECK(poly::certify_irreducible({-2, 0, 1}));
  CHECK(poly::certify_irreducible({-9, 0, 0, 1}));
  CHECK_FALSE(poly::certify_irreducible({-8, 0, 0, 1}));   // (t-2)(t^2+2t+4)
  CHECK(poly::certify_irreducible({-2, 0, 0, 0, 1}));      // t^4-2, Eisenstein
  CHECK(poly::certify_irreducible({-3, 1, 0, 0, 0, 1}));   // t^5+t-3
  CHECK_FALSE(poly::certify_irreducible({1, 0, 2, 0, 1}));  // (t^2+1)^2
  CHECK_FALSE(poly::certify_irreducible({-2, 0, -1, 0, 1}));  // (t^2-2)(t^2+1)
  CHECK(poly::to_string(poly::parse("t^3 - 3*t + 1")) == "t^3-3t+1");
}

TEST_CASE("nf_floor examples") {
  CHECK(floor(ExactReal(3)) == 3);
  CHECK(floor(ExactReal(Rational(-7, 2))) == -4);
  CHECK(floor(sqrt_of(2)) == integer_root_floor(2, 2));
  CHECK(floor(parse_exact_real("nf:t^3-9@[2,3]:(0,1)")) == integer_root_floor(9, 3));
  CHECK(floor(parse_exact_real("nf:t^3-9@[2,3]:(0,1)")) == 2);
  CHECK(floor(-sqrt_of(2)) == -2);
  CHECK(kind_of([] { floor(ExactReal::approx(1.5)); }) == ErrorKind::InexactInput);
}

TEST_CASE("nf_compare examples") {
  CHECK(compare(ExactReal(Rational(1, 2)), ExactReal(Rational(1, 2))) == std::strong_ordering::equal);
  // Squaring oracle: 2 < 9/4, both sides positive.
  CHECK(Rational(2) < Rational(9, 4));
  CHECK(compare(sqrt_of(2), ExactReal(Rational(3, 2))) == std::strong_ordering::less);
  CHECK(compare(cbrt_of(3), ExactReal(1)) == std::strong_ordering::greater);
  CHECK(compare(sqrt_of(2) * sqrt_of(2), ExactReal(2)) == std::strong_ordering::equal);
  CHECK(kind_of([] { compare(sqrt_of(2), sqrt_of(3)); }) == ErrorKind::MixedContext);
}

TEST_CASE("field_arith examples") {
  CHECK(sqrt_of(2) * sqrt_of(2) == ExactReal(2));
  ExactReal c9 = cbrt_of(3) * cbrt_of(3);
  CHECK(c9.field_element().coords == FieldContext::Coords{0, 0, 1});
  ExactReal inv = ExactReal(1) / sqrt_of(2);
  CHECK(inv.field_element().coords == FieldContext::Coords{0, Rational(1, 2)});
  CHECK(kind_of([] { sqrt_of(2) / ExactReal(0); }) == ErrorKind::DivisionByZero);
  CHECK(kind_of([] { sqrt_of(2) + sqrt_of(3); }) == ErrorKind::MixedContext);
  // The same field written with a different isolating interval is compatible.
  ExactReal other = parse_exact_real("nf:t^2-2@[13/10,3/2]:(0,1)");
  CHECK(other == sqrt_of(2));
  // The conjugate root is a different embedding.
  ExactReal conj = parse_exact_real("nf:t^2-2@[-2,-1]:(0,1)");
  CHECK(kind_of([&] { return conj + sqrt_of(2); }) == ErrorKind::MixedContext);
  CHECK(sign(conj) == -1);
}

TEST_CASE("float tier tracks error") {
  ExactReal a = ExactReal::approx(1.0, 1e-12);
  ExactReal b = a * ExactReal::approx(3.0) - ExactReal::approx(0.5);
  CHECK(b.approximation().value == doctest::Approx(2.5));
  CHECK(b.approximation().radius >= 3e-12);
  CHECK(floor_if_determined(b) == Integer(2));
  CHECK_FALSE(floor_if_determined(ExactReal::approx(3.0, 1e-9)).has_value());
  ExactReal mixed = sqrt_of(2) * ExactReal::approx(2.0);
  CHECK(mixed.kind() == ExactReal::Kind::Float);
  CHECK(mixed.approximation().value == doctest::Approx(2.8284271247461903));
}

TEST_CASE("refinement intervals are nested and contain the root") {
  auto f = cbrt_field(5);
  Interval prev = f->isolating_interval();
  for (unsigned bits : {8u, 16u, 40u, 64u, 100u, 200u}) {
    Interval cur = f->root_enclosure(bits);
    CHECK(prev.lo <= cur.lo);
    CHECK(cur.hi <= prev.hi);
    // Containment oracle: cube of the endpoints brackets 5.
    CHECK(cur.lo * cur.lo * cur.lo < 5);
    CHECK(cur.hi * cur.hi * cur.hi > 5);
    prev = cur;
  }
  // Asking for a coarser precision later returns the same cached nesting.
  Interval coarse = f->root_enclosure(30);
  CHECK(coarse.lo <= f->root_enclosure(64).lo);
}

TEST_CASE("property: floor brackets and field axioms") {
  Rng rng(7);
  for (int trial = 0; trial < 60; ++trial) {
    FieldPtr f = trial % 2 ? rng.quadratic_field() : rng.cubic_field();
    ExactReal x = rng.element(f, 50, 7);
    ExactReal y = rng.element(f, 50, 7);
    ExactReal z = rng.element(f, 50, 7);
    Integer fl = floor(x);
    CHECK(compare(ExactReal(Rational(fl)), x) != std::strong_ordering::greater);
    CHECK(compare(x, ExactReal(Rational(fl + 1))) == std::strong_ordering::less);
    CHECK((x + y) + z == x + (y + z));
    CHECK((x * y) * z == x * (y * z));
    CHECK(x * (y + z) == x * y + x * z);
    CHECK(x * y == y * x);
    if (sign(y) != 0) {
      CHECK((x / y) * y == x);
      CHECK(floor_ratio(x * y, y * y) == floor(x / y));
    }
  }
}

TEST_CASE("floor_ratio handles exact integer quotients") {
  ExactReal s = sqrt_of(7);
  CHECK(floor_ratio(s * ExactReal(3), s) == 3);
  CHECK(floor_ratio(s * ExactReal(3) - ExactReal(Rational(1, 1000000)), s) == 2);
  CHECK(kind_of([&] { floor_ratio(s, -s); }) == ErrorKind::DomainError);
}
