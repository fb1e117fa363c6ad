#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace toric_af {

using Integer = mpz_class;
using Rational = mpq_class;

/// Largest integer <= q.
Integer floor(const Rational& q);
/// Smallest integer >= q.
Integer ceil(const Rational& q);

/// Parses "p", "p/q" or a plain decimal such as "-1.25". Result is canonical.
Rational parse_rational(std::string_view text);
Integer parse_integer(std::string_view text);

std::string to_string(const Integer& z);
/// "p" for integers, "p/q" otherwise.
std::string to_string(const Rational& q);

}  // namespace toric_af
