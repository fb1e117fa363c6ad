#pragma once

#include <string>
#include <vector>

#include "json.hpp"
#include "toric_af/afstable.hpp"
#include "toric_af/bratteli.hpp"
#include "toric_af/cfrac.hpp"
#include "toric_af/exact.hpp"
#include "toric_af/int_matrix.hpp"
#include "toric_af/sampler.hpp"

namespace toric_af::json_io {

using nlohmann::json;

// Integers travel as decimal strings; readers also take JSON integers.
json to_json(const Integer& v);
Integer integer_from_json(const json& j);
json to_json(const Rational& v);  // "p" or "p/q"
Rational rational_from_json(const json& j);

/// {"type": "rational", "num", "den"}
/// {"type": "number_field", "minpoly": [c0, ..., 1], "interval": {"lo", "hi"}, "coords": [...]}
/// {"type": "float", "value", "radius"}
/// The reader also accepts the text grammar of parse_exact_real and plain
/// JSON numbers (integers exactly, others as floats).
json to_json(const ExactReal& x);
ExactReal exact_from_json(const json& j);
json to_json(const std::vector<ExactReal>& v);
std::vector<ExactReal> exact_vector_from_json(const json& j);

json to_json(const DigitVector& d);
/// An array of integers, or a single integer for rank 2.
DigitVector digit_from_json(const json& j);
json to_json(const std::vector<DigitVector>& digits);
/// A bare array of digits or an object with a "digits" member.
std::vector<DigitVector> digits_from_json(const json& j);

json to_json(const IntMatrix& m);
IntMatrix matrix_from_json(const json& j);

std::string to_string(Termination t);
Termination termination_from_string(const std::string& s);

/// {"rank", "projective", "termination", "digits", "states"}
json to_json(const JpaExpansion& e);
JpaExpansion expansion_from_json(const json& j);

/// {"rank", "depth", "levels": [{"label", "dimensions", "matrix"?}, ...]};
/// the last level has no matrix.
json to_json(const BratteliDiagram& d);
BratteliDiagram diagram_from_json(const json& j);

json to_json(const StableIsoVerdict& v);
json to_json(const GenericityReport& r);

}  // namespace toric_af::json_io
