#include "toric_af/json_io.hpp"

#include <cmath>

#include "toric_af/error.hpp"

namespace toric_af::json_io {

namespace {

[[noreturn]] void bad(const std::string& what) { throw Error(ErrorKind::ParseError, what); }

const json& member(const json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) bad(std::string("missing \"") + key + "\"");
  return j.at(key);
}

}  // namespace

json to_json(const Integer& v) { return v.get_str(); }

Integer integer_from_json(const json& j) {
  if (j.is_string()) return parse_integer(j.get<std::string>());
  if (j.is_number_integer()) return Integer(j.dump());
  bad("expected an integer, got " + j.dump());
}

json to_json(const Rational& v) { return toric_af::to_string(v); }

Rational rational_from_json(const json& j) {
  if (j.is_string()) return parse_rational(j.get<std::string>());
  if (j.is_number_integer()) return Rational(Integer(j.dump()));
  bad("expected a rational, got " + j.dump());
}

json to_json(const ExactReal& x) {
  switch (x.kind()) {
    case ExactReal::Kind::Rational:
      return {{"type", "rational"}, {"num", to_json(x.rational().get_num())}, {"den", to_json(x.rational().get_den())}};
    case ExactReal::Kind::NumberField: {
      const auto& f = x.field_element();
      json minpoly = json::array();
      for (const auto& c : f.context->minpoly()) minpoly.push_back(to_json(c));
      json coords = json::array();
      for (const auto& c : f.coords) coords.push_back(to_json(c));
      const auto& iv = f.context->isolating_interval();
      return {{"type", "number_field"},
              {"minpoly", minpoly},
              {"interval", {{"lo", to_json(iv.lo)}, {"hi", to_json(iv.hi)}}},
              {"coords", coords}};
    }
    case ExactReal::Kind::Float:
      return {{"type", "float"}, {"value", x.approximation().value}, {"radius", x.approximation().radius}};
  }
  bad("unreachable");
}

ExactReal exact_from_json(const json& j) {
  if (j.is_string()) return parse_exact_real(j.get<std::string>());
  if (j.is_number_integer()) return ExactReal(Rational(Integer(j.dump())));
  if (j.is_number_float()) return ExactReal::approx(j.get<double>());
  const std::string type = member(j, "type").get<std::string>();
  if (type == "rational") {
    Integer den = integer_from_json(member(j, "den"));
    if (den == 0) throw Error(ErrorKind::DivisionByZero, "zero denominator");
    Rational q(integer_from_json(member(j, "num")), den);
    q.canonicalize();
    return ExactReal(q);
  }
  if (type == "number_field") {
    poly::IntPoly minpoly;
    for (const auto& c : member(j, "minpoly")) minpoly.push_back(integer_from_json(c));
    const json& iv = member(j, "interval");
    FieldPtr f = FieldContext::intern(std::move(minpoly),
                                      Interval{rational_from_json(member(iv, "lo")), rational_from_json(member(iv, "hi"))});
    FieldContext::Coords coords;
    for (const auto& c : member(j, "coords")) coords.push_back(rational_from_json(c));
    return ExactReal::field(f, std::move(coords));
  }
  if (type == "float") {
    double radius = j.contains("radius") ? j.at("radius").get<double>() : 0.0;
    return ExactReal::approx(member(j, "value").get<double>(), radius);
  }
  bad("unknown real type \"" + type + "\"");
}

json to_json(const std::vector<ExactReal>& v) {
  json out = json::array();
  for (const auto& x : v) out.push_back(to_json(x));
  return out;
}

std::vector<ExactReal> exact_vector_from_json(const json& j) {
  if (j.is_string()) return parse_exact_vector(j.get<std::string>());
  if (!j.is_array()) bad("expected an array of reals");
  std::vector<ExactReal> out;
  for (const auto& x : j) out.push_back(exact_from_json(x));
  return out;
}

json to_json(const DigitVector& d) {
  json out = json::array();
  for (const auto& b : d.entries()) out.push_back(to_json(b));
  return out;
}

DigitVector digit_from_json(const json& j) {
  if (j.is_array()) {
    std::vector<Integer> entries;
    for (const auto& b : j) entries.push_back(integer_from_json(b));
    return DigitVector(std::move(entries));
  }
  return DigitVector(std::vector<Integer>{integer_from_json(j)});
}

json to_json(const std::vector<DigitVector>& digits) {
  json out = json::array();
  for (const auto& d : digits) out.push_back(to_json(d));
  return out;
}

std::vector<DigitVector> digits_from_json(const json& j) {
  const json& list = j.is_object() ? member(j, "digits") : j;
  if (!list.is_array()) bad("expected an array of digits");
  std::vector<DigitVector> out;
  for (const auto& d : list) out.push_back(digit_from_json(d));
  return out;
}

json to_json(const IntMatrix& m) {
  json out = json::array();
  for (std::size_t r = 0; r < m.rows(); ++r) {
    json row = json::array();
    for (std::size_t c = 0; c < m.cols(); ++c) row.push_back(to_json(m(r, c)));
    out.push_back(row);
  }
  return out;
}

IntMatrix matrix_from_json(const json& j) {
  if (!j.is_array()) bad("expected a matrix as an array of rows");
  std::vector<std::vector<Integer>> rows;
  for (const auto& r : j) {
    if (!r.is_array()) bad("matrix rows must be arrays");
    std::vector<Integer> row;
    for (const auto& v : r) row.push_back(integer_from_json(v));
    rows.push_back(std::move(row));
  }
  return IntMatrix::from_rows(rows);
}

std::string to_string(Termination t) {
  switch (t) {
    case Termination::Running: return "running";
    case Termination::RationalDependence: return "rational_dependence";
    case Termination::Truncated: return "truncated";
    case Termination::Indeterminate: return "indeterminate";
  }
  return "running";
}

Termination termination_from_string(const std::string& s) {
  if (s == "running") return Termination::Running;
  if (s == "rational_dependence") return Termination::RationalDependence;
  if (s == "truncated") return Termination::Truncated;
  if (s == "indeterminate") return Termination::Indeterminate;
  bad("unknown termination \"" + s + "\"");
}

json to_json(const JpaExpansion& e) {
  json states = json::array();
  for (const auto& s : e.states) states.push_back(to_json(s));
  return {{"rank", e.rank},
          {"projective", e.projective},
          {"termination", to_string(e.termination)},
          {"digits", to_json(e.digits)},
          {"states", states}};
}

JpaExpansion expansion_from_json(const json& j) {
  JpaExpansion e;
  e.digits = digits_from_json(member(j, "digits"));
  e.termination = termination_from_string(member(j, "termination").get<std::string>());
  e.projective = j.value("projective", false);
  for (const auto& s : member(j, "states")) e.states.push_back(exact_vector_from_json(s));
  if (e.states.empty()) bad("expansion has no states");
  e.rank = e.states.front().size();
  if (j.contains("rank") && member(j, "rank").get<std::size_t>() != e.rank) bad("rank does not match the states");
  if (e.states.size() != e.digits.size() + 1) bad("need exactly one more state than digits");
  for (const auto& s : e.states) {
    if (s.size() != e.rank) bad("ragged states");
  }
  for (const auto& d : e.digits) {
    if (d.rank() != e.rank) bad("digit length does not match the rank");
  }
  return e;
}

json to_json(const BratteliDiagram& d) {
  json levels = json::array();
  auto dims = level_dimensions(d);
  for (std::size_t k = 0; k < d.depth(); ++k) {
    json level = {{"label", d.labels()[k]}, {"dimensions", json::array()}};
    for (const auto& v : dims[k]) level["dimensions"].push_back(to_json(v));
    if (k < d.matrices().size()) level["matrix"] = to_json(d.matrices()[k]);
    levels.push_back(std::move(level));
  }
  return {{"rank", d.rank()}, {"depth", d.depth()}, {"levels", levels}};
}

BratteliDiagram diagram_from_json(const json& j) {
  const auto rank = member(j, "rank").get<std::size_t>();
  const json& levels = member(j, "levels");
  if (!levels.is_array()) bad("\"levels\" must be an array");
  if (j.contains("depth") && j.at("depth").get<std::size_t>() != levels.size()) bad("depth does not match levels");
  if (levels.empty()) return BratteliDiagram(rank);
  std::vector<IntMatrix> matrices;
  std::vector<std::size_t> labels;
  for (std::size_t k = 0; k < levels.size(); ++k) {
    const json& level = levels[k];
    labels.push_back(level.value("label", k + 1));
    bool last = k + 1 == levels.size();
    if (level.contains("matrix") == last) bad("every level but the last carries a matrix");
    if (!last) matrices.push_back(matrix_from_json(level.at("matrix")));
  }
  return BratteliDiagram(rank, std::move(matrices), std::move(labels));
}

json to_json(const StableIsoVerdict& v) {
  json out = {{"outcome", to_string(v.outcome)}, {"method", v.method}};
  out["tail"] = v.tail ? json{{"k", v.tail->k}, {"k_prime", v.tail->k_prime}} : json(nullptr);
  out["matrix_witness"] =
      v.matrix ? json{{"matrix", to_json(v.matrix->a)}, {"scale", to_json(v.matrix->scale)}} : json(nullptr);
  out["invariant"] = v.invariant ? json(*v.invariant) : json(nullptr);
  return out;
}

json to_json(const GenericityReport& r) {
  json hist = json::array();
  for (int i = 0; i < AngleHistogram::kBins; ++i) {
    hist.push_back({{"log10_angle_below", AngleHistogram::kLowestExponent + i + 1},
                    {"count", r.histogram.counts[static_cast<std::size_t>(i)]}});
  }
  return {{"rank", r.rank},
          {"trials", r.trials},
          {"steps", r.steps},
          {"tol", r.tol},
          {"seed", std::to_string(r.seed)},
          {"converged", r.converged},
          {"indeterminate", r.indeterminate},
          {"near_misses", r.near_misses},
          {"rate", r.rate},
          {"histogram", hist}};
}

}  // namespace toric_af::json_io
