#include "toric_af/numeric.hpp"

#include <cctype>

#include "toric_af/error.hpp"

namespace toric_af {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::DomainError: return "DomainError";
    case ErrorKind::ParseError: return "ParseError";
    case ErrorKind::InvalidField: return "InvalidField";
    case ErrorKind::NonRealState: return "NonRealState";
    case ErrorKind::MixedContext: return "MixedContext";
    case ErrorKind::DivisionByZero: return "DivisionByZero";
    case ErrorKind::InexactInput: return "InexactInput";
    case ErrorKind::InexactState: return "InexactState";
    case ErrorKind::NotUnimodular: return "NotUnimodular";
    case ErrorKind::LeftCone: return "LeftCone";
    case ErrorKind::RankMismatch: return "RankMismatch";
    case ErrorKind::Cancelled: return "Cancelled";
  }
  return "Unknown";
}

Integer floor(const Rational& q) {
  Integer r;
  mpz_fdiv_q(r.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
  return r;
}

Integer ceil(const Rational& q) {
  Integer r;
  mpz_cdiv_q(r.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
  return r;
}

namespace {

bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s)
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  return true;
}

std::string_view strip(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

}  // namespace

Integer parse_integer(std::string_view text) {
  text = strip(text);
  std::string_view body = text;
  if (!body.empty() && (body.front() == '-' || body.front() == '+')) body.remove_prefix(1);
  if (!all_digits(body)) throw Error(ErrorKind::ParseError, "not an integer: '" + std::string(text) + "'");
  Integer z;
  z.set_str(std::string(body), 10);
  if (text.front() == '-') z = -z;
  return z;
}

Rational parse_rational(std::string_view text) {
  text = strip(text);
  if (auto slash = text.find('/'); slash != std::string_view::npos) {
    Integer num = parse_integer(text.substr(0, slash));
    Integer den = parse_integer(text.substr(slash + 1));
    if (den == 0) throw Error(ErrorKind::DivisionByZero, "zero denominator in '" + std::string(text) + "'");
    Rational q(num, den);
    q.canonicalize();
    return q;
  }
  if (auto dot = text.find('.'); dot != std::string_view::npos) {
    std::string_view whole = text.substr(0, dot);
    std::string_view frac = text.substr(dot + 1);
    bool negative = !whole.empty() && whole.front() == '-';
    if (!whole.empty() && (whole.front() == '-' || whole.front() == '+')) whole.remove_prefix(1);
    if ((!whole.empty() && !all_digits(whole)) || !all_digits(frac))
      throw Error(ErrorKind::ParseError, "not a rational: '" + std::string(text) + "'");
    Integer num;
    num.set_str(std::string(whole) + std::string(frac), 10);
    Integer den;
    mpz_ui_pow_ui(den.get_mpz_t(), 10, frac.size());
    Rational q(negative ? Integer(-num) : num, den);
    q.canonicalize();
    return q;
  }
  return Rational(parse_integer(text));
}

std::string to_string(const Integer& z) { return z.get_str(10); }

std::string to_string(const Rational& q) {
  if (q.get_den() == 1) return q.get_num().get_str(10);
  return q.get_num().get_str(10) + "/" + q.get_den().get_str(10);
}

}  // namespace toric_af
