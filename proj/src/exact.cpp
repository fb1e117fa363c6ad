#include "toric_af/exact.hpp"

#include <algorithm>
#include <atomic>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <limits>

#include "toric_af/error.hpp"

namespace toric_af {

namespace {

std::atomic<unsigned> g_default_bits{64};
constexpr unsigned kMaxBits = 1u << 22;

// 2^-bits as an exact rational.
Rational dyadic(unsigned bits) {
  Integer den = 1;
  mpz_mul_2exp(den.get_mpz_t(), den.get_mpz_t(), bits);
  return Rational(Integer(1), den);
}

}  // namespace

void set_default_precision_bits(unsigned bits) {
  if (bits < 8 || bits > kMaxBits) throw Error(ErrorKind::DomainError, "precision bits out of range");
  g_default_bits = bits;
}

unsigned default_precision_bits() { return g_default_bits; }

// ---------------------------------------------------------------------------
// FieldContext

FieldContext::FieldContext(poly::IntPoly minpoly, Interval isolating)
    : minpoly_(std::move(minpoly)), isolating_(std::move(isolating)) {
  minpoly_q_ = poly::from_integers(minpoly_);
  sturm_ = poly::sturm_chain(minpoly_q_);
  sign_at_lo_ = sgn(poly::evaluate(minpoly_q_, isolating_.lo));
}

std::shared_ptr<const FieldContext> FieldContext::make(poly::IntPoly minpoly, Interval isolating) {
  while (!minpoly.empty() && minpoly.back() == 0) minpoly.pop_back();
  const std::string shown = poly::to_string(minpoly);
  if (minpoly.size() < 3)
    throw Error(ErrorKind::InvalidField, "minimal polynomial " + shown + " must have degree >= 2");
  if (minpoly.back() != 1) throw Error(ErrorKind::InvalidField, "minimal polynomial " + shown + " is not monic");
  if (isolating.lo > isolating.hi) throw Error(ErrorKind::InvalidField, "isolating interval has lo > hi");
  if (!poly::certify_irreducible(minpoly))
    throw Error(ErrorKind::InvalidField, shown + " is reducible or could not be certified irreducible");
  std::shared_ptr<const FieldContext> ctx(new FieldContext(std::move(minpoly), std::move(isolating)));
  // Irreducible of degree >= 2: no rational roots, so endpoints are never roots.
  int roots = poly::count_roots(ctx->sturm_, ctx->isolating_.lo, ctx->isolating_.hi);
  if (roots != 1)
    throw Error(ErrorKind::InvalidField, "interval [" + to_string(ctx->isolating_.lo) + "," +
                                             to_string(ctx->isolating_.hi) + "] contains " +
                                             std::to_string(roots) + " roots of " + shown);
  return ctx;
}

std::shared_ptr<const FieldContext> FieldContext::intern(poly::IntPoly minpoly, Interval isolating) {
  static std::mutex registry_mutex;
  static std::vector<std::shared_ptr<const FieldContext>> registry;
  auto fresh = make(std::move(minpoly), std::move(isolating));
  std::lock_guard lock(registry_mutex);
  for (const auto& existing : registry)
    if (existing->same_field(*fresh)) return existing;
  registry.push_back(fresh);
  return fresh;
}

Interval FieldContext::root_enclosure(unsigned bits) const {
  Interval start = isolating_;
  {
    std::lock_guard lock(mutex_);
    if (auto it = refinements_.find(bits); it != refinements_.end()) return it->second;
    auto it = refinements_.upper_bound(bits);
    if (it != refinements_.begin()) start = std::prev(it)->second;
  }
  const Rational target = dyadic(bits);
  Interval cur = start;
  while (cur.width() > target) {
    Rational mid = cur.midpoint();
    int s = sgn(poly::evaluate(minpoly_q_, mid));
    if (s == 0) throw Error(ErrorKind::NonRealState, "rational root inside isolating interval");
    if (s == sign_at_lo_)
      cur.lo = mid;
    else
      cur.hi = mid;
  }
  std::lock_guard lock(mutex_);
  return refinements_.emplace(bits, cur).first->second;
}

bool FieldContext::same_field(const FieldContext& other) const {
  if (this == &other) return true;
  if (minpoly_ != other.minpoly_) return false;
  Rational lo = std::max(isolating_.lo, other.isolating_.lo);
  Rational hi = std::min(isolating_.hi, other.isolating_.hi);
  if (lo >= hi) return false;
  return poly::count_roots(sturm_, lo, hi) == 1;
}

FieldContext::Coords FieldContext::multiply(const Coords& a, const Coords& b) const {
  const std::size_t d = degree();
  std::vector<Rational> prod(2 * d - 1);
  for (std::size_t i = 0; i < d; ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; j < d; ++j) prod[i + j] += a[i] * b[j];
  }
  // t^d = -(m_0 + m_1 t + ... + m_{d-1} t^{d-1})
  for (std::size_t k = 2 * d - 1; k-- > d;) {
    if (prod[k] == 0) continue;
    const Rational c = prod[k];
    for (std::size_t i = 0; i < d; ++i) prod[k - d + i] -= c * minpoly_[i];
    prod[k] = 0;
  }
  prod.resize(d);
  return prod;
}

FieldContext::Coords FieldContext::inverse(const Coords& a) const {
  poly::RatPoly r0 = minpoly_q_;
  poly::RatPoly r1(a.begin(), a.end());
  poly::trim(r1);
  if (r1.empty()) throw Error(ErrorKind::DivisionByZero, "inverse of zero field element");
  poly::RatPoly s0;
  poly::RatPoly s1{Rational(1)};
  while (poly::degree(r1) > 0) {
    auto [q, r] = poly::divmod(r0, r1);
    poly::RatPoly s = s0;
    poly::RatPoly qs = poly::multiply(q, s1);
    s.resize(std::max(s.size(), qs.size()));
    for (std::size_t i = 0; i < qs.size(); ++i) s[i] -= qs[i];
    poly::trim(s);
    r0 = std::move(r1);
    r1 = std::move(r);
    s0 = std::move(s1);
    s1 = std::move(s);
  }
  if (r1.empty()) throw Error(ErrorKind::InvalidField, "minimal polynomial is not irreducible");
  Coords out(degree());
  const Rational c = r1[0];
  for (std::size_t i = 0; i < s1.size() && i < out.size(); ++i) out[i] = s1[i] / c;
  return out;
}

Interval FieldContext::evaluate(const Coords& a, unsigned bits) const {
  return poly::evaluate(poly::RatPoly(a.begin(), a.end()), root_enclosure(bits));
}

std::string FieldContext::describe() const {
  return poly::to_string(minpoly_) + "@[" + to_string(isolating_.lo) + "," + to_string(isolating_.hi) + "]";
}

// ---------------------------------------------------------------------------
// ExactReal

ExactReal ExactReal::field(FieldPtr context, FieldContext::Coords coords) {
  if (!context) throw Error(ErrorKind::DomainError, "null field context");
  const std::size_t d = context->degree();
  if (coords.size() > d) {
    for (std::size_t i = d; i < coords.size(); ++i)
      if (coords[i] != 0) throw Error(ErrorKind::DomainError, "more coordinates than the field degree");
  }
  coords.resize(d);
  bool rational = true;
  for (std::size_t i = 1; i < d; ++i) rational = rational && coords[i] == 0;
  ExactReal x;
  if (rational)
    x.rep_ = coords[0];
  else
    x.rep_ = FieldElement{std::move(context), std::move(coords)};
  return x;
}

ExactReal ExactReal::generator(FieldPtr context) {
  FieldContext::Coords c(context->degree());
  c[1] = 1;
  return field(std::move(context), std::move(c));
}

ExactReal ExactReal::approx(double value, double radius) {
  if (!std::isfinite(value) || !std::isfinite(radius) || radius < 0)
    throw Error(ErrorKind::DomainError, "float value and radius must be finite, radius >= 0");
  ExactReal x;
  x.rep_ = Approx{value, radius};
  return x;
}

const Rational& ExactReal::rational() const {
  if (auto* q = std::get_if<Rational>(&rep_)) return *q;
  throw Error(ErrorKind::DomainError, "value is not rational");
}

const ExactReal::FieldElement& ExactReal::field_element() const {
  if (auto* f = std::get_if<FieldElement>(&rep_)) return *f;
  throw Error(ErrorKind::DomainError, "value is not a number-field element");
}

const ExactReal::Approx& ExactReal::approximation() const {
  if (auto* a = std::get_if<Approx>(&rep_)) return *a;
  throw Error(ErrorKind::DomainError, "value is not a float");
}

const FieldPtr& ExactReal::context() const {
  static const FieldPtr none;
  if (auto* f = std::get_if<FieldElement>(&rep_)) return f->context;
  return none;
}

FieldContext::Coords ExactReal::coordinates(std::size_t degree) const {
  FieldContext::Coords out(std::max<std::size_t>(degree, 1));
  if (auto* q = std::get_if<Rational>(&rep_)) {
    out[0] = *q;
    return out;
  }
  if (auto* f = std::get_if<FieldElement>(&rep_)) {
    if (f->coords.size() > out.size()) throw Error(ErrorKind::MixedContext, "coordinate space too small");
    std::copy(f->coords.begin(), f->coords.end(), out.begin());
    return out;
  }
  throw Error(ErrorKind::InexactInput, "float value has no exact coordinates");
}

Interval ExactReal::enclosure(unsigned bits) const {
  if (auto* q = std::get_if<Rational>(&rep_)) return {*q, *q};
  if (auto* f = std::get_if<FieldElement>(&rep_)) return f->context->evaluate(f->coords, bits);
  throw Error(ErrorKind::InexactInput, "float value has no exact enclosure");
}

double ExactReal::to_double() const {
  if (auto* q = std::get_if<Rational>(&rep_)) return q->get_d();
  if (auto* a = std::get_if<Approx>(&rep_)) return a->value;
  return enclosure(64).midpoint().get_d();
}

ExactReal ExactReal::to_approx() const {
  if (kind() == Kind::Float) return *this;
  Interval box = enclosure(64);
  Rational mid = box.midpoint();
  double v = mid.get_d();
  Rational conv = abs(Rational(v) - mid) + box.width() / 2;
  double r = std::nextafter(conv.get_d(), std::numeric_limits<double>::infinity());
  return approx(v, r);
}

namespace {

constexpr double kUlp = 0x1p-52;

double round_up(double x) { return std::nextafter(x, std::numeric_limits<double>::infinity()); }

double rounding(double v) { return std::abs(v) * kUlp + std::numeric_limits<double>::denorm_min(); }

enum class Op { Add, Sub, Mul, Div };

ExactReal float_op(Op op, const ExactReal::Approx& a, const ExactReal::Approx& b) {
  double v = 0.0;
  double r = 0.0;
  switch (op) {
    case Op::Add:
      v = a.value + b.value;
      r = a.radius + b.radius;
      break;
    case Op::Sub:
      v = a.value - b.value;
      r = a.radius + b.radius;
      break;
    case Op::Mul:
      v = a.value * b.value;
      r = std::abs(a.value) * b.radius + std::abs(b.value) * a.radius + a.radius * b.radius;
      break;
    case Op::Div: {
      double mag = std::abs(b.value);
      if (mag <= b.radius) throw Error(ErrorKind::DivisionByZero, "float divisor interval contains zero");
      v = a.value / b.value;
      r = (std::abs(a.value) * b.radius + mag * a.radius) / (mag * (mag - b.radius));
      break;
    }
  }
  return ExactReal::approx(v, round_up(r + rounding(v)));
}

FieldPtr shared_context(const ExactReal& a, const ExactReal& b) {
  const FieldPtr& ca = a.context();
  const FieldPtr& cb = b.context();
  if (!ca) return cb;
  if (!cb || ca == cb) return ca;
  if (!ca->same_field(*cb))
    throw Error(ErrorKind::MixedContext, "values live in different number fields: " + ca->describe() + " vs " +
                                             cb->describe());
  return ca;
}

ExactReal combine(Op op, const ExactReal& a, const ExactReal& b) {
  if (!a.is_exact() || !b.is_exact())
    return float_op(op, a.to_approx().approximation(), b.to_approx().approximation());
  if (a.is_rational() && b.is_rational()) {
    const Rational& x = a.rational();
    const Rational& y = b.rational();
    switch (op) {
      case Op::Add: return ExactReal(Rational(x + y));
      case Op::Sub: return ExactReal(Rational(x - y));
      case Op::Mul: return ExactReal(Rational(x * y));
      case Op::Div:
        if (y == 0) throw Error(ErrorKind::DivisionByZero, "division by zero");
        return ExactReal(Rational(x / y));
    }
  }
  FieldPtr ctx = shared_context(a, b);
  const std::size_t d = ctx->degree();
  FieldContext::Coords x = a.coordinates(d);
  FieldContext::Coords y = b.coordinates(d);
  switch (op) {
    case Op::Add:
      for (std::size_t i = 0; i < d; ++i) x[i] += y[i];
      return ExactReal::field(ctx, std::move(x));
    case Op::Sub:
      for (std::size_t i = 0; i < d; ++i) x[i] -= y[i];
      return ExactReal::field(ctx, std::move(x));
    case Op::Mul:
      if (b.is_rational()) {
        for (auto& c : x) c *= b.rational();
        return ExactReal::field(ctx, std::move(x));
      }
      if (a.is_rational()) {
        for (auto& c : y) c *= a.rational();
        return ExactReal::field(ctx, std::move(y));
      }
      return ExactReal::field(ctx, ctx->multiply(x, y));
    case Op::Div:
      if (b.is_rational()) {
        if (b.rational() == 0) throw Error(ErrorKind::DivisionByZero, "division by zero");
        for (auto& c : x) c /= b.rational();
        return ExactReal::field(ctx, std::move(x));
      }
      return ExactReal::field(ctx, ctx->multiply(x, ctx->inverse(y)));
  }
  throw Error(ErrorKind::DomainError, "unreachable");
}

}  // namespace

ExactReal operator+(const ExactReal& a, const ExactReal& b) { return combine(Op::Add, a, b); }
ExactReal operator-(const ExactReal& a, const ExactReal& b) { return combine(Op::Sub, a, b); }
ExactReal operator*(const ExactReal& a, const ExactReal& b) { return combine(Op::Mul, a, b); }
ExactReal operator/(const ExactReal& a, const ExactReal& b) { return combine(Op::Div, a, b); }
ExactReal operator-(const ExactReal& a) { return ExactReal(0) - a; }

bool operator==(const ExactReal& a, const ExactReal& b) {
  if (!a.is_exact() || !b.is_exact()) {
    if (a.is_exact() != b.is_exact()) return false;
    return a.approximation().value == b.approximation().value &&
           a.approximation().radius == b.approximation().radius;
  }
  if (a.is_rational() || b.is_rational()) return a.is_rational() && b.is_rational() && a.rational() == b.rational();
  FieldPtr ctx = shared_context(a, b);
  return a.field_element().coords == b.field_element().coords;
}

int sign(const ExactReal& x) {
  switch (x.kind()) {
    case ExactReal::Kind::Rational: return sgn(x.rational());
    case ExactReal::Kind::Float: throw Error(ErrorKind::InexactInput, "exact sign of a float value");
    case ExactReal::Kind::NumberField: break;
  }
  // Irrational, hence nonzero: refinement terminates.
  for (unsigned bits = default_precision_bits(); bits <= kMaxBits; bits *= 2) {
    Interval box = x.enclosure(bits);
    if (box.lo > 0) return 1;
    if (box.hi < 0) return -1;
  }
  throw Error(ErrorKind::NonRealState, "could not separate " + to_string(x) + " from zero");
}

std::strong_ordering compare(const ExactReal& a, const ExactReal& b) {
  auto order = [](int s) {
    return s < 0 ? std::strong_ordering::less : s > 0 ? std::strong_ordering::greater : std::strong_ordering::equal;
  };
  if (a.is_rational() && b.is_rational()) return order(cmp(a.rational(), b.rational()));
  if (!a.is_exact() || !b.is_exact()) throw Error(ErrorKind::InexactInput, "exact comparison of a float value");
  return order(sign(a - b));
}

Integer floor(const ExactReal& x) {
  switch (x.kind()) {
    case ExactReal::Kind::Rational: return floor(x.rational());
    case ExactReal::Kind::Float: throw Error(ErrorKind::InexactInput, "exact floor of a float value");
    case ExactReal::Kind::NumberField: break;
  }
  // Irrational: once the enclosure holds no integer the floor is known.
  for (unsigned bits = default_precision_bits(); bits <= kMaxBits; bits *= 2) {
    Interval box = x.enclosure(bits);
    Integer lo = floor(box.lo);
    if (lo == floor(box.hi)) return lo;
  }
  throw Error(ErrorKind::NonRealState, "could not isolate floor of " + to_string(x));
}

Integer floor_ratio(const ExactReal& y, const ExactReal& x) {
  if (!x.is_exact() || !y.is_exact()) throw Error(ErrorKind::InexactInput, "exact floor of a float value");
  if (x.is_rational() && y.is_rational()) {
    if (x.rational() <= 0) throw Error(ErrorKind::DomainError, "floor_ratio needs a positive divisor");
    return floor(Rational(y.rational() / x.rational()));
  }
  if (sign(x) <= 0) throw Error(ErrorKind::DomainError, "floor_ratio needs a positive divisor");
  std::optional<Integer> checked;
  for (unsigned bits = default_precision_bits(); bits <= kMaxBits; bits *= 2) {
    Interval bx = x.enclosure(bits);
    if (bx.lo <= 0) continue;
    Interval by = y.enclosure(bits);
    Rational q[4] = {by.lo / bx.lo, by.lo / bx.hi, by.hi / bx.lo, by.hi / bx.hi};
    Rational qlo = *std::min_element(q, q + 4);
    Rational qhi = *std::max_element(q, q + 4);
    Integer flo = floor(qlo);
    Integer fhi = floor(qhi);
    if (flo == fhi) return flo;
    if (fhi == flo + 1 && checked != fhi) {
      // Exactly one integer breakpoint inside: it may be the exact quotient.
      checked = fhi;
      if (sign(y - ExactReal(Rational(fhi)) * x) == 0) return fhi;
    }
  }
  throw Error(ErrorKind::NonRealState, "could not isolate floor of a quotient");
}

std::optional<Integer> floor_if_determined(const ExactReal& x) {
  if (x.is_exact()) return floor(x);
  const auto& a = x.approximation();
  double lo = std::floor(a.value - a.radius);
  double hi = std::floor(a.value + a.radius);
  if (lo != hi) return std::nullopt;
  Integer z;
  mpz_set_d(z.get_mpz_t(), lo);
  return z;
}

bool same_field(const ExactReal& a, const ExactReal& b) {
  if (!a.is_exact() || !b.is_exact()) return false;
  const FieldPtr& ca = a.context();
  const FieldPtr& cb = b.context();
  return !ca || !cb || ca == cb || ca->same_field(*cb);
}

FieldPtr common_context(const std::vector<ExactReal>& values) {
  FieldPtr ctx;
  for (const auto& v : values) {
    const FieldPtr& c = v.context();
    if (!c) continue;
    if (!ctx) {
      ctx = c;
    } else if (ctx != c && !ctx->same_field(*c)) {
      throw Error(ErrorKind::MixedContext, "values live in different number fields: " + ctx->describe() + " vs " +
                                               c->describe());
    }
  }
  return ctx;
}

// ---------------------------------------------------------------------------
// Text form

std::string to_string(const ExactReal& x) {
  switch (x.kind()) {
    case ExactReal::Kind::Rational: return to_string(x.rational());
    case ExactReal::Kind::Float: {
      char buf[64];
      std::snprintf(buf, sizeof buf, "float:%.17g", x.approximation().value);
      return buf;
    }
    case ExactReal::Kind::NumberField: break;
  }
  const auto& f = x.field_element();
  std::string out = "nf:" + f.context->describe() + ":(";
  for (std::size_t i = 0; i < f.coords.size(); ++i) {
    if (i) out += ",";
    out += to_string(f.coords[i]);
  }
  return out + ")";
}

namespace {

std::string_view strip(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

std::vector<std::string_view> split_top_level(std::string_view text) {
  std::vector<std::string_view> parts;
  int depth = 0;
  std::size_t start = 0;
  for (std::size_t i = 0; i < text.size(); ++i) {
    char c = text[i];
    if (c == '[' || c == '(') ++depth;
    if (c == ']' || c == ')') --depth;
    if (depth < 0) throw Error(ErrorKind::ParseError, "unbalanced brackets in '" + std::string(text) + "'");
    if (c == ',' && depth == 0) {
      parts.push_back(strip(text.substr(start, i - start)));
      start = i + 1;
    }
  }
  if (depth != 0) throw Error(ErrorKind::ParseError, "unbalanced brackets in '" + std::string(text) + "'");
  parts.push_back(strip(text.substr(start)));
  return parts;
}

ExactReal parse_float(std::string_view body) {
  std::string s(strip(body));
  char* end = nullptr;
  double v = std::strtod(s.c_str(), &end);
  if (s.empty() || end != s.c_str() + s.size() || !std::isfinite(v))
    throw Error(ErrorKind::ParseError, "bad float literal '" + s + "'");
  double radius = 0.0;
  try {
    Rational exact = parse_rational(s);
    radius = Rational(abs(Rational(v) - exact)).get_d();
    if (radius > 0) radius = std::nextafter(radius, std::numeric_limits<double>::infinity());
  } catch (const Error&) {
    radius = std::abs(v) * 0x1p-53;  // exponent notation: half an ulp
  }
  return ExactReal::approx(v, radius);
}

ExactReal parse_field(std::string_view body) {
  // <poly>@[lo,hi]:(c0,c1,...)
  const std::string whole(body);
  auto fail = [&](const std::string& why) -> ExactReal {
    throw Error(ErrorKind::ParseError, "number-field literal 'nf:" + whole + "': " + why);
  };
  auto at = body.find('@');
  if (at == std::string_view::npos) return fail("missing '@'");
  poly::IntPoly minpoly = poly::parse(body.substr(0, at));
  std::string_view rest = body.substr(at + 1);
  if (rest.empty() || rest.front() != '[') return fail("missing '[lo,hi]'");
  auto close = rest.find(']');
  if (close == std::string_view::npos) return fail("missing ']'");
  auto bounds = split_top_level(rest.substr(1, close - 1));
  if (bounds.size() != 2) return fail("interval needs two endpoints");
  Interval iso{parse_rational(bounds[0]), parse_rational(bounds[1])};
  rest = rest.substr(close + 1);
  if (rest.size() < 3 || rest[0] != ':' || rest[1] != '(' || rest.back() != ')') return fail("missing ':(coords)'");
  auto coord_text = split_top_level(rest.substr(2, rest.size() - 3));
  FieldContext::Coords coords;
  for (auto c : coord_text) coords.push_back(parse_rational(c));
  while (!minpoly.empty() && minpoly.back() == 0) minpoly.pop_back();
  if (minpoly.size() == 2) {
    // Degree one: the "field" is Q and the element is its constant coordinate.
    if (minpoly.back() != 1) return fail("minimal polynomial is not monic");
    Rational root(-minpoly[0]);
    if (!iso.contains(root)) return fail("interval does not contain the root");
    for (std::size_t i = 1; i < coords.size(); ++i)
      if (coords[i] != 0) return fail("more coordinates than the field degree");
    return ExactReal(coords.empty() ? Rational(0) : coords[0]);
  }
  auto ctx = FieldContext::intern(std::move(minpoly), std::move(iso));
  if (coords.size() > ctx->degree()) return fail("more coordinates than the field degree");
  return ExactReal::field(std::move(ctx), std::move(coords));
}

}  // namespace

ExactReal parse_exact_real(std::string_view text) {
  text = strip(text);
  if (text.starts_with("float:")) return parse_float(text.substr(6));
  if (text.starts_with("nf:")) return parse_field(text.substr(3));
  return ExactReal(parse_rational(text));
}

std::vector<ExactReal> parse_exact_vector(std::string_view text) {
  std::vector<ExactReal> out;
  for (auto part : split_top_level(text)) {
    if (part.empty()) throw Error(ErrorKind::ParseError, "empty entry in list '" + std::string(text) + "'");
    out.push_back(parse_exact_real(part));
  }
  return out;
}

std::string exact_key(const ExactReal& x) {
  if (!x.is_exact()) throw Error(ErrorKind::InexactState, "float values have no exact key");
  return to_string(x);
}

}  // namespace toric_af
