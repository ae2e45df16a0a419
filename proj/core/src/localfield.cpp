#include "bt/localfield.hpp"

#include <algorithm>
#include <cctype>
#include <ostream>
#include <sstream>

namespace bt {

namespace {

bool is_prime(std::uint32_t p) {
  if (p < 2) return false;
  for (std::uint32_t d = 2; static_cast<std::uint64_t>(d) * d <= p; ++d)
    if (p % d == 0) return false;
  return true;
}

std::int64_t sat_add(std::int64_t a, std::int64_t b) {
  if (a >= FieldElem::kExact || b >= FieldElem::kExact) return FieldElem::kExact;
  return a + b;
}

// Exponent (rational) to integer units of 1/e.
std::int64_t to_units(const Rational& exponent, int e) {
  Rational scaled = exponent * e;
  if (scaled.get_den() != 1)
    throw std::invalid_argument("exponent " + exponent.get_str() + " not in (1/" + std::to_string(e) + ")Z");
  return scaled.get_num().get_si();
}

Rational from_units(std::int64_t units, int e) {
  Rational q(static_cast<long>(units), static_cast<unsigned long>(e));
  q.canonicalize();
  return q;
}

}  // namespace

FieldConfigPtr make_field(std::uint32_t residue_char, int precision, int ramification) {
  if (residue_char != 0 && !is_prime(residue_char))
    throw std::invalid_argument("residue characteristic must be 0 or a prime");
  if (precision < 1) throw std::invalid_argument("precision must be >= 1");
  if (ramification < 1) throw std::invalid_argument("ramification must be >= 1");
  if (ramification == 2 && residue_char == 2)
    throw std::invalid_argument("the ramified quadratic needs residue characteristic != 2");
  auto cfg = std::make_shared<FieldConfig>();
  cfg->residue_char = residue_char;
  cfg->precision = precision;
  cfg->ramification = ramification;
  return cfg;
}

FieldElem::FieldElem(FieldConfigPtr cfg) : cfg_(std::move(cfg)) {
  if (!cfg_) throw std::invalid_argument("null field configuration");
}

FieldElem FieldElem::from_int(const FieldConfigPtr& cfg, long n) {
  return from_coeff(cfg, Coeff(n, cfg->residue_char));
}

FieldElem FieldElem::from_rational(const FieldConfigPtr& cfg, const Rational& q) {
  return from_coeff(cfg, Coeff(q, cfg->residue_char));
}

FieldElem FieldElem::from_coeff(const FieldConfigPtr& cfg, const Coeff& c) {
  return monomial(cfg, c, Rational(0));
}

FieldElem FieldElem::monomial(const FieldConfigPtr& cfg, const Coeff& c, const Rational& exponent) {
  FieldElem x(cfg);
  if (c.is_zero()) return x;
  x.lo_ = to_units(exponent, cfg->ramification);
  x.c_.push_back(c);
  return x;
}

FieldElem FieldElem::t_power(const FieldConfigPtr& cfg, const Rational& exponent) {
  return monomial(cfg, Coeff::one(cfg->residue_char), exponent);
}

FieldElem FieldElem::big_o(const FieldConfigPtr& cfg, const Rational& bound) {
  FieldElem x(cfg);
  x.prec_ = to_units(bound, cfg->ramification);
  return x;
}

FieldElem FieldElem::from_digits(const FieldConfigPtr& cfg, std::int64_t lo, std::vector<Coeff> digits,
                                 std::int64_t prec_units) {
  FieldElem x(cfg);
  x.lo_ = lo;
  x.c_ = std::move(digits);
  x.prec_ = prec_units;
  x.normalize();
  return x;
}

void FieldElem::require_same(const FieldElem& o) const {
  if (!cfg_ || !o.cfg_) throw std::logic_error("detached field element");
  if (cfg_ != o.cfg_ &&
      (cfg_->residue_char != o.cfg_->residue_char || cfg_->ramification != o.cfg_->ramification))
    throw std::logic_error("field elements from incompatible configurations");
}

void FieldElem::normalize() {
  if (prec_ < kExact) {
    std::int64_t keep = prec_ - lo_;
    if (keep < 0) keep = 0;
    if (static_cast<std::int64_t>(c_.size()) > keep) c_.resize(static_cast<std::size_t>(keep));
  }
  std::size_t lead = 0;
  while (lead < c_.size() && c_[lead].is_zero()) ++lead;
  if (lead == c_.size()) {
    c_.clear();
    lo_ = 0;
    return;
  }
  if (lead) {
    c_.erase(c_.begin(), c_.begin() + static_cast<std::ptrdiff_t>(lead));
    lo_ += static_cast<std::int64_t>(lead);
  }
  while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
  // Capped relative precision.
  std::int64_t cap = lo_ + cfg_->cap_units();
  if (prec_ > cap) {
    if (prec_ >= kExact && static_cast<std::int64_t>(c_.size()) <= cfg_->cap_units()) return;
    prec_ = cap;
    std::int64_t keep = prec_ - lo_;
    if (static_cast<std::int64_t>(c_.size()) > keep) c_.resize(static_cast<std::size_t>(keep));
    while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
  }
}

std::optional<Rational> FieldElem::valuation() const {
  if (!c_.empty()) return from_units(lo_, cfg_->ramification);
  if (is_exact()) return std::nullopt;
  throw PrecisionError("valuation of an element known only as " + str());
}

std::optional<Rational> FieldElem::valuation_lower_bound() const {
  if (!c_.empty()) return from_units(lo_, cfg_->ramification);
  if (is_exact()) return std::nullopt;
  return from_units(prec_, cfg_->ramification);
}

std::optional<Rational> FieldElem::known_to() const {
  if (is_exact()) return std::nullopt;
  return from_units(prec_, cfg_->ramification);
}

bool FieldElem::valuation_at_least(const Rational& bound, bool strict) const {
  if (!c_.empty()) {
    Rational v = from_units(lo_, cfg_->ramification);
    return strict ? v > bound : v >= bound;
  }
  if (is_exact()) return true;
  // O(t^k): every completion has valuation >= k.
  Rational k = from_units(prec_, cfg_->ramification);
  if (strict ? k > bound : k >= bound) return true;
  throw PrecisionError("cannot compare " + str() + " against t^" + bound.get_str());
}

bool FieldElem::is_unit() const {
  if (c_.empty()) {
    if (is_exact() || prec_ <= 0) return false;
    throw PrecisionError("unit test on " + str());
  }
  return lo_ == 0;
}

Coeff FieldElem::leading_coeff() const {
  if (c_.empty()) throw PrecisionError("leading coefficient of " + str());
  return c_.front();
}

Coeff FieldElem::coeff_at(const Rational& exponent) const {
  std::int64_t u = to_units(exponent, cfg_->ramification);
  if (u >= prec_) throw PrecisionError("coefficient of t^" + exponent.get_str() + " beyond precision in " + str());
  if (u < lo_ || u >= lo_ + static_cast<std::int64_t>(c_.size())) return coeff_zero();
  return c_[static_cast<std::size_t>(u - lo_)];
}

FieldElem FieldElem::operator-() const {
  FieldElem x = *this;
  for (auto& c : x.c_) c = -c;
  return x;
}

FieldElem& FieldElem::operator+=(const FieldElem& o) {
  require_same(o);
  if (o.c_.empty() && o.is_exact()) return *this;
  std::int64_t prec = std::min(prec_, o.prec_);
  if (c_.empty() && o.c_.empty()) {
    prec_ = prec;
    return *this;
  }
  std::int64_t lo = c_.empty() ? o.lo_ : (o.c_.empty() ? lo_ : std::min(lo_, o.lo_));
  std::int64_t hi = std::max(c_.empty() ? lo : lo_ + static_cast<std::int64_t>(c_.size()),
                             o.c_.empty() ? lo : o.lo_ + static_cast<std::int64_t>(o.c_.size()));
  hi = std::min(hi, std::max(prec, lo));
  std::vector<Coeff> out(static_cast<std::size_t>(std::max<std::int64_t>(hi - lo, 0)), coeff_zero());
  for (std::size_t i = 0; i < c_.size(); ++i) {
    std::int64_t k = lo_ + static_cast<std::int64_t>(i) - lo;
    if (k < static_cast<std::int64_t>(out.size())) out[static_cast<std::size_t>(k)] += c_[i];
  }
  for (std::size_t i = 0; i < o.c_.size(); ++i) {
    std::int64_t k = o.lo_ + static_cast<std::int64_t>(i) - lo;
    if (k < static_cast<std::int64_t>(out.size())) out[static_cast<std::size_t>(k)] += o.c_[i];
  }
  lo_ = lo;
  c_ = std::move(out);
  prec_ = prec;
  normalize();
  return *this;
}

FieldElem& FieldElem::operator-=(const FieldElem& o) { return *this += -o; }

FieldElem& FieldElem::operator*=(const FieldElem& o) {
  require_same(o);
  if ((c_.empty() && is_exact()) || (o.c_.empty() && o.is_exact())) {
    c_.clear();
    lo_ = 0;
    prec_ = kExact;
    return *this;
  }
  // Valuations (or their lower bounds for O(t^k)).
  std::int64_t v1 = c_.empty() ? prec_ : lo_;
  std::int64_t v2 = o.c_.empty() ? o.prec_ : o.lo_;
  std::int64_t prec = std::min(sat_add(v1, o.prec_), sat_add(v2, prec_));
  if (c_.empty() || o.c_.empty()) {
    c_.clear();
    lo_ = 0;
    prec_ = prec;
    return *this;
  }
  std::int64_t cap = v1 + v2 + cfg_->cap_units();
  std::int64_t full = static_cast<std::int64_t>(c_.size() + o.c_.size() - 1);
  std::int64_t limit = std::min({prec, cap, v1 + v2 + full}) - (v1 + v2);
  if (limit < 0) limit = 0;
  std::vector<Coeff> out(static_cast<std::size_t>(limit), coeff_zero());
  for (std::size_t i = 0; i < c_.size() && static_cast<std::int64_t>(i) < limit; ++i) {
    if (c_[i].is_zero()) continue;
    std::size_t jmax = std::min(o.c_.size(), static_cast<std::size_t>(limit) - i);
    for (std::size_t j = 0; j < jmax; ++j) out[i + j] += c_[i] * o.c_[j];
  }
  if (prec >= kExact && full > cfg_->cap_units()) prec = cap;
  lo_ = v1 + v2;
  c_ = std::move(out);
  prec_ = prec;
  normalize();
  return *this;
}

FieldElem FieldElem::inverse() const {
  if (c_.empty()) {
    if (is_exact()) throw std::domain_error("inverse of zero");
    throw PrecisionError("inverse of an element indistinguishable from zero: " + str());
  }
  FieldElem r(cfg_);
  if (is_exact() && c_.size() == 1) {
    r.lo_ = -lo_;
    r.c_.push_back(c_[0].inverse());
    return r;
  }
  std::int64_t rel = is_exact() ? cfg_->cap_units() : std::min(prec_ - lo_, cfg_->cap_units());
  Coeff b0 = c_[0].inverse();
  std::vector<Coeff> b(static_cast<std::size_t>(rel), coeff_zero());
  if (rel > 0) b[0] = b0;
  for (std::int64_t k = 1; k < rel; ++k) {
    Coeff acc = coeff_zero();
    std::int64_t imax = std::min<std::int64_t>(k, static_cast<std::int64_t>(c_.size()) - 1);
    for (std::int64_t i = 1; i <= imax; ++i)
      acc += c_[static_cast<std::size_t>(i)] * b[static_cast<std::size_t>(k - i)];
    b[static_cast<std::size_t>(k)] = -(b0 * acc);
  }
  r.lo_ = -lo_;
  r.c_ = std::move(b);
  r.prec_ = -lo_ + rel;
  r.normalize();
  return r;
}

FieldElem FieldElem::pow(long n) const {
  if (n < 0) return inverse().pow(-n);
  FieldElem result = from_int(cfg_, 1);
  FieldElem base = *this;
  while (n > 0) {
    if (n & 1) result *= base;
    n >>= 1;
    if (n) base *= base;
  }
  return result;
}

FieldElem FieldElem::shifted(const Rational& exponent) const {
  std::int64_t s = to_units(exponent, cfg_->ramification);
  FieldElem x = *this;
  if (!x.c_.empty()) x.lo_ += s;
  if (!x.is_exact()) x.prec_ += s;
  return x;
}

FieldElem FieldElem::truncated(const Rational& bound) const {
  std::int64_t b = to_units(bound, cfg_->ramification);
  FieldElem x = *this;
  if (b < x.prec_) {
    x.prec_ = b;
    x.normalize();
  }
  return x;
}

namespace {

std::string exponent_text(std::int64_t units, int e) {
  Rational q = from_units(units, e);
  if (q.get_den() == 1) {
    if (q == 1) return "t";
    return "t^" + q.get_str();
  }
  return "t^(" + q.get_str() + ")";
}

}  // namespace

std::string FieldElem::str() const {
  if (!cfg_) return "0";
  std::ostringstream os;
  bool first = true;
  int e = cfg_->ramification;
  for (std::size_t i = 0; i < c_.size(); ++i) {
    if (c_[i].is_zero()) continue;
    std::int64_t u = lo_ + static_cast<std::int64_t>(i);
    Rational c = c_[i].centered();
    bool neg = c < 0;
    if (neg) c = -c;
    if (first)
      os << (neg ? "-" : "");
    else
      os << (neg ? " - " : " + ");
    first = false;
    std::string cs = c.get_str();
    bool frac = c.get_den() != 1;
    if (u == 0) {
      os << cs;
    } else {
      if (c != 1) os << (frac ? "(" + cs + ")" : cs) << "*";
      os << exponent_text(u, e);
    }
  }
  if (!is_exact()) {
    if (!first) os << " + ";
    first = false;
    os << "O(" << (prec_ == 0 ? std::string("1") : exponent_text(prec_, e)) << ")";
  }
  if (first) os << "0";
  return os.str();
}

std::ostream& operator<<(std::ostream& os, const FieldElem& x) { return os << x.str(); }

// ---------------------------------------------------------------------------
// Literal parser.

namespace {

class SeriesParser {
 public:
  SeriesParser(const FieldConfigPtr& cfg, const std::string& s) : cfg_(cfg) {
    for (char c : s)
      if (!std::isspace(static_cast<unsigned char>(c))) s_.push_back(c);
  }

  FieldElem parse() {
    FieldElem acc(cfg_);
    if (s_.empty()) fail("empty literal");
    bool first = true;
    while (pos_ < s_.size()) {
      int sign = 1;
      if (peek() == '+' || peek() == '-') {
        sign = peek() == '-' ? -1 : 1;
        ++pos_;
      } else if (!first) {
        fail("expected + or -");
      }
      first = false;
      FieldElem term = parse_term();
      if (sign < 0) term = -term;
      acc += term;
    }
    return acc;
  }

 private:
  char peek() const { return pos_ < s_.size() ? s_[pos_] : '\0'; }
  [[noreturn]] void fail(const std::string& what) const {
    throw std::invalid_argument("series literal '" + s_ + "': " + what);
  }

  Rational parse_number() {
    std::size_t start = pos_;
    while (std::isdigit(static_cast<unsigned char>(peek()))) ++pos_;
    if (start == pos_) fail("expected a number");
    std::string txt = s_.substr(start, pos_ - start);
    if (peek() == '/') {
      ++pos_;
      std::size_t d = pos_;
      while (std::isdigit(static_cast<unsigned char>(peek()))) ++pos_;
      if (d == pos_) fail("expected a denominator");
      txt += "/" + s_.substr(d, pos_ - d);
    }
    return parse_rational(txt);
  }

  Rational parse_signed_rational() {
    bool neg = false;
    if (peek() == '-') {
      neg = true;
      ++pos_;
    }
    Rational q = parse_number();
    return neg ? Rational(-q) : q;
  }

  Rational parse_exponent() {
    if (peek() != '^') return Rational(1);
    ++pos_;
    if (peek() == '(') {
      ++pos_;
      Rational q = parse_signed_rational();
      if (peek() != ')') fail("expected )");
      ++pos_;
      return q;
    }
    return parse_signed_rational();
  }

  FieldElem parse_term() {
    if (s_.compare(pos_, 2, "O(") == 0) {
      pos_ += 2;
      Rational bound(0);
      if (peek() == 't') {
        ++pos_;
        bound = parse_exponent();
      } else if (peek() == '1') {
        ++pos_;
      } else {
        fail("expected t inside O()");
      }
      if (peek() != ')') fail("expected )");
      ++pos_;
      return FieldElem::big_o(cfg_, bound);
    }
    Rational coeff(1);
    bool have_coeff = false;
    if (peek() == '(') {
      ++pos_;
      coeff = parse_signed_rational();
      if (peek() != ')') fail("expected )");
      ++pos_;
      have_coeff = true;
    } else if (std::isdigit(static_cast<unsigned char>(peek()))) {
      coeff = parse_number();
      have_coeff = true;
    }
    Rational exponent(0);
    if (have_coeff && peek() == '*') ++pos_;
    if (peek() == 't') {
      ++pos_;
      exponent = parse_exponent();
    } else if (!have_coeff) {
      fail("expected a coefficient or t");
    }
    return FieldElem::monomial(cfg_, Coeff(coeff, cfg_->residue_char), exponent);
  }

  FieldConfigPtr cfg_;
  std::string s_;
  std::size_t pos_ = 0;
};

}  // namespace

FieldElem FieldElem::parse(const FieldConfigPtr& cfg, const std::string& literal) {
  return SeriesParser(cfg, literal).parse();
}

// ---------------------------------------------------------------------------
// Quadratic extension.

QuadExt::QuadExt(FieldConfigPtr cfg) : field(std::move(cfg)) {
  if (!field || field->ramification != 2)
    throw std::invalid_argument("quadratic extension needs a field with ramification 2");
  if (field->residue_char == 2) throw std::invalid_argument("residue characteristic 2 is not supported");
}

FieldElem QuadExt::uniformizer() const { return FieldElem::t_power(field, Rational(1, 2)); }

FieldElem quad_op(const QuadExt& ext, const FieldElem& x, QuadOp which) {
  if (x.config()->ramification != ext.field->ramification)
    throw std::invalid_argument("element does not lie in the quadratic extension");
  std::vector<Coeff> d = x.digits();
  for (std::size_t i = 0; i < d.size(); ++i) {
    std::int64_t u = x.low_units() + static_cast<std::int64_t>(i);
    if (u % 2 != 0) d[i] = -d[i];
  }
  FieldElem s = FieldElem::from_digits(x.config(), x.low_units(), std::move(d), x.prec_units());
  switch (which) {
    case QuadOp::sigma:
      return s;
    case QuadOp::trace:
      return x + s;
    case QuadOp::norm:
      return x * s;
  }
  return s;
}

bool lies_in_base_field(const FieldElem& x) {
  int e = x.ramification();
  for (std::size_t i = 0; i < x.digits().size(); ++i) {
    std::int64_t u = x.low_units() + static_cast<std::int64_t>(i);
    if (u % e != 0 && !x.digits()[i].is_zero()) return false;
  }
  return true;
}

H0Elem H0Elem::from_u_and_trace_zero(const FieldElem& u, const FieldElem& w) {
  FieldElem half = FieldElem::from_rational(u.config(), Rational(1, 2));
  return {u, half * norm(u) + w};
}

FieldElem H0Elem::trace_zero_part() const {
  FieldElem half = FieldElem::from_rational(u.config(), Rational(1, 2));
  return v - half * norm(u);
}

bool satisfies_h0(const H0Elem& x) { return equal_within_precision(norm(x.u), trace(x.v)); }

H0Elem h0_compose(const QuadExt& ext, const H0Elem& a, const H0Elem& b) {
  if (!satisfies_h0(a) || !satisfies_h0(b)) throw std::invalid_argument("operand violates u*sigma(u) = v + sigma(v)");
  return {a.u + b.u, a.v + b.v + quad_op(ext, a.u, QuadOp::sigma) * b.u};
}

H0Elem h0_inverse(const QuadExt& ext, const H0Elem& a) {
  if (!satisfies_h0(a)) throw std::invalid_argument("operand violates u*sigma(u) = v + sigma(v)");
  return {-a.u, quad_op(ext, a.v, QuadOp::sigma)};
}

Rational mu_constant(std::uint32_t residue_char) {
  if (residue_char == 2) throw std::invalid_argument("mu is only computed in residue characteristic != 2");
  // Every x with Tr(x) = 1 is 1/2 + w with w trace-zero. Trace-zero elements
  // are L * pi', so omega(w) lies in Z + 1/2 and never cancels the constant:
  // omega(x) = min(0, omega(w)) <= 0, attained at w = 0.
  return Rational(0);
}

Rational mu_constant(const QuadExt& ext) { return mu_constant(ext.field->residue_char); }

Rational gamma_constant(const QuadExt& ext) { return -mu_constant(ext) / 2; }

}  // namespace bt
