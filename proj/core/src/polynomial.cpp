#include "bt/polynomial.hpp"

#include <algorithm>
#include <cctype>
#include <optional>
#include <sstream>
#include <stdexcept>

namespace bt {

int PolyRing::index_of(const std::string& name) const {
  auto it = std::find(vars.begin(), vars.end(), name);
  return it == vars.end() ? -1 : static_cast<int>(it - vars.begin());
}

PolyRingPtr make_ring(std::vector<std::string> vars, std::uint32_t modulus) {
  for (std::size_t i = 0; i < vars.size(); ++i)
    for (std::size_t j = i + 1; j < vars.size(); ++j)
      if (vars[i] == vars[j]) throw std::invalid_argument("duplicate variable " + vars[i]);
  auto r = std::make_shared<PolyRing>();
  r->vars = std::move(vars);
  r->modulus = modulus;
  return r;
}

PolyRingPtr union_ring(const PolyRingPtr& a, const PolyRingPtr& b) {
  if (a->modulus != b->modulus) throw std::invalid_argument("rings over different coefficient fields");
  std::vector<std::string> v = a->vars;
  for (const auto& n : b->vars)
    if (a->index_of(n) < 0) v.push_back(n);
  if (v.size() == a->vars.size()) return a;
  return make_ring(v, a->modulus);
}

Poly::Poly(PolyRingPtr ring) : ring_(std::move(ring)) {
  if (!ring_) throw std::invalid_argument("polynomial without a ring");
}

Poly Poly::constant(const PolyRingPtr& ring, const Coeff& c) {
  Poly p(ring);
  p.add_term(Exponents(ring->vars.size(), 0), c);
  return p;
}

Poly Poly::constant(const PolyRingPtr& ring, long c) { return constant(ring, Coeff(c, ring->modulus)); }

Poly Poly::var(const PolyRingPtr& ring, const std::string& name) {
  int i = ring->index_of(name);
  if (i < 0) throw std::invalid_argument("unknown variable " + name);
  Poly p(ring);
  Exponents e(ring->vars.size(), 0);
  e[i] = 1;
  p.add_term(e, Coeff::one(ring->modulus));
  return p;
}

void Poly::check(const Poly& o) const {
  if (ring_ != o.ring_ && ring_->vars != o.ring_->vars) throw std::logic_error("polynomials over different rings");
}

void Poly::add_term(const Exponents& e, const Coeff& c) {
  if (c.is_zero()) return;
  auto it = terms_.find(e);
  if (it == terms_.end()) {
    terms_.emplace(e, c);
    return;
  }
  it->second += c;
  if (it->second.is_zero()) terms_.erase(it);
}

bool Poly::is_constant() const {
  return terms_.empty() ||
         (terms_.size() == 1 && std::all_of(terms_.begin()->first.begin(), terms_.begin()->first.end(),
                                            [](int x) { return x == 0; }));
}

Coeff Poly::constant_term() const {
  auto it = terms_.find(Exponents(ring_->vars.size(), 0));
  return it == terms_.end() ? Coeff::zero(ring_->modulus) : it->second;
}

int Poly::total_degree() const {
  int d = -1;
  for (const auto& [e, c] : terms_) {
    int s = 0;
    for (int x : e) s += x;
    d = std::max(d, s);
  }
  return d;
}

int Poly::degree_in(const std::string& name) const {
  int i = ring_->index_of(name);
  if (i < 0) return 0;
  int d = 0;
  for (const auto& [e, c] : terms_) d = std::max(d, e[i]);
  return d;
}

int Poly::order_in(const std::string& name) const {
  if (is_zero()) throw std::domain_error("order of vanishing of the zero polynomial");
  int i = ring_->index_of(name);
  if (i < 0) return 0;
  int k = 0;
  Poly q = *this;
  // Repeated exact division: the order along a coordinate hyperplane.
  while (std::all_of(q.terms_.begin(), q.terms_.end(), [i](const auto& t) { return t.first[i] > 0; })) {
    q = q.divided_by_power(name, 1);
    ++k;
  }
  return k;
}

Poly Poly::divided_by_power(const std::string& name, int k) const {
  int i = ring_->index_of(name);
  if (k == 0) return *this;
  if (i < 0) throw std::invalid_argument("not divisible by " + name);
  Poly q(ring_);
  for (const auto& [e, c] : terms_) {
    if (e[i] < k) throw std::invalid_argument("not divisible by " + name + "^" + std::to_string(k));
    Exponents f = e;
    f[i] -= k;
    q.terms_.emplace(f, c);
  }
  return q;
}

bool Poly::involves(const std::string& name) const { return degree_in(name) > 0; }

Poly Poly::coefficient_of(const std::string& name, int k) const {
  int i = ring_->index_of(name);
  Poly q(ring_);
  for (const auto& [e, c] : terms_) {
    int ei = i < 0 ? 0 : e[i];
    if (ei != k) continue;
    Exponents f = e;
    if (i >= 0) f[i] = 0;
    q.add_term(f, c);
  }
  return q;
}

Poly Poly::operator-() const {
  Poly q = *this;
  for (auto& [e, c] : q.terms_) c = -c;
  return q;
}

Poly& Poly::operator+=(const Poly& o) {
  check(o);
  for (const auto& [e, c] : o.terms_) add_term(e, c);
  return *this;
}

Poly& Poly::operator-=(const Poly& o) {
  check(o);
  for (const auto& [e, c] : o.terms_) add_term(e, -c);
  return *this;
}

Poly& Poly::operator*=(const Poly& o) {
  check(o);
  std::map<Exponents, Coeff> out;
  Exponents f(ring_->vars.size());
  for (const auto& [e1, c1] : terms_) {
    for (const auto& [e2, c2] : o.terms_) {
      for (std::size_t i = 0; i < f.size(); ++i) f[i] = e1[i] + e2[i];
      Coeff c = c1 * c2;
      auto it = out.find(f);
      if (it == out.end())
        out.emplace(f, c);
      else
        it->second += c;
    }
  }
  for (auto it = out.begin(); it != out.end();) {
    if (it->second.is_zero())
      it = out.erase(it);
    else
      ++it;
  }
  terms_ = std::move(out);
  return *this;
}

Poly Poly::pow(int n) const {
  if (n < 0) throw std::invalid_argument("negative power of a polynomial");
  Poly r = one_like(*this);
  Poly b = *this;
  while (n) {
    if (n & 1) r *= b;
    n >>= 1;
    if (n) b *= b;
  }
  return r;
}

bool operator==(const Poly& a, const Poly& b) {
  a.check(b);
  return a.terms_ == b.terms_;
}

Poly Poly::substitute(const std::map<std::string, Poly>& images) const {
  PolyRingPtr target = ring_;
  for (const auto& [n, p] : images) target = union_ring(target, p.ring());
  std::vector<std::optional<Poly>> img(ring_->vars.size());
  for (std::size_t i = 0; i < ring_->vars.size(); ++i) {
    auto it = images.find(ring_->vars[i]);
    img[i] = it != images.end() ? it->second.embed(target) : Poly::var(target, ring_->vars[i]);
  }
  // Cache powers per variable.
  std::vector<std::vector<Poly>> powers(ring_->vars.size());
  auto power = [&](std::size_t i, int k) -> const Poly& {
    auto& pw = powers[i];
    if (pw.empty()) pw.push_back(Poly::constant(target, 1));
    while (static_cast<int>(pw.size()) <= k) pw.push_back(pw.back() * *img[i]);
    return pw[k];
  };
  Poly out(target);
  for (const auto& [e, c] : terms_) {
    Poly t = Poly::constant(target, c);
    for (std::size_t i = 0; i < e.size(); ++i)
      if (e[i]) t *= power(i, e[i]);
    out += t;
  }
  return out;
}

Poly Poly::embed(const PolyRingPtr& target) const {
  if (target == ring_) return *this;
  if (target->modulus != ring_->modulus) throw std::invalid_argument("embedding across coefficient fields");
  std::vector<int> map(ring_->vars.size());
  for (std::size_t i = 0; i < map.size(); ++i) {
    map[i] = target->index_of(ring_->vars[i]);
    if (map[i] < 0) {
      for (const auto& [e, c] : terms_)
        if (e[i]) throw std::invalid_argument("target ring lacks variable " + ring_->vars[i]);
    }
  }
  Poly q(target);
  for (const auto& [e, c] : terms_) {
    Exponents f(target->vars.size(), 0);
    for (std::size_t i = 0; i < e.size(); ++i)
      if (e[i]) f[map[i]] = e[i];
    q.add_term(f, c);
  }
  return q;
}

Poly Poly::reduce_mod(std::uint32_t p) const {
  if (ring_->modulus != 0) throw std::invalid_argument("reduction needs rational coefficients");
  auto target = make_ring(ring_->vars, p);
  Poly q(target);
  for (const auto& [e, c] : terms_) q.add_term(e, Coeff(c.to_rational(), p));
  return q;
}

std::string Poly::str() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  // Highest total degree first for readability.
  std::vector<std::pair<Exponents, Coeff>> ts(terms_.begin(), terms_.end());
  std::stable_sort(ts.begin(), ts.end(), [](const auto& a, const auto& b) {
    int da = 0, db = 0;
    for (int x : a.first) da += x;
    for (int x : b.first) db += x;
    return da > db;
  });
  for (const auto& [e, c] : ts) {
    Rational q = c.centered();
    bool neg = q < 0;
    if (neg) q = -q;
    os << (first ? (neg ? "-" : "") : (neg ? " - " : " + "));
    first = false;
    std::string mono;
    for (std::size_t i = 0; i < e.size(); ++i) {
      if (!e[i]) continue;
      if (!mono.empty()) mono += "*";
      mono += ring_->vars[i];
      if (e[i] > 1) mono += "^" + std::to_string(e[i]);
    }
    if (mono.empty()) {
      os << q.get_str();
    } else {
      if (q != 1) os << (q.get_den() != 1 ? "(" + q.get_str() + ")" : q.get_str()) << "*";
      os << mono;
    }
  }
  return os.str();
}

namespace {

class PolyParser {
 public:
  PolyParser(const PolyRingPtr& ring, const std::string& text) : ring_(ring) {
    for (char c : text)
      if (!std::isspace(static_cast<unsigned char>(c))) s_.push_back(c);
  }

  Poly parse() {
    if (s_.empty()) fail("empty polynomial");
    Poly p = expr();
    if (pos_ != s_.size()) fail("unexpected '" + std::string(1, s_[pos_]) + "'");
    return p;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const {
    throw std::invalid_argument("polynomial '" + s_ + "': " + what);
  }
  char peek() const { return pos_ < s_.size() ? s_[pos_] : '\0'; }

  Poly expr() {
    Poly acc = term();
    while (peek() == '+' || peek() == '-') {
      char op = s_[pos_++];
      Poly t = term();
      if (op == '+') acc += t;
      else acc -= t;
    }
    return acc;
  }

  Poly term() {
    Poly acc = factor();
    while (peek() == '*') {
      ++pos_;
      acc *= factor();
    }
    return acc;
  }

  Poly factor() {
    if (peek() == '-') {
      ++pos_;
      return -factor();
    }
    Poly b = base();
    if (peek() == '^') {
      ++pos_;
      std::size_t start = pos_;
      while (std::isdigit(static_cast<unsigned char>(peek()))) ++pos_;
      if (start == pos_) fail("expected an exponent");
      b = b.pow(std::stoi(s_.substr(start, pos_ - start)));
    }
    return b;
  }

  Poly base() {
    char c = peek();
    if (c == '(') {
      ++pos_;
      Poly p = expr();
      if (peek() != ')') fail("expected )");
      ++pos_;
      return p;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t start = pos_;
      while (std::isdigit(static_cast<unsigned char>(peek()))) ++pos_;
      std::string num = s_.substr(start, pos_ - start);
      if (peek() == '/') {
        ++pos_;
        std::size_t d = pos_;
        while (std::isdigit(static_cast<unsigned char>(peek()))) ++pos_;
        if (d == pos_) fail("expected a denominator");
        num += "/" + s_.substr(d, pos_ - d);
      }
      return Poly::constant(ring_, Coeff(parse_rational(num), ring_->modulus));
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t start = pos_;
      while (std::isalnum(static_cast<unsigned char>(peek())) || peek() == '_' || peek() == '\'') ++pos_;
      std::string name = s_.substr(start, pos_ - start);
      if (ring_->index_of(name) < 0) fail("unknown variable " + name);
      return Poly::var(ring_, name);
    }
    fail("unexpected character");
  }

  PolyRingPtr ring_;
  std::string s_;
  std::size_t pos_ = 0;
};

}  // namespace

Poly Poly::parse(const PolyRingPtr& ring, const std::string& text) { return PolyParser(ring, text).parse(); }

// ---------------------------------------------------------------------------

RatFunc::RatFunc(Poly num) : num_(num), den_(Poly::one_like(num)) {}

RatFunc::RatFunc(Poly num, Poly den) : num_(std::move(num)), den_(std::move(den)) {
  if (den_.is_zero()) throw std::domain_error("zero denominator");
}

RatFunc operator+(const RatFunc& a, const RatFunc& b) {
  if (a.den_ == b.den_) return RatFunc(a.num_ + b.num_, a.den_);
  if (b.den_.is_constant()) {
    Poly inv = Poly::constant(b.den_.ring(), b.den_.constant_term().inverse());
    return RatFunc(a.num_ + b.num_ * inv * a.den_, a.den_);
  }
  if (a.den_.is_constant()) return b + a;
  return RatFunc(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
}

RatFunc operator*(const RatFunc& a, const RatFunc& b) {
  if (a.num_.is_zero() || b.num_.is_zero()) return RatFunc(Poly(a.num_.ring()));
  if (a.den_ == b.num_) return RatFunc(a.num_, b.den_);
  if (b.den_ == a.num_) return RatFunc(b.num_, a.den_);
  return RatFunc(a.num_ * b.num_, a.den_ * b.den_);
}

RatFunc RatFunc::inverse() const {
  if (num_.is_zero()) throw std::domain_error("inverse of zero rational function");
  return RatFunc(den_, num_);
}

RatFunc operator/(const RatFunc& a, const RatFunc& b) { return a * b.inverse(); }

bool operator==(const RatFunc& a, const RatFunc& b) {
  if (a.den_ == b.den_) return a.num_ == b.num_;
  return a.num_ * b.den_ == b.num_ * a.den_;
}

RatFunc RatFunc::substitute(const std::map<std::string, Poly>& images) const {
  return RatFunc(num_.substitute(images), den_.substitute(images));
}

std::string RatFunc::str() const {
  if (den_.is_constant() && den_.constant_term().is_one()) return num_.str();
  return "(" + num_.str() + ")/(" + den_.str() + ")";
}

}  // namespace bt
