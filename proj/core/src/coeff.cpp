#include "bt/coeff.hpp"

#include <cctype>
#include <ostream>

namespace bt {

namespace {

std::int64_t mod_reduce(const mpz_class& z, std::uint32_t p) {
  mpz_class r;
  mpz_fdiv_r_ui(r.get_mpz_t(), z.get_mpz_t(), p);
  return static_cast<std::int64_t>(r.get_ui());
}

std::int64_t mod_pow(std::int64_t base, std::int64_t exp, std::int64_t p) {
  std::int64_t result = 1 % p;
  base %= p;
  while (exp > 0) {
    if (exp & 1) result = static_cast<std::int64_t>((static_cast<__int128>(result) * base) % p);
    base = static_cast<std::int64_t>((static_cast<__int128>(base) * base) % p);
    exp >>= 1;
  }
  return result;
}

}  // namespace

Rational parse_rational(const std::string& text) {
  std::string s;
  for (char c : text)
    if (c != ' ') s.push_back(c);
  if (s.empty()) throw std::invalid_argument("empty rational literal");
  if (s[0] == '+') s.erase(0, 1);
  for (char c : s)
    if (!(std::isdigit(static_cast<unsigned char>(c)) || c == '-' || c == '/'))
      throw std::invalid_argument("bad rational literal: " + text);
  Rational q;
  if (q.set_str(s, 10) != 0) throw std::invalid_argument("bad rational literal: " + text);
  if (q.get_den() == 0) throw std::invalid_argument("zero denominator: " + text);
  q.canonicalize();
  return q;
}

std::string to_string(const Rational& q) { return q.get_str(); }

long ceil_rational(const Rational& q) {
  mpz_class r;
  mpz_cdiv_q(r.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
  return r.get_si();
}

long floor_rational(const Rational& q) {
  mpz_class r;
  mpz_fdiv_q(r.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
  return r.get_si();
}

Coeff::Coeff(long value, std::uint32_t modulus) : p_(modulus) {
  if (p_ == 1) throw std::invalid_argument("modulus 1 is not a field");
  if (p_) {
    r_ = value % static_cast<long>(p_);
    if (r_ < 0) r_ += p_;
  } else {
    q_.emplace(value);
  }
}

Coeff::Coeff(const Rational& value, std::uint32_t modulus) : p_(modulus) {
  if (p_ == 1) throw std::invalid_argument("modulus 1 is not a field");
  if (p_) {
    std::int64_t den = mod_reduce(value.get_den(), p_);
    if (den == 0) throw std::domain_error("denominator divisible by the residue characteristic");
    std::int64_t num = mod_reduce(value.get_num(), p_);
    r_ = static_cast<std::int64_t>((static_cast<__int128>(num) * mod_pow(den, p_ - 2, p_)) % p_);
  } else {
    q_.emplace(value);
  }
}

Rational Coeff::to_rational() const { return p_ ? Rational(static_cast<long>(r_)) : *q_; }

Rational Coeff::centered() const {
  if (!p_) return *q_;
  std::int64_t v = r_;
  if (2 * v > static_cast<std::int64_t>(p_)) v -= p_;
  return Rational(static_cast<long>(v));
}

Coeff Coeff::operator-() const {
  Coeff c = *this;
  if (p_)
    c.r_ = r_ == 0 ? 0 : p_ - r_;
  else
    *c.q_ = -*q_;
  return c;
}

Coeff& Coeff::operator+=(const Coeff& o) {
  check(o);
  if (p_) {
    r_ += o.r_;
    if (r_ >= static_cast<std::int64_t>(p_)) r_ -= p_;
  } else {
    *q_ += *o.q_;
  }
  return *this;
}

Coeff& Coeff::operator-=(const Coeff& o) {
  check(o);
  if (p_) {
    r_ -= o.r_;
    if (r_ < 0) r_ += p_;
  } else {
    *q_ -= *o.q_;
  }
  return *this;
}

Coeff& Coeff::operator*=(const Coeff& o) {
  check(o);
  if (p_)
    r_ = static_cast<std::int64_t>((static_cast<__int128>(r_) * o.r_) % p_);
  else
    *q_ *= *o.q_;
  return *this;
}

Coeff Coeff::inverse() const {
  if (is_zero()) throw std::domain_error("inverse of zero coefficient");
  Coeff c = *this;
  if (p_)
    c.r_ = mod_pow(r_, p_ - 2, p_);
  else
    *c.q_ = 1 / *q_;
  return c;
}

bool operator==(const Coeff& a, const Coeff& b) {
  if (a.p_ != b.p_) return false;
  return a.p_ ? a.r_ == b.r_ : *a.q_ == *b.q_;
}

std::string Coeff::str() const { return p_ ? std::to_string(r_) : q_->get_str(); }

std::ostream& operator<<(std::ostream& os, const Coeff& c) { return os << c.str(); }

}  // namespace bt
