#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>

#include <gmpxx.h>

namespace bt {

using Rational = mpq_class;

/// Parses "3", "-2/7", "inf" is not accepted here.
Rational parse_rational(const std::string& text);
std::string to_string(const Rational& q);

/// Smallest integer >= q.
long ceil_rational(const Rational& q);
/// Largest integer <= q.
long floor_rational(const Rational& q);

/// Residue-field coefficient: an element of F_p (p >= 2) or of Q (p == 0).
///
/// F_p values are kept as a machine residue; the GMP rational is engaged only
/// for p == 0. Arithmetic between coefficients of different moduli is a
/// logic error and throws.
class Coeff {
 public:
  Coeff() : q_(Rational(0)) {}
  Coeff(long value, std::uint32_t modulus);
  Coeff(const Rational& value, std::uint32_t modulus);

  static Coeff zero(std::uint32_t modulus) { return Coeff(0L, modulus); }
  static Coeff one(std::uint32_t modulus) { return Coeff(1L, modulus); }

  std::uint32_t modulus() const { return p_; }
  bool is_zero() const { return p_ ? r_ == 0 : sgn(*q_) == 0; }
  bool is_one() const { return p_ ? r_ == 1 : *q_ == 1; }

  /// Rational value; for F_p the canonical representative in [0, p).
  Rational to_rational() const;
  /// Signed representative in (-p/2, p/2] for F_p; the value itself for Q.
  Rational centered() const;
  std::int64_t residue() const { return r_; }

  Coeff operator-() const;
  Coeff& operator+=(const Coeff& o);
  Coeff& operator-=(const Coeff& o);
  Coeff& operator*=(const Coeff& o);
  Coeff inverse() const;

  friend Coeff operator+(Coeff a, const Coeff& b) { return a += b; }
  friend Coeff operator-(Coeff a, const Coeff& b) { return a -= b; }
  friend Coeff operator*(Coeff a, const Coeff& b) { return a *= b; }
  friend bool operator==(const Coeff& a, const Coeff& b);
  friend bool operator!=(const Coeff& a, const Coeff& b) { return !(a == b); }

  std::string str() const;

 private:
  void check(const Coeff& o) const {
    if (o.p_ != p_) throw std::logic_error("coefficient moduli differ");
  }

  std::uint32_t p_ = 0;
  std::int64_t r_ = 0;
  std::optional<Rational> q_;
};

std::ostream& operator<<(std::ostream& os, const Coeff& c);

}  // namespace bt
