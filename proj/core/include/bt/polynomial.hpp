#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <string>
#include <vector>

#include "bt/coeff.hpp"

namespace bt {

/// Variable names and coefficient field shared by a family of polynomials.
struct PolyRing {
  std::vector<std::string> vars;
  std::uint32_t modulus = 0;  ///< 0: rational coefficients

  int index_of(const std::string& name) const;
};

using PolyRingPtr = std::shared_ptr<const PolyRing>;

PolyRingPtr make_ring(std::vector<std::string> vars, std::uint32_t modulus = 0);
/// Ring with the union of the variables of a and b (a's order first).
PolyRingPtr union_ring(const PolyRingPtr& a, const PolyRingPtr& b);

using Exponents = std::vector<int>;

/// Sparse multivariate polynomial with exact coefficients.
class Poly {
 public:
  explicit Poly(PolyRingPtr ring);

  static Poly constant(const PolyRingPtr& ring, const Coeff& c);
  static Poly constant(const PolyRingPtr& ring, long c);
  static Poly var(const PolyRingPtr& ring, const std::string& name);
  /// Infix syntax: integers, fractions, variables, + - * ^ and parentheses.
  static Poly parse(const PolyRingPtr& ring, const std::string& text);
  static Poly one_like(const Poly& p) { return constant(p.ring_, 1); }

  const PolyRingPtr& ring() const { return ring_; }
  const std::map<Exponents, Coeff>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const;
  Coeff constant_term() const;
  int total_degree() const;
  int degree_in(const std::string& name) const;
  /// Largest k with name^k dividing this polynomial; throws for 0.
  int order_in(const std::string& name) const;
  /// Exact division by name^k; throws if not divisible.
  Poly divided_by_power(const std::string& name, int k) const;
  bool involves(const std::string& name) const;
  /// Coefficient of name^k, as a polynomial in the remaining variables.
  Poly coefficient_of(const std::string& name, int k) const;

  Poly operator-() const;
  Poly& operator+=(const Poly& o);
  Poly& operator-=(const Poly& o);
  Poly& operator*=(const Poly& o);
  friend Poly operator+(Poly a, const Poly& b) { return a += b; }
  friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
  friend Poly operator*(Poly a, const Poly& b) { return a *= b; }
  Poly pow(int n) const;
  friend bool operator==(const Poly& a, const Poly& b);
  friend bool operator!=(const Poly& a, const Poly& b) { return !(a == b); }

  /// Simultaneous substitution of variables by polynomials (over a common
  /// target ring).
  Poly substitute(const std::map<std::string, Poly>& images) const;
  /// Same polynomial over a ring containing all its variables.
  Poly embed(const PolyRingPtr& target) const;
  /// Reduction of the coefficients modulo p (rational input only).
  Poly reduce_mod(std::uint32_t p) const;

  /// Evaluation with values in any commutative ring S; `one` fixes context.
  template <class S, class FromCoeff>
  S evaluate(const std::map<std::string, S>& values, const S& one, FromCoeff from_coeff) const {
    std::vector<const S*> vals(ring_->vars.size(), nullptr);
    for (std::size_t i = 0; i < ring_->vars.size(); ++i) {
      auto it = values.find(ring_->vars[i]);
      if (it != values.end()) vals[i] = &it->second;
    }
    S acc = one - one;
    for (const auto& [e, c] : terms_) {
      S term = from_coeff(c);
      for (std::size_t i = 0; i < e.size(); ++i) {
        if (!e[i]) continue;
        if (!vals[i]) throw std::invalid_argument("no value for variable " + ring_->vars[i]);
        for (int k = 0; k < e[i]; ++k) term = term * *vals[i];
      }
      acc = acc + term;
    }
    return acc;
  }

  std::string str() const;

 private:
  void check(const Poly& o) const;
  void add_term(const Exponents& e, const Coeff& c);

  PolyRingPtr ring_;
  std::map<Exponents, Coeff> terms_;
};

/// Quotient of polynomials, kept unreduced; equality by cross-multiplication.
class RatFunc {
 public:
  explicit RatFunc(Poly num);
  RatFunc(Poly num, Poly den);
  static RatFunc one_like(const RatFunc& r) { return RatFunc(Poly::one_like(r.num_)); }

  const Poly& num() const { return num_; }
  const Poly& den() const { return den_; }
  bool is_zero() const { return num_.is_zero(); }

  RatFunc operator-() const { return RatFunc(-num_, den_); }
  friend RatFunc operator+(const RatFunc& a, const RatFunc& b);
  friend RatFunc operator-(const RatFunc& a, const RatFunc& b) { return a + (-b); }
  friend RatFunc operator*(const RatFunc& a, const RatFunc& b);
  friend RatFunc operator/(const RatFunc& a, const RatFunc& b);
  RatFunc& operator+=(const RatFunc& o) { return *this = *this + o; }
  RatFunc& operator-=(const RatFunc& o) { return *this = *this - o; }
  RatFunc& operator*=(const RatFunc& o) { return *this = *this * o; }
  RatFunc inverse() const;
  friend bool operator==(const RatFunc& a, const RatFunc& b);
  friend bool operator!=(const RatFunc& a, const RatFunc& b) { return !(a == b); }

  RatFunc substitute(const std::map<std::string, Poly>& images) const;
  std::string str() const;

 private:
  Poly num_, den_;
};

}  // namespace bt
