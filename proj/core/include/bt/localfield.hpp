#pragma once

#include <cstdint>
#include <limits>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "bt/coeff.hpp"

namespace bt {

/// Raised when a question cannot be answered from the digits an element
/// actually carries (e.g. the valuation of O(t^5)).
class PrecisionError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Desk-scale stand-in for the base field k = kappa((t)) and its totally
/// ramified extensions: truncated Puiseux series with exponent
/// denominators dividing `ramification`.
struct FieldConfig {
  std::uint32_t residue_char = 5;  ///< 0 selects rational coefficients
  int precision = 12;              ///< relative precision, in units of t
  int ramification = 1;            ///< e; exponents live in (1/e)Z

  /// Number of exponent slots kept beyond the leading one.
  std::int64_t cap_units() const { return static_cast<std::int64_t>(precision) * ramification; }
};

using FieldConfigPtr = std::shared_ptr<const FieldConfig>;

/// Validates and freezes a configuration. Rejects non-prime residue
/// characteristics, precision < 1, and p = 2 together with e = 2.
FieldConfigPtr make_field(std::uint32_t residue_char, int precision, int ramification = 1);

/// Truncated Laurent/Puiseux series sum c_i t^{i/e} + O(t^{known_to}).
///
/// Exponents are stored as integers in units of 1/e. The absolute precision
/// `known_to` is exclusive; exact elements (finite polynomials that fit the
/// precision cap) carry no error term. Precision is propagated
/// pessimistically and capped relative to the valuation.
class FieldElem {
 public:
  static constexpr std::int64_t kExact = std::numeric_limits<std::int64_t>::max() / 4;

  FieldElem() = default;  // detached exact zero; usable only in assignments
  explicit FieldElem(FieldConfigPtr cfg);

  static FieldElem zero(const FieldConfigPtr& cfg) { return FieldElem(cfg); }
  static FieldElem from_int(const FieldConfigPtr& cfg, long n);
  static FieldElem from_rational(const FieldConfigPtr& cfg, const Rational& q);
  static FieldElem from_coeff(const FieldConfigPtr& cfg, const Coeff& c);
  /// c * t^{exponent}; the exponent must lie in (1/e)Z.
  static FieldElem monomial(const FieldConfigPtr& cfg, const Coeff& c, const Rational& exponent);
  static FieldElem t_power(const FieldConfigPtr& cfg, const Rational& exponent);
  /// O(t^{bound}).
  static FieldElem big_o(const FieldConfigPtr& cfg, const Rational& bound);
  /// Series literal such as "1 + 2*t + 3*t^(3/2) + O(t^6)".
  static FieldElem parse(const FieldConfigPtr& cfg, const std::string& literal);

  const FieldConfigPtr& config() const { return cfg_; }
  int ramification() const { return cfg_->ramification; }
  Coeff coeff_zero() const { return Coeff::zero(cfg_->residue_char); }

  bool is_exact() const { return prec_ >= kExact; }
  /// Exact zero.
  bool is_zero() const { return c_.empty() && is_exact(); }
  /// No nonzero digit known (exact zero or O(t^k)).
  bool is_indistinguishable_from_zero() const { return c_.empty(); }

  /// Least exponent with a nonzero coefficient, nullopt for exact zero.
  /// Throws PrecisionError for O(t^k).
  std::optional<Rational> valuation() const;
  /// Valuation if known, else the precision bound (exact zero gives nullopt).
  std::optional<Rational> valuation_lower_bound() const;
  /// nullopt when exact.
  std::optional<Rational> known_to() const;

  /// Decides omega(x) >= bound (or > bound when strict). Throws
  /// PrecisionError when the carried digits do not decide it.
  bool valuation_at_least(const Rational& bound, bool strict = false) const;
  bool is_integral() const { return valuation_at_least(Rational(0)); }
  bool is_unit() const;

  Coeff leading_coeff() const;
  /// Coefficient of t^{exponent}; throws PrecisionError beyond known_to.
  Coeff coeff_at(const Rational& exponent) const;

  FieldElem operator-() const;
  FieldElem& operator+=(const FieldElem& o);
  FieldElem& operator-=(const FieldElem& o);
  FieldElem& operator*=(const FieldElem& o);
  FieldElem& operator/=(const FieldElem& o) { return *this *= o.inverse(); }
  FieldElem inverse() const;
  FieldElem pow(long n) const;
  /// Multiplies by t^{exponent}.
  FieldElem shifted(const Rational& exponent) const;
  /// Forgets digits at and beyond t^{bound}.
  FieldElem truncated(const Rational& bound) const;

  friend FieldElem operator+(FieldElem a, const FieldElem& b) { return a += b; }
  friend FieldElem operator-(FieldElem a, const FieldElem& b) { return a -= b; }
  friend FieldElem operator*(FieldElem a, const FieldElem& b) { return a *= b; }
  friend FieldElem operator/(FieldElem a, const FieldElem& b) { return a /= b; }

  /// a - b carries no nonzero digit.
  friend bool equal_within_precision(const FieldElem& a, const FieldElem& b) {
    return (a - b).is_indistinguishable_from_zero();
  }

  std::string str() const;

  // Raw access in exponent units (1/e).
  std::int64_t low_units() const { return lo_; }
  std::int64_t prec_units() const { return prec_; }
  const std::vector<Coeff>& digits() const { return c_; }
  static FieldElem from_digits(const FieldConfigPtr& cfg, std::int64_t lo, std::vector<Coeff> digits,
                               std::int64_t prec_units);

 private:
  void normalize();
  void require_same(const FieldElem& o) const;

  FieldConfigPtr cfg_;
  std::int64_t lo_ = 0;
  std::vector<Coeff> c_;
  std::int64_t prec_ = kExact;
};

std::ostream& operator<<(std::ostream& os, const FieldElem& x);

// ---------------------------------------------------------------------------
// Ramified quadratic extension L' = L(pi'), pi'^2 = t, over residue char != 2.

/// The extension is realized inside a FieldConfig with ramification 2;
/// elements of the base field are the series with integral exponents.
struct QuadExt {
  FieldConfigPtr field;

  explicit QuadExt(FieldConfigPtr cfg);
  FieldElem uniformizer() const;  ///< pi' = t^{1/2}
};

enum class QuadOp { sigma, trace, norm };

/// sigma flips the sign of the odd-power pi'-terms; trace and norm land in
/// the base field.
FieldElem quad_op(const QuadExt& ext, const FieldElem& x, QuadOp which);
inline FieldElem sigma(const FieldElem& x) { return quad_op(QuadExt(x.config()), x, QuadOp::sigma); }
inline FieldElem trace(const FieldElem& x) { return quad_op(QuadExt(x.config()), x, QuadOp::trace); }
inline FieldElem norm(const FieldElem& x) { return quad_op(QuadExt(x.config()), x, QuadOp::norm); }
/// Only integral exponents present.
bool lies_in_base_field(const FieldElem& x);

/// Element (u, v) of H_0(L', L): u * sigma(u) = v + sigma(v).
struct H0Elem {
  FieldElem u;
  FieldElem v;

  static H0Elem identity(const FieldConfigPtr& cfg) { return {FieldElem(cfg), FieldElem(cfg)}; }
  /// v = N(u)/2 + w for a trace-zero w.
  static H0Elem from_u_and_trace_zero(const FieldElem& u, const FieldElem& w);
  /// v - N(u)/2, the trace-zero part.
  FieldElem trace_zero_part() const;
};

bool satisfies_h0(const H0Elem& x);
/// Group law pulled back from products of the upper unipotent SU3 matrices.
H0Elem h0_compose(const QuadExt& ext, const H0Elem& a, const H0Elem& b);
H0Elem h0_inverse(const QuadExt& ext, const H0Elem& a);

/// sup{ omega(x) : Tr(x) = 1 }; zero for the ramified quadratic in odd
/// residue characteristic.
Rational mu_constant(const QuadExt& ext);
/// Same constant from the residue characteristic alone; throws for 2.
Rational mu_constant(std::uint32_t residue_char);
/// -mu/2.
Rational gamma_constant(const QuadExt& ext);

}  // namespace bt
