#pragma once

#include <map>
#include <string>
#include <vector>

#include "bt/coeff.hpp"
#include "bt/rootdata.hpp"

namespace bt {

/// Element of the ordered monoid (R x {0,1}) u {inf}: r, r+ or infinity.
class RTilde {
 public:
  RTilde() = default;
  explicit RTilde(const Rational& r, bool plus = false) : value_(r), plus_(plus) {}
  static RTilde infinity() {
    RTilde x;
    x.inf_ = true;
    return x;
  }
  /// "1/2", "1/2+", "inf".
  static RTilde parse(const std::string& text);

  bool is_infinite() const { return inf_; }
  bool plus() const { return !inf_ && plus_; }
  /// Real part; throws for infinity.
  const Rational& value() const;
  RTilde with_plus() const;

  friend RTilde operator+(const RTilde& a, const RTilde& b);
  friend bool operator==(const RTilde& a, const RTilde& b);
  friend bool operator!=(const RTilde& a, const RTilde& b) { return !(a == b); }
  friend bool operator<(const RTilde& a, const RTilde& b);
  friend bool operator<=(const RTilde& a, const RTilde& b) { return !(b < a); }
  friend bool operator>(const RTilde& a, const RTilde& b) { return b < a; }
  friend bool operator>=(const RTilde& a, const RTilde& b) { return !(a < b); }

  /// Whether a quantity q satisfies q >= this (q > r for r+).
  bool admits(const Rational& q) const;

  std::string str() const;

 private:
  Rational value_ = 0;
  bool plus_ = false;
  bool inf_ = false;
};

/// Function on Phi u {0}; values indexed like RelativeForm::roots(), with the
/// value at 0 kept separately.
class ConcaveFn {
 public:
  ConcaveFn(FormPtr form, std::vector<RTilde> root_values, RTilde at_zero);

  const FormPtr& form() const { return form_; }
  const RTilde& operator[](std::size_t root) const { return values_.at(root); }
  const RTilde& at(const RootVec& r) const;
  const RTilde& at_zero() const { return zero_; }
  const std::vector<RTilde>& values() const { return values_; }

  /// Pointwise comparison on Phi u {0}.
  bool pointwise_le(const ConcaveFn& other) const;

 private:
  FormPtr form_;
  std::vector<RTilde> values_;
  RTilde zero_;
};

/// f(a+b) <= f(a)+f(b) for all a, b, a+b in Phi u {0}. Throws if a root value
/// is missing.
bool is_concave(const RelativeForm& form, const std::vector<RTilde>& root_values, const RTilde& at_zero);
bool is_concave(const ConcaveFn& f);

/// Adds a plus flag exactly where f(a) + f(-a) = 0 (including a = 0).
ConcaveFn f_plus(const ConcaveFn& f);

enum class ConcaveKind { zero, moy_prasad, custom };

/// zero; moy_prasad(r) constant r on Phi u {0}; custom from a map of root
/// names ("a1", "-a1-a2", "0") to values. Missing custom roots throw.
ConcaveFn standard_concave(const FormPtr& form, ConcaveKind kind, const Rational& r = 0,
                           const std::map<std::string, RTilde>& custom = {});

}  // namespace bt
