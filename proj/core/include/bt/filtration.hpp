#pragma once

#include <string>
#include <variant>
#include <vector>

#include "bt/concave.hpp"
#include "bt/localfield.hpp"
#include "bt/rootdata.hpp"

namespace bt {

/// Point of the standard apartment, stored by its pairings with the relative
/// simple roots; the base point (all zero) is the Chevalley-Steinberg
/// valuation.
struct ApartmentPoint {
  FormPtr form;
  std::vector<Rational> simple_pairings;

  static ApartmentPoint base(const FormPtr& form);
  static ApartmentPoint from_simple_pairings(const FormPtr& form, std::vector<Rational> pairings);
  /// v = sum c_j a_j^vee.
  static ApartmentPoint from_coroot_coords(const FormPtr& form, const std::vector<Rational>& coords);

  /// <a, v>.
  Rational pairing(const RootVec& a) const;
  Rational pairing(std::size_t root) const { return pairing(form->roots().at(root)); }
};

/// shift + step * Z.
struct ValueSet {
  Rational step;
  Rational shift;  ///< normalized into [0, step)

  static ValueSet make(const Rational& step, const Rational& shift);
  bool contains(const Rational& q) const;
  /// Elements in [lo, hi].
  std::vector<Rational> window(const Rational& lo, const Rational& hi) const;
  /// Least element >= q (> q when strict).
  Rational ceil(const Rational& q, bool strict = false) const;
  std::string str() const;
};

/// Gamma_a, or Gamma'_a when `primed`; they differ only for multipliable a.
ValueSet gamma_set(const ApartmentPoint& x, std::size_t root, bool primed);

/// Parameter of a root subgroup: a field element for plain roots, an H0
/// element for multipliable roots and (with u = 0) for divisible roots.
using RootParam = std::variant<FieldElem, H0Elem>;

std::string describe(const RootParam& p);
bool param_is_zero(const RootParam& p);
bool param_equal_within_precision(const RootParam& a, const RootParam& b);

/// Lower bound on omega(u) imposed by the level r at root a: r - <a, x>,
/// keeping the plus flag.
RTilde param_bound(const ApartmentPoint& x, std::size_t root, const RTilde& level);

/// Valuation conditions for the filtration subgroup at level f(a).
/// Multipliable a: omega(u) >= f(a) + gamma - <a,x> and
/// omega(v) >= f(2a) - 2<a,x>. Throws std::invalid_argument when the kind of
/// parameter does not match the root.
bool filtration_contains(const ApartmentPoint& x, const ConcaveFn& f, std::size_t root, const RootParam& param);

struct PhiXF {
  std::vector<std::size_t> roots;   ///< Phi_{x,f}
  std::vector<std::size_t> simple;  ///< simple roots of Phi_{x,f} n Phi+
};

/// {a : f(a) + f(-a) = 0 and f(a) in Gamma'_a}.
PhiXF phi_xf(const ApartmentPoint& x, const ConcaveFn& f);

/// Elements of Gamma'_a in [lo, hi].
std::vector<Rational> jump_set(const ApartmentPoint& x, std::size_t root, const Rational& lo, const Rational& hi);

}  // namespace bt
