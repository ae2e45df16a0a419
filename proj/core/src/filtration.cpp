#include "bt/filtration.hpp"

#include <algorithm>
#include <set>
#include <sstream>

namespace bt {

ApartmentPoint ApartmentPoint::base(const FormPtr& form) {
  return {form, std::vector<Rational>(static_cast<std::size_t>(form->rank()), Rational(0))};
}

ApartmentPoint ApartmentPoint::from_simple_pairings(const FormPtr& form, std::vector<Rational> pairings) {
  if (static_cast<int>(pairings.size()) != form->rank())
    throw std::invalid_argument("apartment point needs one pairing per relative simple root");
  return {form, std::move(pairings)};
}

ApartmentPoint ApartmentPoint::from_coroot_coords(const FormPtr& form, const std::vector<Rational>& coords) {
  int n = form->rank();
  if (static_cast<int>(coords.size()) != n) throw std::invalid_argument("apartment point needs one coroot coordinate per simple root");
  std::vector<Rational> p(static_cast<std::size_t>(n), Rational(0));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) p[i] += coords[j] * form->pairing(form->simple_root(i), form->simple_root(j));
  return {form, p};
}

Rational ApartmentPoint::pairing(const RootVec& a) const {
  Rational s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += simple_pairings.at(i) * a[i];
  return s;
}

ValueSet ValueSet::make(const Rational& step, const Rational& shift) {
  if (step <= 0) throw std::invalid_argument("value set step must be positive");
  Rational k = shift / step;
  Rational s = shift - step * Rational(floor_rational(k));
  return {step, s};
}

bool ValueSet::contains(const Rational& q) const {
  Rational k = (q - shift) / step;
  return k.get_den() == 1;
}

Rational ValueSet::ceil(const Rational& q, bool strict) const {
  Rational k = (q - shift) / step;
  long c = ceil_rational(k);
  Rational v = shift + step * Rational(c);
  if (strict && v == q) v += step;
  return v;
}

std::vector<Rational> ValueSet::window(const Rational& lo, const Rational& hi) const {
  std::vector<Rational> out;
  for (Rational v = ceil(lo); v <= hi; v += step) out.push_back(v);
  return out;
}

std::string ValueSet::str() const {
  std::ostringstream os;
  os << shift.get_str() << " + " << step.get_str() << "Z";
  return os.str();
}

ValueSet gamma_set(const ApartmentPoint& x, std::size_t root, bool primed) {
  const auto& form = *x.form;
  Rational shift = x.pairing(root);
  int e = form.ramification(root);
  switch (form.multiplicity(root)) {
    case Multiplicity::plain:
      return ValueSet::make(Rational(1, e), shift);
    case Multiplicity::multipliable: {
      // phi_a(u, v) = omega(v)/2; the sup over the U_{2a}-coset reaches
      // omega(u) + mu/2.
      if (primed) return ValueSet::make(Rational(1, e), shift + mu_constant(0) / 2);
      return ValueSet::make(Rational(1, 2 * e), shift);
    }
    case Multiplicity::divisible: {
      // Trace-zero elements of the ramified quadratic have valuations in
      // Z + 1/2.
      return ValueSet::make(Rational(1, e), shift + Rational(1, 2));
    }
  }
  throw std::logic_error("unreachable");
}

std::string describe(const RootParam& p) {
  if (const auto* u = std::get_if<FieldElem>(&p)) return u->str();
  const auto& h = std::get<H0Elem>(p);
  return "(" + h.u.str() + ", " + h.v.str() + ")";
}

bool param_is_zero(const RootParam& p) {
  if (const auto* u = std::get_if<FieldElem>(&p)) return u->is_zero();
  const auto& h = std::get<H0Elem>(p);
  return h.u.is_zero() && h.v.is_zero();
}

bool param_equal_within_precision(const RootParam& a, const RootParam& b) {
  if (a.index() != b.index()) return false;
  if (const auto* u = std::get_if<FieldElem>(&a)) return equal_within_precision(*u, std::get<FieldElem>(b));
  const auto& x = std::get<H0Elem>(a);
  const auto& y = std::get<H0Elem>(b);
  return equal_within_precision(x.u, y.u) && equal_within_precision(x.v, y.v);
}

RTilde param_bound(const ApartmentPoint& x, std::size_t root, const RTilde& level) {
  if (level.is_infinite()) return level;
  return RTilde(level.value() - x.pairing(root), level.plus());
}

namespace {

bool meets(const FieldElem& u, const RTilde& bound) {
  if (u.is_zero()) return true;
  if (bound.is_infinite()) return false;
  return u.valuation_at_least(bound.value(), bound.plus());
}

}  // namespace

bool filtration_contains(const ApartmentPoint& x, const ConcaveFn& f, std::size_t root, const RootParam& param) {
  const auto& form = *x.form;
  Multiplicity m = form.multiplicity(root);
  if (m == Multiplicity::plain) {
    const auto* u = std::get_if<FieldElem>(&param);
    if (!u) throw std::invalid_argument("root " + form.root_name(form.roots()[root]) + " takes a field element");
    return meets(*u, param_bound(x, root, f[root]));
  }
  const auto* h = std::get_if<H0Elem>(&param);
  if (!h) throw std::invalid_argument("root " + form.root_name(form.roots()[root]) + " takes an H0 element");
  if (!satisfies_h0(*h)) throw std::invalid_argument("parameter violates u*sigma(u) = v + sigma(v)");
  if (m == Multiplicity::divisible) {
    if (!h->u.is_indistinguishable_from_zero())
      throw std::invalid_argument("divisible-root parameter must have u = 0");
    return meets(h->v, param_bound(x, root, f[root]));
  }
  auto twice = form.index_of(scaled(form.roots()[root], 2));
  RTilde gamma(gamma_constant(QuadExt(h->u.config())));
  RTilde ub = param_bound(x, root, f[root] + gamma);
  RTilde vb = param_bound(x, *twice, f[*twice]);
  return meets(h->u, ub) && meets(h->v, vb);
}

PhiXF phi_xf(const ApartmentPoint& x, const ConcaveFn& f) {
  const auto& form = *x.form;
  PhiXF out;
  for (std::size_t k = 0; k < form.roots().size(); ++k) {
    const RTilde& a = f[k];
    const RTilde& b = f[form.negative_of(k)];
    if (a.is_infinite() || b.is_infinite()) continue;
    if (!(a + b == RTilde(0))) continue;
    if (gamma_set(x, k, true).contains(a.value())) out.roots.push_back(k);
  }
  std::set<std::size_t> in(out.roots.begin(), out.roots.end());
  for (std::size_t a : out.roots) {
    if (!in.count(form.negative_of(a))) throw std::logic_error("Phi_{x,f} is not symmetric");
    for (std::size_t b : out.roots) {
      if (a == b) continue;
      auto s = form.index_of(form.roots()[a] + form.roots()[b]);
      if (s && !in.count(*s)) throw std::logic_error("Phi_{x,f} is not closed");
    }
  }
  std::vector<std::size_t> pos;
  for (std::size_t a : out.roots)
    if (form.is_positive(a)) pos.push_back(a);
  out.simple = simple_roots_of(form, pos);
  return out;
}

std::vector<Rational> jump_set(const ApartmentPoint& x, std::size_t root, const Rational& lo, const Rational& hi) {
  return gamma_set(x, root, true).window(lo, hi);
}

}  // namespace bt
