#pragma once

// Brute-force references used by the unit and acceptance tests. They build
// their answers from explicit enumeration and plain matrix arithmetic, not
// from the library routines under test.

#include <algorithm>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "bt/action.hpp"
#include "bt/filtration.hpp"
#include "bt/localfield.hpp"

namespace oracle {

using bt::FieldElem;
using bt::Rational;

/// n/d in lowest terms (mpq_class does not canonicalize on construction).
inline Rational frac(long n, long d) {
  Rational r(n, d);
  r.canonicalize();
  return r;
}

inline FieldElem mono(const bt::FieldConfigPtr& cfg, const Rational& exponent) {
  return FieldElem::monomial(cfg, bt::Coeff(1L, cfg->residue_char), exponent);
}

/// Values of the root valuation on nonzero elements of U_a, restricted to
/// |value - <a,x>| <= window. With `primed`, only values that are maximal on
/// their U_{2a}-coset are kept.
inline std::set<Rational> gamma_values(const bt::ApartmentPoint& x, std::size_t root, bool primed, int window = 6) {
  const auto& form = *x.form;
  const bt::RootVec& a = form.roots()[root];
  Rational shift = x.pairing(root);
  std::set<Rational> out;
  auto twice = form.index_of(bt::scaled(a, 2));
  bool divisible = std::all_of(a.begin(), a.end(), [](int c) { return c % 2 == 0; }) &&
                   form.index_of([&] {
                     bt::RootVec h = a;
                     for (auto& c : h) c /= 2;
                     return h;
                   }());
  if (!twice && !divisible) {
    // Split root group: phi(u) = omega(u) + <a,x>, omega(u) in Z.
    for (int k = -window; k <= window; ++k) out.insert(shift + k);
    return out;
  }
  // Quasi-split unitary group in three variables over the ramified
  // quadratic extension: odd exponents of t^{1/2} are the trace-zero part.
  auto cfg = bt::make_field(5, 4 * window + 8, 2);
  std::vector<FieldElem> us{FieldElem(cfg)}, ws{FieldElem(cfg)};
  for (int k = -2 * window; k <= 2 * window; ++k) {
    us.push_back(mono(cfg, frac(k, 2)));
    if (k % 2 != 0) ws.push_back(mono(cfg, frac(k, 2)));
  }
  if (divisible) {
    // U_{2a}: (0, v) with Tr(v) = 0, phi(v) = omega(v) + <2a,x>.
    for (const auto& w : ws)
      if (!w.is_zero()) out.insert(*w.valuation() + shift);
    return out;
  }
  FieldElem half = FieldElem::from_int(cfg, 2).inverse();
  auto phi = [&](const FieldElem& v) -> Rational { return *v.valuation() / 2 + shift; };
  for (const auto& u : us)
    for (const auto& w : ws) {
      FieldElem v = bt::norm(u) * half + w;
      if (v.is_zero()) continue;
      Rational value = phi(v);
      if (primed) {
        bool maximal = true;
        for (const auto& w2 : ws)
          for (const FieldElem& v2 : {v + w2, v - w2})
            if (v2.is_zero() || phi(v2) > value) maximal = false;
        if (!maximal) continue;
      }
      out.insert(value);
    }
  std::set<Rational> clipped;
  for (const auto& q : out)
    if (q - shift <= window && shift - q <= window) clipped.insert(q);
  return clipped;
}

/// {a : f(a) + f(-a) = 0 and f(a) in Gamma'_a}, root by root.
inline std::set<std::size_t> phi_xf_brute(const bt::ApartmentPoint& x, const bt::ConcaveFn& f) {
  const auto& form = *x.form;
  std::set<std::size_t> out;
  for (std::size_t r = 0; r < form.roots().size(); ++r) {
    const auto& fa = f[r];
    const auto& fb = f[form.negative_of(r)];
    if (fa.is_infinite() || fb.is_infinite() || fa.plus() || fb.plus()) continue;
    if (fa.value() + fb.value() != 0) continue;
    Rational gap = fa.value() - x.pairing(r);
    int window = static_cast<int>(bt::ceil_rational(gap < 0 ? Rational(-gap) : gap)) + 2;
    if (gamma_values(x, r, true, window).count(fa.value())) out.insert(r);
  }
  return out;
}

inline Rational random_rational(std::mt19937_64& rng, int max_num, std::vector<int> dens = {1, 2, 3, 4, 6}) {
  std::uniform_int_distribution<int> num(-max_num, max_num);
  std::uniform_int_distribution<std::size_t> den(0, dens.size() - 1);
  return frac(num(rng), dens[den(rng)]);
}

}  // namespace oracle
