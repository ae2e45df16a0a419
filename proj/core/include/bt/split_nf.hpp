#pragma once

// Scalar-generic pieces of the split (PGL_n) normal form, shared by the
// field-valued action and the jet-valued integrality test.

#include <optional>
#include <utility>
#include <vector>

#include "bt/matrix.hpp"

namespace bt {

inline bool is_invertible(const FieldElem& x) { return !x.is_indistinguishable_from_zero(); }
inline FieldElem inverse_of(const FieldElem& x) { return x.inverse(); }

/// A root e_i - e_j of A_{n-1}, stored as (i, j).
using RootPair = std::pair<int, int>;

template <class S>
struct LDU {
  BasicMatrix<S> lower;  ///< unit lower triangular
  std::vector<S> diag;
  BasicMatrix<S> upper;  ///< unit upper triangular
};

/// g = lower * diag * upper without pivoting. On failure returns the size k
/// of the first vanishing leading minor.
template <class S>
std::pair<std::optional<LDU<S>>, int> ldu_factor(const BasicMatrix<S>& g) {
  std::size_t n = g.rows();
  BasicMatrix<S> a = g;
  const S& proto = g(0, 0);
  BasicMatrix<S> lower = BasicMatrix<S>::identity(n, proto);
  std::vector<S> diag;
  for (std::size_t k = 0; k < n; ++k) {
    if (!is_invertible(a(k, k))) return {std::nullopt, static_cast<int>(k + 1)};
    S inv = inverse_of(a(k, k));
    for (std::size_t i = k + 1; i < n; ++i) {
      S l = a(i, k) * inv;
      lower(i, k) = l;
      for (std::size_t j = k; j < n; ++j) a(i, j) -= l * a(k, j);
    }
  }
  BasicMatrix<S> upper = BasicMatrix<S>::identity(n, proto);
  for (std::size_t k = 0; k < n; ++k) {
    diag.push_back(a(k, k));
    S inv = inverse_of(a(k, k));
    for (std::size_t j = k + 1; j < n; ++j) upper(k, j) = a(k, j) * inv;
  }
  return {LDU<S>{lower, diag, upper}, 0};
}

/// chi_a(u) = I + u E_ij for a = (i, j); chi_{-a}(u) = I - u E_ji.
template <class S>
BasicMatrix<S> split_root_matrix(std::size_t n, const RootPair& a, const S& u, bool negative) {
  BasicMatrix<S> m = BasicMatrix<S>::identity(n, u);
  if (negative)
    m(a.second, a.first) = ScalarOps<S>::zero_like(u) - u;
  else
    m(a.first, a.second) = u;
  return m;
}

/// m_{-a}(tbar) = tbar_i * ... * tbar_{j-1} for a = (i, j), i < j.
template <class S>
S split_m(const std::vector<S>& tbar, const RootPair& a) {
  S m = ScalarOps<S>::one_like(tbar.at(0));
  for (int k = a.first; k < a.second; ++k) m = m * tbar[k];
  return m;
}

/// One application of theta_a:
///   chi_a(u) D chi_{-a}(u') = chi_{-a}(m u'/eps) T_a(eps) D chi_a(m u/eps),
/// eps = 1 - m u u'. Returns nullopt when eps is not invertible.
template <class S>
struct SplitSwitch {
  S eps, p, q;
};

template <class S>
std::optional<SplitSwitch<S>> split_switch(const S& m, const S& u, const S& up) {
  S one = ScalarOps<S>::one_like(m);
  S eps = one - m * u * up;
  if (!is_invertible(eps)) return std::nullopt;
  S inv = inverse_of(eps);
  return SplitSwitch<S>{eps, m * up * inv, m * u * inv};
}

/// tbar after D -> T_a(eps) D, with T_a(eps) = eps at i, eps^{-1} at j.
template <class S>
void split_apply_torus(std::vector<S>& tbar, const RootPair& a, const S& eps) {
  std::size_t n = tbar.size() + 1;
  S one = ScalarOps<S>::one_like(eps);
  S inv = inverse_of(eps);
  std::vector<S> t(n, one);
  t[a.first] = eps;
  t[a.second] = inv;
  std::size_t i = a.first, j = a.second;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (k == i || k + 1 == i || k == j || k + 1 == j) tbar[k] = tbar[k] * t[k + 1] * inverse_of(t[k]);
  }
}

/// Roots of A_{n-1} ordered by height then lexicographically.
std::vector<RootPair> split_positive_pairs(int n);

template <class S>
struct SplitCollision {
  bool ok = false;
  RootPair failed_root{-1, -1};
  std::optional<S> failed_eps;
  BasicMatrix<S> lower;  ///< in U^-
  std::vector<S> tbar;
  BasicMatrix<S> upper;  ///< in U^+
  int steps = 0;
};

/// Rewrites left * D(tbar) * right with left in U^+ and right in U^- as
/// lower * D(tbar') * upper, switching one root at a time: Psi runs from
/// Phi^+ to Phi^-, and each step flips a root of Psi n Phi^+ that is simple
/// in Psi, the first one in `priority`.
template <class S>
SplitCollision<S> split_collide(BasicMatrix<S> left, std::vector<S> tbar, BasicMatrix<S> right,
                                const std::vector<RootPair>& priority) {
  int n = static_cast<int>(left.rows());
  std::vector<std::vector<bool>> psi(n, std::vector<bool>(n, false));
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) psi[i][j] = true;
  SplitCollision<S> out;
  for (;;) {
    std::optional<RootPair> pick;
    for (const auto& a : priority) {
      if (!psi[a.first][a.second]) continue;
      bool simple = true;
      for (int k = 0; k < n && simple; ++k)
        if (k != a.first && k != a.second && psi[a.first][k] && psi[k][a.second]) simple = false;
      if (simple) {
        pick = a;
        break;
      }
    }
    if (!pick) break;
    const RootPair a = *pick;
    S u = left(a.first, a.second);
    S up = ScalarOps<S>::zero_like(u) - right(a.second, a.first);
    S m = split_m(tbar, a);
    auto sw = split_switch(m, u, up);
    if (!sw) {
      out.failed_root = a;
      out.failed_eps = ScalarOps<S>::one_like(m) - m * u * up;
      out.lower = left;
      out.tbar = tbar;
      out.upper = right;
      return out;
    }
    S zero = ScalarOps<S>::zero_like(u);
    left = left * split_root_matrix(n, a, zero - u, false) * split_root_matrix(n, a, sw->p, true);
    right = split_root_matrix(n, a, sw->q, false) * split_root_matrix(n, a, zero - up, true) * right;
    split_apply_torus(tbar, a, sw->eps);
    psi[a.first][a.second] = false;
    psi[a.second][a.first] = true;
    ++out.steps;
  }
  out.ok = true;
  out.lower = left;
  out.tbar = tbar;
  out.upper = right;
  return out;
}

}  // namespace bt
