#pragma once

#include <optional>
#include <string>
#include <vector>

#include "bt/concave.hpp"
#include "bt/filtration.hpp"
#include "bt/localfield.hpp"
#include "bt/matrix.hpp"
#include "bt/rootdata.hpp"
#include "bt/split_nf.hpp"

namespace bt {

enum class ModelKind { pgl2, pgl3, pgl4, pu3 };

/// Coordinates (u^-, tbar, u^+) of the partially compactified big cell.
/// Root parameters are indexed like RelativeForm::reduced_positive_roots():
/// u_minus[k] parametrizes -a_k, u_plus[k] parametrizes a_k.
struct BigCellPoint {
  std::vector<RootParam> u_minus;
  std::vector<FieldElem> t_bar;
  std::vector<RootParam> u_plus;
};

bool equal_within_precision(const BigCellPoint& a, const BigCellPoint& b);
std::string to_string(const BigCellPoint& p);

/// Order in which the reduced positive roots are multiplied (and switched):
/// a permutation of 0..N-1 into reduced_positive_roots().
using RootOrder = std::vector<std::size_t>;

/// Concrete matrix realization: PGL_n (split, n = 2, 3, 4) with
/// chi_a(u) = I + u E_ij, chi_{-a}(u) = I - u E_ji, or the quasi-split PU_3
/// preserving the antidiagonal hermitian form, with
///   y_+(u, v) = [[1, -s(u), -v], [0, 1, u], [0, 0, 1]],
///   y_-(u, v) = [[1, 0, 0], [u, 1, 0], [-v, -s(u), 1]].
/// The torus slice is D(tbar) = diag(1, t1, t1 t2, ...) (split) or
/// diag(1, m, m s(m)) (PU_3), so tbar_alpha = alpha(D)^{-1}.
class GroupModel {
 public:
  /// n in {2, 3, 4}; the field must be unramified (e = 1).
  static GroupModel pgl(int n, const FieldConfigPtr& field);
  /// The field must have ramification 2 (it carries the quadratic extension).
  static GroupModel pu3(const FieldConfigPtr& field);
  /// "PGL2", "PGL3", "PGL4", "PU3"; builds the matching field.
  static GroupModel from_label(const std::string& label, std::uint32_t p, int precision);

  ModelKind kind() const { return kind_; }
  std::string label() const;
  int size() const { return n_; }
  const FormPtr& form() const { return form_; }
  const FieldConfigPtr& field() const { return field_; }
  bool is_split() const { return kind_ != ModelKind::pu3; }

  FieldElem zero() const { return FieldElem(field_); }
  FieldElem one() const { return FieldElem::from_int(field_, 1); }
  /// Default root order (height, then lexicographic).
  RootOrder default_order() const;
  /// (i, j) of the positive reduced root with the given position (split only).
  RootPair pair_of(std::size_t position) const;

  /// Root-group element; `position` indexes reduced_positive_roots().
  Matrix chi(std::size_t position, bool negative, const RootParam& param) const;
  Matrix torus_slice(const std::vector<FieldElem>& t_bar) const;
  Matrix unipotent(const std::vector<RootParam>& params, bool negative, const RootOrder& order) const;
  /// u^- D(tbar) u^+ as a matrix (defined also on the boundary).
  Matrix compose(const BigCellPoint& p, const RootOrder& order) const;
  Matrix compose(const BigCellPoint& p) const { return compose(p, default_order()); }

  /// Coordinates of a unipotent matrix as an ordered product of root-group
  /// elements.
  std::vector<RootParam> unipotent_coordinates(const Matrix& u, bool negative, const RootOrder& order) const;

  /// Group membership (invertible; unitary up to a scalar for PU_3).
  bool in_group(const Matrix& g) const;
  /// Scalar normalization with first diagonal-slot entry 1 when possible.
  Matrix normalize(const Matrix& g) const;
  /// Identity of the big cell.
  BigCellPoint identity_point() const;

  /// Torus element: diag(s, 1) etc. for PGL_n; diag(x, 1, s(x)^{-1}) from x
  /// for PU_3.
  Matrix torus_element(const std::vector<FieldElem>& diag_or_x) const;

 private:
  ModelKind kind_ = ModelKind::pgl2;
  int n_ = 2;
  FormPtr form_;
  FieldConfigPtr field_;
  std::vector<RootPair> pairs_;
};

/// alpha -> alpha(t)^{-1} on the simple roots; t diagonal (mod scalars).
std::vector<FieldElem> nu_bar(const GroupModel& model, const Matrix& t);

/// Monomial prod tbar_i^{b_i} for alpha = -sum b_i alpha_i (absolute
/// coordinates). Quasi-split forms read the coordinate of a non-distinguished
/// orbit member through sigma.
FieldElem m_alpha(const RelativeForm& form, const std::vector<FieldElem>& t_bar, const RootVec& absolute_negative_root);

enum class CellKind { omega, omega_bar };

/// Root parameters pass filtration_contains and the torus coordinates are
/// integral (omega_bar), units (omega, f(0) = 0) or in 1 + m^{f(0)}
/// (omega, f(0) > 0).
bool membership(const BigCellPoint& p, const ApartmentPoint& x, const ConcaveFn& f, CellKind which);

struct FactorResult {
  std::optional<BigCellPoint> point;
  int vanishing_minor = 0;  ///< size of the first vanishing leading minor
};

/// g = u^- t u^+ in pinning coordinates, or the first vanishing leading
/// minor. Throws PrecisionError if g is not invertible to precision.
FactorResult factor_big_cell(const GroupModel& model, const Matrix& g, const RootOrder& order);
inline FactorResult factor_big_cell(const GroupModel& model, const Matrix& g) {
  return factor_big_cell(model, g, model.default_order());
}

/// Membership of a matrix of the big cell, coordinates read with `order`.
std::optional<bool> membership_of_matrix(const GroupModel& model, const Matrix& g, const ApartmentPoint& x,
                                         const ConcaveFn& f, CellKind which, const RootOrder& order);

/// Entrywise certificate for g in G_{x,f}(o): off-diagonal entries meet the
/// root bounds, the diagonal meets the torus condition, after scaling.
bool parahoric_certificate(const GroupModel& model, const Matrix& g, const ApartmentPoint& x, const ConcaveFn& f);

}  // namespace bt
