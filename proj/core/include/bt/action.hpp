#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "bt/bigcell.hpp"

namespace bt {

/// Output of one rank-one switch
///   chi_a(u) D(tbar) chi_{-a}(u') = chi_{-a}(u_out) T_a D(tbar) chi_a(v_out),
/// with the T_a factor already folded into t_bar.
struct SwitchResult {
  RootParam u_out;  ///< parameter for -a
  std::vector<FieldElem> t_bar;
  RootParam v_out;  ///< parameter for a
  FieldElem denominator;  ///< d_a
};

class SwitchError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Norm of eps, where eps = 1 - m u u' (split) or
/// 1 - m s(u) u' + m s(m) v v' (PU_3), m = m_{-a}(tbar).
FieldElem d_a(const GroupModel& model, std::size_t position, const RootParam& u, const std::vector<FieldElem>& t_bar,
              const RootParam& up);

/// The switch theta_a. With require_unit, d_a must be a unit (integral
/// domain); otherwise only invertible (generic fiber). Throws SwitchError.
SwitchResult beta_a(const GroupModel& model, std::size_t position, const RootParam& u,
                    const std::vector<FieldElem>& t_bar, const RootParam& up, bool require_unit = true);

/// Exact identity chi_a(u) D chi_{-a}(u') = (switch output) over Q(u, u', tbar)
/// for every positive root of PGL_n, plus the folded torus rule.
bool theta_identity_split(int n);
/// Same for the unitary model: matrix identity, H0 relations of the outputs
/// and the folded torus rule, over the function field with sigma.
bool theta_identity_su3();

/// Class of (g1, omega, g2) under the two-sided action g1 . omega . g2.
struct EmbeddedPoint {
  Matrix g1;
  BigCellPoint omega;
  Matrix g2;
  std::uint64_t seed = 0;
};

EmbeddedPoint identity_embedded_point(const GroupModel& model, std::uint64_t seed = 0);

struct NormalFormOptions {
  /// Switching priority over reduced positive roots; empty for the default.
  RootOrder priority;
  /// Order used to read and write unipotent coordinates; empty for default.
  RootOrder coordinates;
  int max_retries = 8;
};

enum class NFStatus { ok, boundary, not_factorizable };

struct NormalFormResult {
  NFStatus status = NFStatus::not_factorizable;
  std::optional<BigCellPoint> point;
  /// Boundary diagnosis: the root whose d_a vanished and the last reachable
  /// partial form (left unipotent, torus, right unipotent).
  std::optional<std::size_t> failed_root;
  std::optional<FieldElem> failed_eps;
  std::optional<Matrix> partial_lower, partial_upper;
  std::vector<FieldElem> partial_t_bar;
  int vanishing_minor = 0;
  int retries = 0;
  std::string message;
};

/// Big-cell coordinates of g1 . omega . g2. On failure retries with seeded
/// unipotent translates h: (g1 h^{-1}, h omega, g2) and the mirror image.
NormalFormResult normal_form(const GroupModel& model, const EmbeddedPoint& p, const NormalFormOptions& opts = {});

/// Same point read as a matrix (the open cell only).
Matrix embedded_matrix(const GroupModel& model, const EmbeddedPoint& p);

enum class Verdict { equal, different, inconclusive };
std::string to_string(Verdict v);

struct EquivalenceOptions {
  int torus_budget = 3;   ///< cocharacter translates t^{+-1..B}
  int random_budget = 8;  ///< seeded random translates
  NormalFormOptions nf;
};

/// Compares the classes through a common left translate a for which both
/// normal forms exist.
Verdict equivalent(const GroupModel& model, const EmbeddedPoint& p, const EmbeddedPoint& q,
                   const EquivalenceOptions& opts = {});

struct OrbitInvariant {
  bool ok = false;
  std::vector<std::optional<Rational>> values;  ///< nullopt: infinity
  std::string message;
};

/// alpha -> omega(tbar_alpha) of a normal form in Omega-bar_{x,f}(o); searches
/// seeded parahoric translates until one is integral. Requires f(0) = 0.
OrbitInvariant orbit_invariant(const GroupModel& model, const EmbeddedPoint& p, const ApartmentPoint& x,
                               const ConcaveFn& f, int budget = 40);

// Seeded sampling -----------------------------------------------------------

using Rng = std::mt19937_64;

/// Random element with omega >= bound (or > for r+), `terms` digits.
FieldElem random_at_least(const FieldConfigPtr& field, const RTilde& bound, Rng& rng, int terms);
/// Random parameter of U_{a,x,f}(o) for a reduced root.
RootParam random_root_param(const GroupModel& model, const ApartmentPoint& x, const ConcaveFn& f, std::size_t root,
                            Rng& rng, int terms);
/// Random torus coordinate: unit (f(0) = 0) or in 1 + m^{f(0)}.
FieldElem random_torus_unit(const FieldConfigPtr& field, const RTilde& f0, Rng& rng, int terms);
/// Random point of Omega_{x,f}(o) or Omega-bar_{x,f}(o).
BigCellPoint random_big_cell_point(const GroupModel& model, const ApartmentPoint& x, const ConcaveFn& f,
                                   CellKind which, Rng& rng, int terms);
/// Random element of G_{x,f}(o): a product of two random big-cell elements.
Matrix random_parahoric(const GroupModel& model, const ApartmentPoint& x, const ConcaveFn& f, Rng& rng, int terms);

}  // namespace bt
