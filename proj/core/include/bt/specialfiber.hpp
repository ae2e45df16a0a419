#pragma once

#include <string>
#include <vector>

#include "bt/bigcell.hpp"

namespace bt {

/// Residues of a big-cell point. Each root parameter and torus coordinate is
/// expanded in Weil-restriction coordinates: the digits at s, s + 1/e, ...,
/// where s is the filtration shift. Multipliable parameters give the digits
/// of u followed by the single digit of the trace-zero part w = v - N(u)/2.
struct SpecialPoint {
  std::vector<std::vector<Coeff>> u_minus;
  std::vector<std::vector<Coeff>> t_bar;
  std::vector<std::vector<Coeff>> u_plus;
  /// Torus digits are those of (tbar - 1) t^{-n} (the f(0) > 0 model).
  bool congruence = false;
};

bool operator==(const SpecialPoint& a, const SpecialPoint& b);
std::string to_string(const SpecialPoint& p);

/// Coordinate-wise reduction after rescaling by the filtration shifts.
/// Throws std::invalid_argument when the point is not in Omega-bar_{x,f}(o).
SpecialPoint reduce(const GroupModel& model, const BigCellPoint& p, const ApartmentPoint& x, const ConcaveFn& f);

/// Least exponent in offset + step*Z admitted by the bound: the filtration
/// shift, i.e. the first digit kept by reduce.
Rational reduction_shift(const RTilde& bound, const Rational& step, const Rational& offset = 0);

/// Membership in R_u^- x T^+ x R_u^+: the digit at the shift vanishes wherever
/// f^+ tightens the bound, and the leading torus digit is 1. Always true
/// when f(0) > 0.
bool unipotent_radical_contains(const GroupModel& model, const SpecialPoint& sp, const ApartmentPoint& x,
                                const ConcaveFn& f);

/// f(0) > 0: the special fiber is unipotent.
bool special_fiber_is_unipotent(const ConcaveFn& f);

/// (X^*, Phi_{x,f}, X_*, Phi_{x,f}^vee) of the maximal reductive quotient.
/// X^* has basis Delta (adjoint form), X_* the dual coweight basis; a root
/// is its coordinate vector over Delta and a coroot its pairing vector.
struct ReductiveDatum {
  int rank = 0;
  std::vector<RootVec> roots;
  std::vector<std::vector<int>> coroots;
  std::vector<RootVec> simple_roots;
  std::vector<std::string> names;
};

/// Throws std::invalid_argument when f(0) > 0.
ReductiveDatum reductive_quotient_datum(const ApartmentPoint& x, const ConcaveFn& f);

/// Root datum axioms: <a, a^vee> = 2 and stability under the reflections.
bool check_root_datum(const ReductiveDatum& d);

/// Face of a polyhedral cone {lambda : rows * lambda <= 0}.
struct ConeFace {
  std::vector<std::size_t> tight;  ///< rows vanishing on the face
  std::vector<std::vector<int>> rays;
  int dimension = 0;
  /// Torus orbit of the toric slice: t-bar coordinates that vanish on it.
  std::vector<std::size_t> zero_coordinates;
  int orbit_dimension = 0;
};

struct Cone {
  std::vector<std::vector<int>> rows;  ///< inequalities row . lambda <= 0
};

/// Every point of a lies in b.
bool cone_contains(const Cone& b, const Cone& a);

struct ToroidalData {
  int rank = 0;
  Cone ambient;  ///< C_{x,f}: Delta_{x,f} <= 0
  Cone cone;     ///< C: Delta <= 0
  std::vector<ConeFace> faces;
  bool contained = false;         ///< C inside C_{x,f}
  bool strictly_contained = false;
};

/// Throws std::invalid_argument when f(0) > 0.
ToroidalData toroidal_data(const ApartmentPoint& x, const ConcaveFn& f);

/// Faces of a full-dimensional cone, enumerated through exact witnesses.
std::vector<ConeFace> enumerate_faces(const Cone& c, int dim);

}  // namespace bt
