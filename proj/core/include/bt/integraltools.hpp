#pragma once

#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "bt/action.hpp"
#include "bt/polynomial.hpp"

namespace bt {

/// o-algebra o[generators]/(relations). The uniformizer is the formal
/// variable "pi" of the ring. `forward` writes every generator of the
/// original presentation in the current generators; `backward` writes every
/// current generator as a fraction over the original ring (generic fiber).
struct AffinePresentation {
  PolyRingPtr ring;
  std::vector<std::string> generators;
  std::vector<Poly> relations;
  PolyRingPtr original_ring;
  std::vector<std::string> original_generators;
  std::vector<Poly> original_relations;
  std::map<std::string, Poly> forward;
  std::map<std::string, RatFunc> backward;

  /// Fresh presentation; `ring` must contain "pi" and the generators.
  static AffinePresentation make(const PolyRingPtr& ring, std::vector<std::string> generators,
                                 std::vector<Poly> relations);
  /// Parses "T,S" and "T*S - 1; ..." over the given coefficient modulus.
  static AffinePresentation parse(const std::string& generators, const std::string& relations,
                                  std::uint32_t modulus = 0);
  std::string str() const;
};

/// Adjoins g/pi for every center generator g, then eliminates generators
/// that occur linearly with a unit coefficient and divides pi out of
/// relations. Throws when a center generator is a unit on the special fiber.
AffinePresentation dilate(const AffinePresentation& pres, const std::vector<Poly>& center);

/// backward(forward(X)) = X for the original generators, the relations
/// vanish under backward (modulo original relations that can be solved
/// linearly for a variable) and forward(backward(y)) = y for the current
/// generators, modulo the relation g - pi^k y that introduced y.
bool generic_round_trip(const AffinePresentation& pres);

/// G_m = o[T, S]/(TS - 1) dilated n times at the identity.
AffinePresentation congruence_presentation(int n, std::uint32_t modulus = 0);

/// Special fiber of the n-th congruence model G^(n) is kappa[u], the special
/// fiber of A^(n). Throws for n <= 0 with the G_m != A^1 witness.
bool congruence_fiber_iso_check(int n);

/// Points of an integral model inside a product of copies of K.
struct PointModel {
  std::function<bool(const std::vector<FieldElem>&)> contains;
  /// Coordinates of a point, including those adjoined by dilatations.
  std::function<std::vector<FieldElem>(const std::vector<FieldElem>&)> coordinates;

  static PointModel affine_space(int dim);
  static PointModel multiplicative_group();
};

/// Points of the dilatation at the center cut out by g (a polynomial in the
/// coordinates x0, x1, ...): omega(g) >= 1. Adjoins the coordinate g/t.
PointModel dilate_points(const PointModel& model, const Poly& center);

// ---------------------------------------------------------------------------
// Truncated distributions.

/// Monomials of degree < level in `vars` local coordinates: the dual basis
/// of o[X]/I_x^level.
struct TruncDist {
  int vars = 0;
  int level = 0;
  std::vector<Exponents> basis() const;
  long dimension() const;
};

struct JetShape;

/// Truncated multivariate power series in local coordinates, degree < level,
/// with field coefficients.
class Jet {
 public:
  Jet(std::shared_ptr<const JetShape> shape, const FieldElem& constant);
  static std::shared_ptr<const JetShape> make_shape(int vars, int level);
  static Jet variable(std::shared_ptr<const JetShape> shape, int index, const FieldElem& base);
  static Jet one_like(const Jet& j);
  static Jet constant_like(const Jet& j, const FieldElem& c);

  const std::vector<FieldElem>& coefficients() const { return c_; }
  const std::vector<Exponents>& monomials() const;
  const FieldElem& constant_term() const { return c_[0]; }

  Jet operator-() const;
  friend Jet operator+(const Jet& a, const Jet& b);
  friend Jet operator-(const Jet& a, const Jet& b);
  friend Jet operator*(const Jet& a, const Jet& b);
  Jet& operator+=(const Jet& o) { return *this = *this + o; }
  Jet& operator-=(const Jet& o) { return *this = *this - o; }
  Jet& operator*=(const Jet& o) { return *this = *this * o; }
  Jet inverse() const;

 private:
  std::shared_ptr<const JetShape> shape_;
  std::vector<FieldElem> c_;
};

inline bool is_invertible(const Jet& j) { return !j.constant_term().is_indistinguishable_from_zero(); }
inline Jet inverse_of(const Jet& j) { return j.inverse(); }

struct ExtensionVerdict {
  bool integral = true;
  int level = 0;
  /// First non-integral Taylor coefficient: component, monomial, value.
  std::string witness;
};

using JetMap = std::function<std::vector<Jet>(const std::vector<Jet>&)>;

/// Taylor coefficients of the map at the base point, up to total degree
/// < level, all in o. Reports "integral up to level n", never more.
ExtensionVerdict extension_test(const JetMap& map, const std::vector<FieldElem>& base, int level);
/// Rational components in the named variables; "pi" is the uniformizer.
ExtensionVerdict extension_test(const std::vector<RatFunc>& components, const std::vector<std::string>& vars,
                                const std::vector<FieldElem>& base, int level);

/// The PGL_2 big-cell action (g1, omega, g2) -> normal form, in the nine
/// local coordinates of the three big cells, as a jet map.
JetMap pgl2_action_jet_map();

/// Base point (identity triple) of pgl2_action_jet_map.
std::vector<FieldElem> pgl2_identity_triple(const FieldConfigPtr& field);

// ---------------------------------------------------------------------------

struct CompatibilityReport {
  int samples = 0;
  int agreements = 0;
  int in_f = 0;  ///< samples that lie in G_{x,f}(o)
  std::string first_disagreement;
  bool ok() const { return samples == agreements; }
};

/// On seeded points of Omega_{x,g}(o): membership at level f agrees with
/// membership at level g plus residue in H, H given by the f-level valuation
/// conditions on the reduced coordinates. Requires g <= f <= g + 1.
CompatibilityReport dilatation_compatibility_check(const GroupModel& model, const ApartmentPoint& x,
                                                   const ConcaveFn& f, const ConcaveFn& g, int samples,
                                                   std::uint64_t seed);

}  // namespace bt
