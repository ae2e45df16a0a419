#pragma once

#include <optional>
#include <string>
#include <vector>

#include "bt/action.hpp"
#include "bt/polynomial.hpp"

namespace bt {

/// Order of vanishing of p along each hyperplane {X_alpha = 0}; the names
/// list the leading coordinates X_alpha in Delta order. Throws for p = 0.
std::vector<int> boundary_multiplicities(const Poly& p, const std::vector<std::string>& coordinates);

/// m_alpha as a monomial in the named coordinates (split forms).
Poly m_alpha_monomial(const RelativeForm& form, const RootVec& absolute_negative_root,
                      const PolyRingPtr& ring, const std::vector<std::string>& coordinates);

/// Whether the t-bar_alpha coordinate of the normal form is 0; nullopt when
/// no normal form is available.
std::optional<bool> in_boundary_divisor(const GroupModel& model, const EmbeddedPoint& p, int alpha);

/// Whether g lies in the color of alpha = alpha_k: the leading k x k minor
/// vanishes. PU3 has the single color cut out by the 1 x 1 minor.
bool color_detect(const GroupModel& model, const Matrix& g, int alpha);

/// Element of the free abelian group on {D_alpha : alpha in Delta}.
struct DivisorClass {
  std::vector<std::string> labels;
  std::vector<long> coefficients;

  static DivisorClass zero(const RelativeForm& form);
  static DivisorClass generator(const RelativeForm& form, int alpha);
  DivisorClass operator+(const DivisorClass& o) const;
  DivisorClass scaled(long k) const;
  bool operator==(const DivisorClass& o) const { return coefficients == o.coefficients; }
  std::string str() const;
};

/// Class of the divisor of a function on the big cell, read from its
/// boundary multiplicities.
DivisorClass divisor_class(const RelativeForm& form, const std::vector<int>& multiplicities);

/// Rank of Pic, free on the colors: |Delta|.
int picard_rank(const RelativeForm& form);

}  // namespace bt
