#include "bt/boundary.hpp"

#include <sstream>

namespace bt {

std::vector<int> boundary_multiplicities(const Poly& p, const std::vector<std::string>& coordinates) {
  if (p.is_zero()) throw std::invalid_argument("the zero polynomial has no divisor");
  std::vector<int> out;
  for (const auto& name : coordinates) out.push_back(p.ring()->index_of(name) < 0 ? 0 : p.order_in(name));
  return out;
}

Poly m_alpha_monomial(const RelativeForm& form, const RootVec& alpha, const PolyRingPtr& ring,
                      const std::vector<std::string>& coordinates) {
  if (!form.is_split()) throw std::invalid_argument("monomial m_alpha is written for split forms");
  if (static_cast<int>(coordinates.size()) != form.rank()) throw std::invalid_argument("one coordinate per simple root");
  Poly acc = Poly::constant(ring, 1);
  for (int i = 0; i < form.rank(); ++i) {
    if (alpha.at(i) > 0) throw std::invalid_argument("m_alpha needs a nonpositive combination of simple roots");
    acc *= Poly::var(ring, coordinates[i]).pow(-alpha[i]);
  }
  return acc;
}

std::optional<bool> in_boundary_divisor(const GroupModel& model, const EmbeddedPoint& p, int alpha) {
  if (alpha < 0 || alpha >= model.form()->rank()) throw std::out_of_range("simple root index out of range");
  auto r = normal_form(model, p);
  if (r.status != NFStatus::ok) return std::nullopt;
  const FieldElem& t = r.point->t_bar[alpha];
  if (t.is_zero()) return true;
  if (t.is_indistinguishable_from_zero()) return std::nullopt;
  return false;
}

bool color_detect(const GroupModel& model, const Matrix& g, int alpha) {
  if (alpha < 0 || alpha >= model.form()->rank()) throw std::out_of_range("simple root index out of range");
  return g.leading_minor(static_cast<std::size_t>(alpha) + 1).is_indistinguishable_from_zero();
}

DivisorClass DivisorClass::zero(const RelativeForm& form) {
  DivisorClass d;
  for (int i = 0; i < form.rank(); ++i) d.labels.push_back("D_" + form.root_name(form.simple_root(i)));
  d.coefficients.assign(static_cast<std::size_t>(form.rank()), 0);
  return d;
}

DivisorClass DivisorClass::generator(const RelativeForm& form, int alpha) {
  DivisorClass d = zero(form);
  d.coefficients.at(alpha) = 1;
  return d;
}

DivisorClass DivisorClass::operator+(const DivisorClass& o) const {
  if (o.coefficients.size() != coefficients.size()) throw std::invalid_argument("divisor classes of different rank");
  DivisorClass d = *this;
  for (std::size_t i = 0; i < coefficients.size(); ++i) d.coefficients[i] += o.coefficients[i];
  return d;
}

DivisorClass DivisorClass::scaled(long k) const {
  DivisorClass d = *this;
  for (auto& c : d.coefficients) c *= k;
  return d;
}

std::string DivisorClass::str() const {
  std::ostringstream os;
  bool first = true;
  for (std::size_t i = 0; i < coefficients.size(); ++i) {
    if (!coefficients[i]) continue;
    os << (first ? "" : " + ") << coefficients[i] << "*" << labels[i];
    first = false;
  }
  return first ? "0" : os.str();
}

DivisorClass divisor_class(const RelativeForm& form, const std::vector<int>& multiplicities) {
  DivisorClass d = DivisorClass::zero(form);
  if (multiplicities.size() != d.coefficients.size()) throw std::invalid_argument("one multiplicity per simple root");
  for (std::size_t i = 0; i < multiplicities.size(); ++i) d.coefficients[i] = multiplicities[i];
  return d;
}

int picard_rank(const RelativeForm& form) { return form.rank(); }

}  // namespace bt
