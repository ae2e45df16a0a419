#include "bt/bigcell.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

namespace bt {

std::vector<RootPair> split_positive_pairs(int n) {
  std::vector<RootPair> out;
  for (int h = 1; h < n; ++h)
    for (int i = 0; i + h < n; ++i) out.emplace_back(i, i + h);
  return out;
}

bool equal_within_precision(const BigCellPoint& a, const BigCellPoint& b) {
  if (a.u_minus.size() != b.u_minus.size() || a.u_plus.size() != b.u_plus.size() || a.t_bar.size() != b.t_bar.size())
    return false;
  for (std::size_t k = 0; k < a.u_minus.size(); ++k)
    if (!param_equal_within_precision(a.u_minus[k], b.u_minus[k])) return false;
  for (std::size_t k = 0; k < a.u_plus.size(); ++k)
    if (!param_equal_within_precision(a.u_plus[k], b.u_plus[k])) return false;
  for (std::size_t k = 0; k < a.t_bar.size(); ++k)
    if (!equal_within_precision(a.t_bar[k], b.t_bar[k])) return false;
  return true;
}

std::string to_string(const BigCellPoint& p) {
  std::ostringstream os;
  auto list = [&](const std::vector<RootParam>& v) {
    os << "[";
    for (std::size_t k = 0; k < v.size(); ++k) os << (k ? ", " : "") << describe(v[k]);
    os << "]";
  };
  os << "(u-=";
  list(p.u_minus);
  os << ", tbar=[";
  for (std::size_t k = 0; k < p.t_bar.size(); ++k) os << (k ? ", " : "") << p.t_bar[k].str();
  os << "], u+=";
  list(p.u_plus);
  os << ")";
  return os.str();
}

// ---------------------------------------------------------------------------

GroupModel GroupModel::pgl(int n, const FieldConfigPtr& field) {
  if (n < 2 || n > 4) throw std::invalid_argument("PGL_n models exist for n = 2, 3, 4");
  if (field->ramification != 1) throw std::invalid_argument("split models need an unramified field");
  GroupModel m;
  m.kind_ = n == 2 ? ModelKind::pgl2 : n == 3 ? ModelKind::pgl3 : ModelKind::pgl4;
  m.n_ = n;
  m.field_ = field;
  m.form_ = RelativeForm::build(RootSystem::build("A" + std::to_string(n - 1)), "trivial");
  for (std::size_t r : m.form_->reduced_positive_roots()) {
    const RootVec& v = m.form_->roots()[r];
    int i = static_cast<int>(std::find(v.begin(), v.end(), 1) - v.begin());
    int j = i + height(v);
    m.pairs_.emplace_back(i, j);
  }
  return m;
}

GroupModel GroupModel::pu3(const FieldConfigPtr& field) {
  if (field->ramification != 2) throw std::invalid_argument("PU3 needs the ramified quadratic (e = 2)");
  static_cast<void>(QuadExt(field));
  GroupModel m;
  m.kind_ = ModelKind::pu3;
  m.n_ = 3;
  m.field_ = field;
  m.form_ = RelativeForm::build(RootSystem::build("A2"), "swap");
  return m;
}

GroupModel GroupModel::from_label(const std::string& label, std::uint32_t p, int precision) {
  if (label == "PGL2") return pgl(2, make_field(p, precision, 1));
  if (label == "PGL3") return pgl(3, make_field(p, precision, 1));
  if (label == "PGL4") return pgl(4, make_field(p, precision, 1));
  if (label == "PU3") return pu3(make_field(p, precision, 2));
  throw std::invalid_argument("unknown group model: " + label);
}

std::string GroupModel::label() const {
  switch (kind_) {
    case ModelKind::pgl2:
      return "PGL2";
    case ModelKind::pgl3:
      return "PGL3";
    case ModelKind::pgl4:
      return "PGL4";
    case ModelKind::pu3:
      return "PU3";
  }
  return "?";
}

RootOrder GroupModel::default_order() const {
  RootOrder o(form_->reduced_positive_roots().size());
  std::iota(o.begin(), o.end(), 0);
  return o;
}

RootPair GroupModel::pair_of(std::size_t position) const {
  if (!is_split()) throw std::logic_error("root pairs exist only for split models");
  return pairs_.at(position);
}

Matrix GroupModel::chi(std::size_t position, bool negative, const RootParam& param) const {
  if (is_split()) {
    const auto* u = std::get_if<FieldElem>(&param);
    if (!u) throw std::invalid_argument("split root groups take field elements");
    return split_root_matrix(static_cast<std::size_t>(n_), pairs_.at(position), *u, negative);
  }
  const auto* h = std::get_if<H0Elem>(&param);
  if (!h) throw std::invalid_argument("PU3 root groups take H0 elements");
  if (position != 0) throw std::out_of_range("PU3 has one reduced positive root");
  Matrix m = Matrix::identity(3, one());
  FieldElem su = sigma(h->u);
  if (negative) {
    m(1, 0) = h->u;
    m(2, 0) = -h->v;
    m(2, 1) = -su;
  } else {
    m(0, 1) = -su;
    m(0, 2) = -h->v;
    m(1, 2) = h->u;
  }
  return m;
}

Matrix GroupModel::torus_slice(const std::vector<FieldElem>& t_bar) const {
  if (is_split()) {
    if (static_cast<int>(t_bar.size()) != n_ - 1) throw std::invalid_argument("wrong number of torus coordinates");
    std::vector<FieldElem> d{one()};
    for (const auto& t : t_bar) d.push_back(d.back() * t);
    return Matrix::diagonal(d);
  }
  if (t_bar.size() != 1) throw std::invalid_argument("PU3 has one torus coordinate");
  const FieldElem& m = t_bar[0];
  return Matrix::diagonal({one(), m, m * sigma(m)});
}

Matrix GroupModel::unipotent(const std::vector<RootParam>& params, bool negative, const RootOrder& order) const {
  if (params.size() != order.size()) throw std::invalid_argument("one parameter per reduced positive root expected");
  Matrix m = Matrix::identity(static_cast<std::size_t>(n_), one());
  for (std::size_t k : order) m = m * chi(k, negative, params.at(k));
  return m;
}

Matrix GroupModel::compose(const BigCellPoint& p, const RootOrder& order) const {
  return unipotent(p.u_minus, true, order) * torus_slice(p.t_bar) * unipotent(p.u_plus, false, order);
}

std::vector<RootParam> GroupModel::unipotent_coordinates(const Matrix& u, bool negative, const RootOrder& order) const {
  if (!is_split()) {
    H0Elem h = negative ? H0Elem{u(1, 0), -u(2, 0)} : H0Elem{u(1, 2), -u(0, 2)};
    if (!satisfies_h0(h)) throw std::invalid_argument("unipotent matrix is not in the unitary group");
    return {h};
  }
  std::size_t nr = pairs_.size();
  std::vector<RootParam> params(nr, RootParam(zero()));
  int maxh = n_ - 1;
  // Entry at root a equals its own parameter plus a polynomial in parameters
  // of lower height, whatever the order.
  for (int h = 1; h <= maxh; ++h) {
    Matrix trial = unipotent(params, negative, order);
    for (std::size_t k = 0; k < nr; ++k) {
      auto [i, j] = pairs_[k];
      if (j - i != h) continue;
      params[k] = negative ? trial(j, i) - u(j, i) : u(i, j) - trial(i, j);
    }
  }
  return params;
}

bool GroupModel::in_group(const Matrix& g) const {
  if (g.rows() != static_cast<std::size_t>(n_) || g.cols() != static_cast<std::size_t>(n_)) return false;
  if (g.det().is_indistinguishable_from_zero()) return false;
  if (is_split()) return true;
  Matrix j(3, 3, zero());
  for (int i = 0; i < 3; ++i) j(i, 2 - i) = one();
  return projectively_equal(sigma(g).transpose() * j * g, j);
}

Matrix GroupModel::normalize(const Matrix& g) const {
  for (const auto& x : g.data())
    if (!x.is_indistinguishable_from_zero()) return g.scaled(x.inverse());
  throw PrecisionError("cannot normalize a matrix indistinguishable from zero");
}

BigCellPoint GroupModel::identity_point() const {
  std::size_t nr = form_->reduced_positive_roots().size();
  RootParam z = is_split() ? RootParam(zero()) : RootParam(H0Elem::identity(field_));
  return {std::vector<RootParam>(nr, z), std::vector<FieldElem>(static_cast<std::size_t>(form_->rank()), one()),
          std::vector<RootParam>(nr, z)};
}

Matrix GroupModel::torus_element(const std::vector<FieldElem>& d) const {
  if (is_split()) {
    if (static_cast<int>(d.size()) != n_) throw std::invalid_argument("diagonal of the wrong size");
    return Matrix::diagonal(d);
  }
  if (d.size() != 1) throw std::invalid_argument("PU3 torus element is given by one entry x");
  return Matrix::diagonal({d[0], one(), sigma(d[0]).inverse()});
}

std::vector<FieldElem> nu_bar(const GroupModel& model, const Matrix& t) {
  std::size_t n = static_cast<std::size_t>(model.size());
  if (t.rows() != n || t.cols() != n) throw std::invalid_argument("torus element of the wrong size");
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (i != j && !t(i, j).is_indistinguishable_from_zero()) throw std::invalid_argument("torus element is not diagonal");
  for (std::size_t i = 0; i < n; ++i)
    if (t(i, i).is_indistinguishable_from_zero()) throw PrecisionError("torus element not invertible to precision");
  std::vector<FieldElem> out;
  std::size_t count = model.is_split() ? n - 1 : 1;
  for (std::size_t k = 0; k < count; ++k) out.push_back(t(k + 1, k + 1) / t(k, k));
  return out;
}

FieldElem m_alpha(const RelativeForm& form, const std::vector<FieldElem>& t_bar, const RootVec& alpha) {
  if (static_cast<int>(t_bar.size()) != form.rank()) throw std::invalid_argument("wrong number of torus coordinates");
  if (static_cast<int>(alpha.size()) != form.base().rank()) throw std::invalid_argument("root of the wrong rank");
  FieldElem acc = FieldElem::from_int(t_bar.at(0).config(), 1);
  for (int i = 0; i < form.base().rank(); ++i) {
    int b = -alpha[i];
    if (b < 0) throw std::invalid_argument("m_alpha needs a nonpositive combination of simple roots");
    if (b == 0) continue;
    int orbit = -1;
    for (int o = 0; o < form.rank(); ++o) {
      const auto& orb = form.simple_orbits()[o];
      if (std::find(orb.begin(), orb.end(), i) != orb.end()) orbit = o;
    }
    RootVec lifted = form.lift(*form.index_of(form.simple_root(orbit)));
    FieldElem coord = lifted == form.base().simple_root(i) ? t_bar[orbit] : sigma(t_bar[orbit]);
    acc *= coord.pow(b);
  }
  return acc;
}

namespace {

bool torus_ok(const FieldElem& t, const RTilde& f0, CellKind which) {
  if (which == CellKind::omega_bar) return t.is_zero() || t.valuation_at_least(Rational(0));
  if (t.is_indistinguishable_from_zero()) return false;
  if (f0 == RTilde(0)) return t.is_unit();
  FieldElem one = FieldElem::from_int(t.config(), 1);
  FieldElem d = t - one;
  if (d.is_zero()) return true;
  return d.valuation_at_least(f0.value(), f0.plus());
}

}  // namespace

bool membership(const BigCellPoint& p, const ApartmentPoint& x, const ConcaveFn& f, CellKind which) {
  const auto& form = *x.form;
  auto rp = form.reduced_positive_roots();
  if (p.u_minus.size() != rp.size() || p.u_plus.size() != rp.size() ||
      static_cast<int>(p.t_bar.size()) != form.rank())
    throw std::invalid_argument("big-cell point does not match the root system");
  for (std::size_t k = 0; k < rp.size(); ++k) {
    if (!filtration_contains(x, f, form.negative_of(rp[k]), p.u_minus[k])) return false;
    if (!filtration_contains(x, f, rp[k], p.u_plus[k])) return false;
  }
  for (const auto& t : p.t_bar)
    if (!torus_ok(t, f.at_zero(), which)) return false;
  return true;
}

FactorResult factor_big_cell(const GroupModel& model, const Matrix& g, const RootOrder& order) {
  std::size_t n = static_cast<std::size_t>(model.size());
  if (g.rows() != n || g.cols() != n) throw std::invalid_argument("matrix of the wrong size");
  if (g.det().is_indistinguishable_from_zero()) throw PrecisionError("matrix not invertible to precision");
  auto [f, k] = ldu_factor(g);
  FactorResult out;
  if (!f) {
    out.vanishing_minor = k;
    return out;
  }
  BigCellPoint p;
  std::size_t count = model.is_split() ? n - 1 : 1;
  for (std::size_t i = 0; i < count; ++i) p.t_bar.push_back(f->diag[i + 1] / f->diag[i]);
  p.u_minus = model.unipotent_coordinates(f->lower, true, order);
  p.u_plus = model.unipotent_coordinates(f->upper, false, order);
  out.point = std::move(p);
  return out;
}

std::optional<bool> membership_of_matrix(const GroupModel& model, const Matrix& g, const ApartmentPoint& x,
                                         const ConcaveFn& f, CellKind which, const RootOrder& order) {
  FactorResult r = factor_big_cell(model, g, order);
  if (!r.point) return std::nullopt;
  return membership(*r.point, x, f, which);
}

namespace {

// Relative root of the (i, j) matrix entry, i != j, and whether the entry
// carries the v-part of a multipliable root.
std::size_t entry_root(const GroupModel& model, int i, int j) {
  const auto& form = *model.form();
  RootVec v(static_cast<std::size_t>(form.rank()), 0);
  if (model.is_split()) {
    int lo = std::min(i, j), hi = std::max(i, j);
    for (int k = lo; k < hi; ++k) v[k] = i < j ? 1 : -1;
  } else {
    int h = j - i;  // +-1: root +-a, +-2: root +-2a
    v[0] = h;
  }
  auto idx = form.index_of(v);
  if (!idx) throw std::logic_error("matrix entry without a root");
  return *idx;
}

bool entry_meets(const FieldElem& g, const RTilde& bound) {
  if (g.is_zero()) return true;
  if (bound.is_infinite()) return false;
  return g.valuation_at_least(bound.value(), bound.plus());
}

}  // namespace

bool parahoric_certificate(const GroupModel& model, const Matrix& g_in, const ApartmentPoint& x, const ConcaveFn& f) {
  if (!model.in_group(g_in)) return false;
  int n = model.size();
  const auto& form = *model.form();
  Matrix g = g_in;
  const RTilde& f0 = f.at_zero();
  bool torus_level_zero = f0 == RTilde(0);
  if (torus_level_zero) {
    // Scale by t^{-omega(det)/n}; only possible if that exponent lies in the
    // value group.
    Rational v = *g.det().valuation();
    Rational k = v / n;
    int e = model.field()->ramification;
    if (Rational(k * e).get_den() != 1) return false;
    g = g.scaled(FieldElem::t_power(model.field(), -k));
  } else {
    if (g(0, 0).is_indistinguishable_from_zero()) return false;
    g = g.scaled(g(0, 0).inverse());
  }
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      if (i == j) {
        if (torus_level_zero) {
          if (!entry_meets(g(i, i), RTilde(0))) return false;
        } else {
          FieldElem d = g(i, i) - model.one();
          if (!entry_meets(d, f0)) return false;
        }
        continue;
      }
      std::size_t r = entry_root(model, i, j);
      RTilde level = f[r];
      if (form.is_multipliable(r)) level = level + RTilde(gamma_constant(QuadExt(model.field())));
      if (!entry_meets(g(i, j), param_bound(x, r, level))) return false;
    }
  }
  if (torus_level_zero && !g.det().is_unit()) return false;
  return true;
}

}  // namespace bt
