#include "bt/action.hpp"

#include <map>

#include "bt/polynomial.hpp"

namespace bt {

inline bool is_invertible(const RatFunc& x) { return !x.is_zero(); }
inline RatFunc inverse_of(const RatFunc& x) { return x.inverse(); }

namespace {

RootPair split_pair(const GroupModel& model, std::size_t position) { return model.pair_of(position); }

const FieldElem& as_field(const RootParam& p) {
  const auto* x = std::get_if<FieldElem>(&p);
  if (!x) throw std::invalid_argument("split root parameters are field elements");
  return *x;
}

const H0Elem& as_h0(const RootParam& p) {
  const auto* x = std::get_if<H0Elem>(&p);
  if (!x) throw std::invalid_argument("PU3 root parameters are H0 elements");
  return *x;
}

FieldElem pu3_eps(const FieldElem& m, const H0Elem& a, const H0Elem& b) {
  FieldElem one = FieldElem::from_int(m.config(), 1);
  return one - m * sigma(a.u) * b.u + m * sigma(m) * a.v * b.v;
}

struct Pu3Switch {
  FieldElem eps;
  H0Elem minus, plus;
  FieldElem m_new;
};

std::optional<Pu3Switch> pu3_switch(const FieldElem& m, const H0Elem& a, const H0Elem& b) {
  FieldElem eps = pu3_eps(m, a, b);
  if (eps.is_indistinguishable_from_zero()) return std::nullopt;
  FieldElem seps = sigma(eps);
  FieldElem sm = sigma(m);
  FieldElem inv = eps.inverse();
  H0Elem minus{m * (b.u - sm * a.u * b.v) * inv, m * sm * b.v * inv};
  H0Elem plus{sm * (a.u - m * sigma(a.v) * b.u) * seps.inverse(), m * sm * a.v * inv};
  return Pu3Switch{eps, minus, plus, m * seps * inv * inv};
}

}  // namespace

FieldElem d_a(const GroupModel& model, std::size_t position, const RootParam& u, const std::vector<FieldElem>& t_bar,
              const RootParam& up) {
  if (model.is_split()) {
    FieldElem m = split_m(t_bar, split_pair(model, position));
    return model.one() - m * as_field(u) * as_field(up);
  }
  if (position != 0) throw std::out_of_range("PU3 has one reduced positive root");
  return norm(pu3_eps(t_bar.at(0), as_h0(u), as_h0(up)));
}

SwitchResult beta_a(const GroupModel& model, std::size_t position, const RootParam& u,
                    const std::vector<FieldElem>& t_bar, const RootParam& up, bool require_unit) {
  FieldElem d = d_a(model, position, u, t_bar, up);
  if (d.is_indistinguishable_from_zero()) throw SwitchError("d_a vanishes: point outside the switch domain");
  if (require_unit && !d.is_unit()) throw SwitchError("d_a is not a unit: point outside the integral switch domain");
  if (model.is_split()) {
    RootPair a = split_pair(model, position);
    FieldElem m = split_m(t_bar, a);
    auto sw = split_switch(m, as_field(u), as_field(up));
    std::vector<FieldElem> t = t_bar;
    split_apply_torus(t, a, sw->eps);
    return {sw->p, t, sw->q, d};
  }
  auto sw = pu3_switch(t_bar.at(0), as_h0(u), as_h0(up));
  return {sw->minus, {sw->m_new}, sw->plus, d};
}

// ---------------------------------------------------------------------------
// Symbolic checks over rational function fields.

namespace {

using RMatrix = BasicMatrix<RatFunc>;

bool projectively_equal(const RMatrix& a, const RMatrix& b) {
  std::size_t ri = 0, rj = 0;
  bool found = false;
  for (std::size_t i = 0; i < a.rows() && !found; ++i)
    for (std::size_t j = 0; j < a.cols() && !found; ++j)
      if (!a(i, j).is_zero()) ri = i, rj = j, found = true;
  if (!found) return false;
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j)
      if (a(i, j) * b(ri, rj) != b(i, j) * a(ri, rj)) return false;
  return true;
}

bool exactly_equal(const RMatrix& a, const RMatrix& b) {
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j)
      if (a(i, j) != b(i, j)) return false;
  return true;
}

}  // namespace

bool theta_identity_split(int n) {
  std::vector<std::string> vars{"u", "up"};
  for (int k = 1; k < n; ++k) vars.push_back("s" + std::to_string(k));
  auto ring = make_ring(vars);
  auto v = [&](const std::string& name) { return RatFunc(Poly::var(ring, name)); };
  RatFunc one(Poly::constant(ring, 1));
  std::vector<RatFunc> tbar;
  for (int k = 1; k < n; ++k) tbar.push_back(v("s" + std::to_string(k)));
  std::vector<RatFunc> d{one};
  for (const auto& t : tbar) d.push_back(d.back() * t);
  RMatrix dm = RMatrix::diagonal(d);
  std::size_t sz = static_cast<std::size_t>(n);
  for (const RootPair& a : split_positive_pairs(n)) {
    RatFunc u = v("u"), up = v("up");
    RMatrix lhs = split_root_matrix(sz, a, u, false) * dm * split_root_matrix(sz, a, up, true);
    RatFunc m = split_m(tbar, a);
    auto sw = split_switch(m, u, up);
    if (!sw) return false;
    std::vector<RatFunc> tv(sz, one);
    tv[a.first] = sw->eps;
    tv[a.second] = sw->eps.inverse();
    RMatrix rhs = split_root_matrix(sz, a, sw->p, true) * RMatrix::diagonal(tv) * dm *
                  split_root_matrix(sz, a, sw->q, false);
    if (!exactly_equal(lhs, rhs)) return false;
    std::vector<RatFunc> folded = tbar;
    split_apply_torus(folded, a, sw->eps);
    std::vector<RatFunc> fd{one};
    for (const auto& t : folded) fd.push_back(fd.back() * t);
    RMatrix rhs2 = split_root_matrix(sz, a, sw->p, true) * RMatrix::diagonal(fd) * split_root_matrix(sz, a, sw->q, false);
    if (!projectively_equal(lhs, rhs2)) return false;
  }
  return true;
}

bool theta_identity_su3() {
  auto ring = make_ring({"u", "ub", "v", "up", "ubp", "vp", "m", "mb"});
  auto p = [&](const std::string& name) { return Poly::var(ring, name); };
  auto v = [&](const std::string& name) { return RatFunc(p(name)); };
  // sigma on the generators; v and vp are constrained by Tr(v) = N(u).
  std::map<std::string, Poly> sig{{"u", p("ub")},   {"ub", p("u")},  {"up", p("ubp")},
                                  {"ubp", p("up")}, {"m", p("mb")},  {"mb", p("m")},
                                  {"v", p("u") * p("ub") - p("v")}, {"vp", p("up") * p("ubp") - p("vp")}};
  auto s = [&](const RatFunc& x) { return x.substitute(sig); };
  RatFunc one(Poly::constant(ring, 1));
  auto yplus = [&](const RatFunc& a, const RatFunc& b) {
    RMatrix y = RMatrix::identity(3, one);
    y(0, 1) = -s(a);
    y(0, 2) = -b;
    y(1, 2) = a;
    return y;
  };
  auto yminus = [&](const RatFunc& a, const RatFunc& b) {
    RMatrix y = RMatrix::identity(3, one);
    y(1, 0) = a;
    y(2, 0) = -b;
    y(2, 1) = -s(a);
    return y;
  };
  auto h0 = [&](const RatFunc& a, const RatFunc& b) { return a * s(a) == b + s(b); };
  RatFunc u = v("u"), vv = v("v"), up = v("up"), vp = v("vp"), m = v("m"), mb = v("mb");
  if (!h0(u, vv) || !h0(up, vp)) return false;
  RMatrix dm = RMatrix::diagonal({one, m, m * mb});
  RMatrix lhs = yplus(u, vv) * dm * yminus(up, vp);
  RatFunc eps = one - m * v("ub") * up + m * mb * vv * vp;
  RatFunc seps = s(eps);
  RatFunc einv = eps.inverse();
  RatFunc um = m * (up - mb * u * vp) * einv;
  RatFunc vm = m * mb * vp * einv;
  RatFunc upl = mb * (u - m * s(vv) * up) * seps.inverse();
  RatFunc vpl = m * mb * vv * einv;
  if (!h0(um, vm) || !h0(upl, vpl)) return false;
  RMatrix z = RMatrix::diagonal({eps, seps * einv, seps.inverse()});
  RMatrix rhs = yminus(um, vm) * z * dm * yplus(upl, vpl);
  if (!exactly_equal(lhs, rhs)) return false;
  RatFunc mn = m * seps * einv * einv;
  RMatrix rhs2 = yminus(um, vm) * RMatrix::diagonal({one, mn, mn * s(mn)}) * yplus(upl, vpl);
  return projectively_equal(lhs, rhs2);
}

// ---------------------------------------------------------------------------

EmbeddedPoint identity_embedded_point(const GroupModel& model, std::uint64_t seed) {
  Matrix e = Matrix::identity(static_cast<std::size_t>(model.size()), model.one());
  return {e, model.identity_point(), e, seed};
}

Matrix embedded_matrix(const GroupModel& model, const EmbeddedPoint& p) {
  return p.g1 * model.compose(p.omega) * p.g2;
}

namespace {

RootOrder or_default(const GroupModel& model, const RootOrder& o) { return o.empty() ? model.default_order() : o; }

// One pass of the algorithm without retries.
NormalFormResult nf_once(const GroupModel& model, const Matrix& g1, const BigCellPoint& omega, const Matrix& g2,
                         const NormalFormOptions& opts) {
  NormalFormResult out;
  RootOrder order = or_default(model, opts.coordinates);
  std::size_t n = static_cast<std::size_t>(model.size());
  Matrix left = g1 * model.unipotent(omega.u_minus, true, order);
  Matrix right = model.unipotent(omega.u_plus, false, order) * g2;
  auto [lf, lk] = ldu_factor(left);
  if (!lf) {
    out.vanishing_minor = lk;
    out.message = "g1 u^- leaves the big cell (leading minor " + std::to_string(lk) + " vanishes)";
    return out;
  }
  auto [rf, rk] = ldu_factor(right);
  if (!rf) {
    out.vanishing_minor = rk;
    out.message = "u^+ g2 leaves the big cell (leading minor " + std::to_string(rk) + " vanishes)";
    return out;
  }
  Matrix lower, upper;
  std::vector<FieldElem> tbar;
  if (model.is_split()) {
    std::vector<RootPair> priority;
    for (std::size_t k : or_default(model, opts.priority)) priority.push_back(model.pair_of(k));
    auto c = split_collide(lf->upper, omega.t_bar, rf->lower, priority);
    if (!c.ok) {
      out.status = NFStatus::boundary;
      for (std::size_t k = 0; k < order.size(); ++k)
        if (model.pair_of(k) == c.failed_root) out.failed_root = k;
      out.failed_eps = c.failed_eps;
      out.partial_lower = c.lower;
      out.partial_upper = c.upper;
      out.partial_t_bar = c.tbar;
      out.message = "d_a vanishes during the switch";
      return out;
    }
    lower = c.lower;
    upper = c.upper;
    tbar = c.tbar;
  } else {
    H0Elem a{lf->upper(1, 2), -lf->upper(0, 2)};
    H0Elem b{rf->lower(1, 0), -rf->lower(2, 0)};
    auto sw = pu3_switch(omega.t_bar.at(0), a, b);
    if (!sw) {
      out.status = NFStatus::boundary;
      out.failed_root = 0;
      out.failed_eps = pu3_eps(omega.t_bar.at(0), a, b);
      out.partial_lower = lf->upper;
      out.partial_upper = rf->lower;
      out.partial_t_bar = omega.t_bar;
      out.message = "d_a vanishes during the switch";
      return out;
    }
    lower = model.chi(0, true, sw->minus);
    upper = model.chi(0, false, sw->plus);
    tbar = {sw->m_new};
  }
  const auto& s = lf->diag;
  const auto& sp = rf->diag;
  Matrix lc = lower, uc = upper;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      if (i > j) lc(i, j) = lower(i, j) * s[i] / s[j];
      if (i < j) uc(i, j) = upper(i, j) * sp[j] / sp[i];
    }
  Matrix um = lf->lower * lc;
  Matrix up = uc * rf->upper;
  for (std::size_t k = 0; k < tbar.size(); ++k) tbar[k] = (s[k + 1] / s[k]) * tbar[k] * (sp[k + 1] / sp[k]);
  BigCellPoint p;
  p.u_minus = model.unipotent_coordinates(um, true, order);
  p.u_plus = model.unipotent_coordinates(up, false, order);
  p.t_bar = tbar;
  out.status = NFStatus::ok;
  out.point = std::move(p);
  return out;
}

FieldElem random_digits(const FieldConfigPtr& field, std::int64_t lo_units, std::int64_t stride, Rng& rng, int terms,
                        bool nonzero_lead) {
  std::uint32_t p = field->residue_char;
  FieldElem acc(field);
  for (int k = 0; k < terms; ++k) {
    long c;
    if (p) {
      std::uniform_int_distribution<long> d(nonzero_lead && k == 0 ? 1 : 0, static_cast<long>(p) - 1);
      c = d(rng);
    } else {
      std::uniform_int_distribution<long> d(-3, 3);
      do c = d(rng);
      while (nonzero_lead && k == 0 && c == 0);
    }
    if (!c) continue;
    Rational ex(lo_units + k * stride, field->ramification);
    acc += FieldElem::monomial(field, Coeff(c, p), ex);
  }
  return acc;
}

std::int64_t least_units(const FieldConfigPtr& field, const RTilde& bound, std::int64_t residue, std::int64_t stride) {
  // Least n with n = residue mod stride and n/e admitted by bound.
  Rational scaled = bound.value() * field->ramification;
  std::int64_t n = ceil_rational(scaled);
  if (bound.plus() && Rational(n) == scaled) ++n;
  while (((n - residue) % stride + stride) % stride) ++n;
  return n;
}

std::vector<RootParam> random_unipotent_params(const GroupModel& model, Rng& rng) {
  std::vector<RootParam> out;
  std::size_t nr = model.form()->reduced_positive_roots().size();
  for (std::size_t k = 0; k < nr; ++k) {
    FieldElem u = random_digits(model.field(), 0, 1, rng, 2, false);
    if (model.is_split()) {
      out.emplace_back(u);
    } else {
      FieldElem w = random_digits(model.field(), 1, 2, rng, 2, false);
      out.emplace_back(H0Elem::from_u_and_trace_zero(u, w));
    }
  }
  return out;
}

}  // namespace

NormalFormResult normal_form(const GroupModel& model, const EmbeddedPoint& p, const NormalFormOptions& opts) {
  NormalFormResult first;
  try {
    first = nf_once(model, p.g1, p.omega, p.g2, opts);
  } catch (const PrecisionError& e) {
    first.message = std::string("precision exhausted: ") + e.what();
  }
  if (first.status == NFStatus::ok) return first;
  RootOrder order = or_default(model, opts.coordinates);
  Rng rng(p.seed);
  for (int attempt = 1; attempt <= opts.max_retries; ++attempt) {
    try {
      auto params = random_unipotent_params(model, rng);
      NormalFormResult inner, outer;
      if (attempt % 2) {
        Matrix h = model.unipotent(params, false, order);
        Matrix e = Matrix::identity(h.rows(), model.one());
        inner = nf_once(model, h, p.omega, e, opts);
        if (inner.status != NFStatus::ok) continue;
        outer = nf_once(model, p.g1 * matrix_inverse(h), *inner.point, p.g2, opts);
      } else {
        Matrix h = model.unipotent(params, true, order);
        Matrix e = Matrix::identity(h.rows(), model.one());
        inner = nf_once(model, e, p.omega, h, opts);
        if (inner.status != NFStatus::ok) continue;
        outer = nf_once(model, p.g1, *inner.point, matrix_inverse(h) * p.g2, opts);
      }
      if (outer.status == NFStatus::ok) {
        outer.retries = attempt;
        return outer;
      }
    } catch (const PrecisionError&) {
    } catch (const std::invalid_argument&) {
    }
  }
  first.retries = opts.max_retries;
  return first;
}

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::equal:
      return "equal";
    case Verdict::different:
      return "different";
    case Verdict::inconclusive:
      return "inconclusive";
  }
  return "?";
}

Verdict equivalent(const GroupModel& model, const EmbeddedPoint& p, const EmbeddedPoint& q,
                   const EquivalenceOptions& opts) {
  std::size_t n = static_cast<std::size_t>(model.size());
  std::vector<Matrix> translates{Matrix::identity(n, model.one())};
  for (int k = 1; k <= opts.torus_budget; ++k) {
    for (int sign : {1, -1}) {
      FieldElem tk = FieldElem::t_power(model.field(), Rational(sign * k));
      if (model.is_split()) {
        for (std::size_t i = 0; i + 1 < n; ++i) {
          std::vector<FieldElem> d(n, model.one());
          d[i] = tk;
          translates.push_back(model.torus_element(d));
        }
      } else {
        translates.push_back(model.torus_element({tk}));
      }
    }
  }
  Rng rng(p.seed * 0x9e3779b97f4a7c15ULL ^ q.seed);
  ApartmentPoint base = ApartmentPoint::base(model.form());
  ConcaveFn zero = standard_concave(model.form(), ConcaveKind::zero);
  for (int k = 0; k < opts.random_budget; ++k) translates.push_back(random_parahoric(model, base, zero, rng, 3));
  for (const Matrix& a : translates) {
    EmbeddedPoint pa = p, qa = q;
    pa.g1 = a * p.g1;
    qa.g1 = a * q.g1;
    auto rp = normal_form(model, pa, opts.nf);
    if (rp.status != NFStatus::ok) continue;
    auto rq = normal_form(model, qa, opts.nf);
    if (rq.status != NFStatus::ok) continue;
    return equal_within_precision(*rp.point, *rq.point) ? Verdict::equal : Verdict::different;
  }
  return Verdict::inconclusive;
}

OrbitInvariant orbit_invariant(const GroupModel& model, const EmbeddedPoint& p, const ApartmentPoint& x,
                               const ConcaveFn& f, int budget) {
  if (!(f.at_zero() == RTilde(0))) throw std::invalid_argument("orbit invariant needs f(0) = 0");
  OrbitInvariant out;
  Rng rng(p.seed ^ 0x5bd1e995ULL);
  for (int attempt = 0; attempt <= budget; ++attempt) {
    EmbeddedPoint q = p;
    if (attempt > 0) {
      q.g1 = random_parahoric(model, x, f, rng, 3) * p.g1;
      q.g2 = p.g2 * random_parahoric(model, x, f, rng, 3);
    }
    try {
      auto r = normal_form(model, q);
      if (r.status != NFStatus::ok) continue;
      if (!membership(*r.point, x, f, CellKind::omega_bar)) continue;
      out.values.clear();
      for (const auto& t : r.point->t_bar) {
        if (t.is_zero()) out.values.emplace_back(std::nullopt);
        else out.values.emplace_back(*t.valuation());
      }
      out.ok = true;
      return out;
    } catch (const PrecisionError& e) {
      out.message = std::string("precision exhausted: ") + e.what();
    }
  }
  if (out.message.empty()) out.message = "no integral normal form found within the search budget";
  return out;
}

// ---------------------------------------------------------------------------

FieldElem random_at_least(const FieldConfigPtr& field, const RTilde& bound, Rng& rng, int terms) {
  if (bound.is_infinite()) return FieldElem(field);
  std::int64_t lo = least_units(field, bound, 0, 1);
  return random_digits(field, lo, 1, rng, terms, false);
}

RootParam random_root_param(const GroupModel& model, const ApartmentPoint& x, const ConcaveFn& f, std::size_t root,
                            Rng& rng, int terms) {
  const auto& form = *model.form();
  const auto& field = model.field();
  if (form.multiplicity(root) == Multiplicity::plain)
    return random_at_least(field, param_bound(x, root, f[root]), rng, terms);
  if (form.is_divisible(root)) throw std::invalid_argument("divisible roots are not parametrized separately");
  auto twice = *form.index_of(scaled(form.roots()[root], 2));
  RTilde ub = param_bound(x, root, f[root] + RTilde(gamma_constant(QuadExt(field))));
  RTilde vb = param_bound(x, twice, f[twice]);
  FieldElem u = random_at_least(field, ub, rng, terms);
  FieldElem w(field);
  if (!vb.is_infinite()) w = random_digits(field, least_units(field, vb, 1, 2), 2, rng, terms, false);
  return H0Elem::from_u_and_trace_zero(u, w);
}

FieldElem random_torus_unit(const FieldConfigPtr& field, const RTilde& f0, Rng& rng, int terms) {
  FieldElem one = FieldElem::from_int(field, 1);
  if (f0 == RTilde(0)) return random_digits(field, 0, 1, rng, terms, true);
  return one + random_at_least(field, f0, rng, terms);
}

BigCellPoint random_big_cell_point(const GroupModel& model, const ApartmentPoint& x, const ConcaveFn& f,
                                   CellKind which, Rng& rng, int terms) {
  const auto& form = *model.form();
  BigCellPoint p;
  for (std::size_t r : form.reduced_positive_roots()) {
    p.u_minus.push_back(random_root_param(model, x, f, form.negative_of(r), rng, terms));
    p.u_plus.push_back(random_root_param(model, x, f, r, rng, terms));
  }
  for (int k = 0; k < form.rank(); ++k) {
    if (which == CellKind::omega) {
      p.t_bar.push_back(random_torus_unit(model.field(), f.at_zero(), rng, terms));
    } else {
      std::uniform_int_distribution<int> d(0, 2);
      FieldElem unit = random_digits(model.field(), 0, 1, rng, terms, true);
      p.t_bar.push_back(unit.shifted(Rational(d(rng))));
    }
  }
  return p;
}

Matrix random_parahoric(const GroupModel& model, const ApartmentPoint& x, const ConcaveFn& f, Rng& rng, int terms) {
  BigCellPoint a = random_big_cell_point(model, x, f, CellKind::omega, rng, terms);
  BigCellPoint b = random_big_cell_point(model, x, f, CellKind::omega, rng, terms);
  // u^+ t u^- from the second factor reaches beyond the big cell.
  Matrix second = model.unipotent(b.u_plus, false, model.default_order()) * model.torus_slice(b.t_bar) *
                  model.unipotent(b.u_minus, true, model.default_order());
  return model.compose(a) * second;
}

}  // namespace bt
