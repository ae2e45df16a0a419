#include "bt/specialfiber.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <sstream>

namespace bt {

bool operator==(const SpecialPoint& a, const SpecialPoint& b) {
  return a.u_minus == b.u_minus && a.t_bar == b.t_bar && a.u_plus == b.u_plus && a.congruence == b.congruence;
}

std::string to_string(const SpecialPoint& p) {
  std::ostringstream os;
  auto group = [&](const std::vector<std::vector<Coeff>>& v) {
    os << "[";
    for (std::size_t k = 0; k < v.size(); ++k) {
      os << (k ? ", " : "") << "(";
      for (std::size_t i = 0; i < v[k].size(); ++i) os << (i ? " " : "") << v[k][i].str();
      os << ")";
    }
    os << "]";
  };
  os << "u-=";
  group(p.u_minus);
  os << " tbar=";
  group(p.t_bar);
  os << " u+=";
  group(p.u_plus);
  return os.str();
}

Rational reduction_shift(const RTilde& bound, const Rational& step, const Rational& offset) {
  if (bound.is_infinite()) throw std::invalid_argument("no shift for an infinite bound");
  return ValueSet::make(step, offset).ceil(bound.value(), bound.plus());
}

namespace {

std::vector<Coeff> digits_from(const FieldElem& x, const Rational& start, const Rational& step, int count) {
  std::vector<Coeff> out;
  for (int i = 0; i < count; ++i) out.push_back(x.coeff_at(start + step * i));
  return out;
}

struct ParamShape {
  int e = 1;                 // Weil coordinates of u
  RTilde u_bound, w_bound;   // w only for multipliable roots
  bool multipliable = false;
};

ParamShape shape_of(const ApartmentPoint& x, const ConcaveFn& f, std::size_t root, const FieldConfigPtr& field) {
  const auto& form = *x.form;
  ParamShape s;
  s.e = form.ramification(root);
  if (form.is_multipliable(root)) {
    s.multipliable = true;
    auto twice = *form.index_of(scaled(form.roots()[root], 2));
    s.u_bound = param_bound(x, root, f[root] + RTilde(gamma_constant(QuadExt(field))));
    s.w_bound = param_bound(x, twice, f[twice]);
  } else {
    s.u_bound = param_bound(x, root, f[root]);
  }
  return s;
}

std::vector<Coeff> reduce_param(const ParamShape& s, const RootParam& p) {
  Rational step(1, s.e);
  std::vector<Coeff> out;
  if (!s.multipliable) {
    const FieldElem& u = std::get<FieldElem>(p);
    if (s.u_bound.is_infinite()) return out;
    return digits_from(u, reduction_shift(s.u_bound, step), step, s.e);
  }
  const H0Elem& h = std::get<H0Elem>(p);
  if (!s.u_bound.is_infinite()) out = digits_from(h.u, reduction_shift(s.u_bound, step), step, s.e);
  if (!s.w_bound.is_infinite()) {
    FieldElem w = h.trace_zero_part();
    out.push_back(w.coeff_at(reduction_shift(s.w_bound, Rational(1), Rational(1, 2))));
  }
  return out;
}

// Number of leading digits forced to vanish when the bound tightens from a
// to b (both on the same lattice).
int forced_zeros(const RTilde& a, const RTilde& b, const Rational& step, const Rational& offset) {
  if (a.is_infinite() || b.is_infinite()) return 0;
  Rational d = (reduction_shift(b, step, offset) - reduction_shift(a, step, offset)) / step;
  return static_cast<int>(floor_rational(d));
}

int torus_ramification(const RelativeForm& form, int k) { return form.ramification(*form.index_of(form.simple_root(k))); }

}  // namespace

SpecialPoint reduce(const GroupModel& model, const BigCellPoint& p, const ApartmentPoint& x, const ConcaveFn& f) {
  const auto& form = *x.form;
  if (!membership(p, x, f, CellKind::omega_bar)) throw std::invalid_argument("point is not integral");
  SpecialPoint sp;
  auto rp = form.reduced_positive_roots();
  for (std::size_t k = 0; k < rp.size(); ++k) {
    std::size_t neg = form.negative_of(rp[k]);
    sp.u_minus.push_back(reduce_param(shape_of(x, f, neg, model.field()), p.u_minus[k]));
    sp.u_plus.push_back(reduce_param(shape_of(x, f, rp[k], model.field()), p.u_plus[k]));
  }
  const RTilde& f0 = f.at_zero();
  sp.congruence = !(f0 == RTilde(0));
  FieldElem one = model.one();
  for (int k = 0; k < form.rank(); ++k) {
    int e = torus_ramification(form, k);
    Rational step(1, e);
    const FieldElem& t = p.t_bar[k];
    if (!sp.congruence) {
      sp.t_bar.push_back(digits_from(t, Rational(0), step, e));
      continue;
    }
    Rational n = reduction_shift(f0, step);
    FieldElem d = t - one;
    if (!d.is_zero() && !d.valuation_at_least(n)) throw std::invalid_argument("torus coordinate misses the congruence");
    sp.t_bar.push_back(digits_from(d.shifted(-n), Rational(0), step, e));
  }
  return sp;
}

bool special_fiber_is_unipotent(const ConcaveFn& f) { return !(f.at_zero() == RTilde(0)); }

bool unipotent_radical_contains(const GroupModel& model, const SpecialPoint& sp, const ApartmentPoint& x,
                                const ConcaveFn& f) {
  if (special_fiber_is_unipotent(f)) return true;
  const auto& form = *x.form;
  ConcaveFn fp = f_plus(f);
  auto check = [&](std::size_t root, const std::vector<Coeff>& digits) {
    ParamShape a = shape_of(x, f, root, model.field()), b = shape_of(x, fp, root, model.field());
    Rational step(1, a.e);
    int zu = std::min<int>(forced_zeros(a.u_bound, b.u_bound, step, 0), a.e);
    std::size_t nu = a.u_bound.is_infinite() ? 0 : static_cast<std::size_t>(a.e);
    for (int i = 0; i < zu; ++i)
      if (!digits.at(i).is_zero()) return false;
    if (a.multipliable && !a.w_bound.is_infinite()) {
      if (forced_zeros(a.w_bound, b.w_bound, Rational(1), Rational(1, 2)) > 0 && !digits.at(nu).is_zero()) return false;
    }
    return true;
  };
  auto rp = form.reduced_positive_roots();
  for (std::size_t k = 0; k < rp.size(); ++k) {
    if (!check(form.negative_of(rp[k]), sp.u_minus.at(k))) return false;
    if (!check(rp[k], sp.u_plus.at(k))) return false;
  }
  for (const auto& t : sp.t_bar)
    if (!t.at(0).is_one()) return false;
  return true;
}

ReductiveDatum reductive_quotient_datum(const ApartmentPoint& x, const ConcaveFn& f) {
  if (special_fiber_is_unipotent(f))
    throw std::invalid_argument("f(0) > 0: the special fiber is unipotent and has no reductive quotient datum");
  const auto& form = *x.form;
  PhiXF pxf = phi_xf(x, f);
  ReductiveDatum d;
  d.rank = form.rank();
  for (std::size_t r : pxf.roots) {
    const RootVec& a = form.roots()[r];
    d.roots.push_back(a);
    d.names.push_back(form.root_name(a));
    std::vector<int> co;
    for (int i = 0; i < form.rank(); ++i) co.push_back(form.pairing(form.simple_root(i), a));
    d.coroots.push_back(co);
  }
  for (std::size_t r : pxf.simple) d.simple_roots.push_back(form.roots()[r]);
  return d;
}

bool check_root_datum(const ReductiveDatum& d) {
  auto pair = [](const RootVec& a, const std::vector<int>& c) {
    int s = 0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * c[i];
    return s;
  };
  std::set<RootVec> roots(d.roots.begin(), d.roots.end());
  std::set<std::vector<int>> coroots(d.coroots.begin(), d.coroots.end());
  for (std::size_t i = 0; i < d.roots.size(); ++i) {
    if (pair(d.roots[i], d.coroots[i]) != 2) return false;
    for (std::size_t j = 0; j < d.roots.size(); ++j) {
      int c = pair(d.roots[j], d.coroots[i]);
      RootVec s = d.roots[j];
      for (std::size_t k = 0; k < s.size(); ++k) s[k] -= c * d.roots[i][k];
      if (!roots.count(s)) return false;
      int c2 = pair(d.roots[i], d.coroots[j]);
      std::vector<int> t = d.coroots[j];
      for (std::size_t k = 0; k < t.size(); ++k) t[k] -= c2 * d.coroots[i][k];
      if (!coroots.count(t)) return false;
    }
  }
  return true;
}

// ---------------------------------------------------------------------------
// Exact linear algebra for small cones.

namespace {

using QVec = std::vector<Rational>;
using QMat = std::vector<QVec>;

// Some solution of A x = b, or nullopt.
std::optional<QVec> solve(QMat a, QVec b, int cols) {
  std::size_t m = a.size();
  std::vector<int> pivot_col;
  std::size_t row = 0;
  for (int c = 0; c < cols && row < m; ++c) {
    std::size_t p = row;
    while (p < m && a[p][c] == 0) ++p;
    if (p == m) continue;
    std::swap(a[p], a[row]);
    std::swap(b[p], b[row]);
    Rational inv = 1 / a[row][c];
    for (auto& v : a[row]) v *= inv;
    b[row] *= inv;
    for (std::size_t r = 0; r < m; ++r) {
      if (r == row || a[r][c] == 0) continue;
      Rational k = a[r][c];
      for (int j = 0; j < cols; ++j) a[r][j] -= k * a[row][j];
      b[r] -= k * b[row];
    }
    pivot_col.push_back(c);
    ++row;
  }
  for (std::size_t r = row; r < m; ++r)
    if (b[r] != 0) return std::nullopt;
  QVec x(static_cast<std::size_t>(cols), Rational(0));
  for (std::size_t r = 0; r < pivot_col.size(); ++r) x[pivot_col[r]] = b[r];
  return x;
}

int rank_of(const QMat& a, int cols) {
  QMat m = a;
  int rank = 0;
  std::size_t row = 0;
  for (int c = 0; c < cols && row < m.size(); ++c) {
    std::size_t p = row;
    while (p < m.size() && m[p][c] == 0) ++p;
    if (p == m.size()) continue;
    std::swap(m[p], m[row]);
    for (std::size_t r = row + 1; r < m.size(); ++r) {
      Rational k = m[r][c] / m[row][c];
      for (int j = 0; j < cols; ++j) m[r][j] -= k * m[row][j];
    }
    ++row;
    ++rank;
  }
  return rank;
}

QVec to_q(const std::vector<int>& v) { return QVec(v.begin(), v.end()); }

// v is a nonnegative combination of the given rows (Caratheodory over
// independent subsets).
bool nonneg_combination(const std::vector<int>& v, const std::vector<std::vector<int>>& rows) {
  if (std::all_of(v.begin(), v.end(), [](int c) { return c == 0; })) return true;
  int d = static_cast<int>(v.size());
  std::size_t r = rows.size();
  for (std::size_t mask = 1; mask < (std::size_t(1) << r); ++mask) {
    QMat cols;
    for (std::size_t i = 0; i < r; ++i)
      if (mask >> i & 1) cols.push_back(to_q(rows[i]));
    int k = static_cast<int>(cols.size());
    if (rank_of(cols, d) != k) continue;
    QMat a(static_cast<std::size_t>(d), QVec(static_cast<std::size_t>(k)));
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < k; ++j) a[i][j] = cols[j][i];
    auto x = solve(a, to_q(v), k);
    if (x && std::all_of(x->begin(), x->end(), [](const Rational& c) { return c >= 0; })) return true;
  }
  return false;
}

std::vector<int> integral_direction(const QVec& q) {
  mpz_class l = 1;
  for (const auto& c : q) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), c.get_den_mpz_t());
  std::vector<int> out;
  for (const auto& c : q) {
    mpz_class z = c.get_num() * (l / c.get_den());
    out.push_back(static_cast<int>(z.get_si()));
  }
  int gg = 0;
  for (int c : out) gg = std::gcd(gg, std::abs(c));
  if (gg > 1)
    for (int& c : out) c /= gg;
  return out;
}

std::vector<std::vector<int>> cone_rays(const Cone& c, int dim) {
  std::vector<std::vector<int>> rays;
  std::size_t r = c.rows.size();
  auto inside = [&](const QVec& d) {
    for (const auto& row : c.rows) {
      Rational s = 0;
      for (int i = 0; i < dim; ++i) s += row[i] * d[i];
      if (s > 0) return false;
    }
    return true;
  };
  for (std::size_t mask = 0; mask < (std::size_t(1) << r); ++mask) {
    QMat sub;
    for (std::size_t i = 0; i < r; ++i)
      if (mask >> i & 1) sub.push_back(to_q(c.rows[i]));
    if (static_cast<int>(sub.size()) != dim - 1 || rank_of(sub, dim) != dim - 1) continue;
    // A kernel vector: fix one free coordinate to 1.
    for (int free = 0; free < dim; ++free) {
      QMat a = sub;
      QVec e(static_cast<std::size_t>(dim), Rational(0));
      e[free] = 1;
      a.push_back(e);
      QVec b(a.size(), Rational(0));
      b.back() = 1;
      auto x = solve(a, b, dim);
      if (!x) continue;
      QVec neg = *x;
      for (auto& v : neg) v = -v;
      for (const QVec& d : {*x, neg}) {
        if (!inside(d)) continue;
        auto ray = integral_direction(d);
        if (std::find(rays.begin(), rays.end(), ray) == rays.end()) rays.push_back(ray);
      }
      break;
    }
  }
  return rays;
}

}  // namespace

bool cone_contains(const Cone& b, const Cone& a) {
  for (const auto& row : b.rows)
    if (!nonneg_combination(row, a.rows)) return false;
  return true;
}

std::vector<ConeFace> enumerate_faces(const Cone& c, int dim) {
  std::vector<ConeFace> faces;
  std::size_t r = c.rows.size();
  auto rays = cone_rays(c, dim);
  std::set<std::vector<std::size_t>> seen;
  for (std::size_t mask = 0; mask < (std::size_t(1) << r); ++mask) {
    QMat a;
    QVec b;
    std::vector<std::size_t> tight;
    for (std::size_t i = 0; i < r; ++i) {
      a.push_back(to_q(c.rows[i]));
      bool t = mask >> i & 1;
      b.push_back(t ? Rational(0) : Rational(-1));
      if (t) tight.push_back(i);
    }
    auto w = solve(a, b, dim);
    if (!w || !seen.insert(tight).second) continue;
    ConeFace f;
    f.tight = tight;
    QMat sub;
    for (std::size_t i : tight) sub.push_back(to_q(c.rows[i]));
    f.dimension = dim - (sub.empty() ? 0 : rank_of(sub, dim));
    for (const auto& ray : rays) {
      bool on = true;
      for (std::size_t i : tight) {
        long s = 0;
        for (int j = 0; j < dim; ++j) s += static_cast<long>(c.rows[i][j]) * ray[j];
        if (s != 0) on = false;
      }
      if (on) f.rays.push_back(ray);
    }
    for (int j = 0; j < dim; ++j)
      if ((*w)[j] != 0) f.zero_coordinates.push_back(static_cast<std::size_t>(j));
    f.orbit_dimension = dim - static_cast<int>(f.zero_coordinates.size());
    faces.push_back(std::move(f));
  }
  return faces;
}

ToroidalData toroidal_data(const ApartmentPoint& x, const ConcaveFn& f) {
  if (special_fiber_is_unipotent(f))
    throw std::invalid_argument("f(0) > 0: the special fiber is unipotent and carries no toroidal embedding");
  const auto& form = *x.form;
  ToroidalData d;
  d.rank = form.rank();
  PhiXF pxf = phi_xf(x, f);
  for (std::size_t r : pxf.simple) d.ambient.rows.push_back(form.roots()[r]);
  for (int i = 0; i < d.rank; ++i) {
    std::vector<int> e(static_cast<std::size_t>(d.rank), 0);
    e[i] = 1;
    d.cone.rows.push_back(e);
  }
  d.faces = enumerate_faces(d.cone, d.rank);
  d.contained = cone_contains(d.ambient, d.cone);
  d.strictly_contained = d.contained && !cone_contains(d.cone, d.ambient);
  return d;
}

}  // namespace bt
