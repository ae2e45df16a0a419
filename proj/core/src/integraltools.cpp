#include "bt/integraltools.hpp"

#include <algorithm>
#include <sstream>

#include "bt/specialfiber.hpp"

namespace bt {

namespace {

std::vector<std::string> split_list(const std::string& text, char sep) {
  std::vector<std::string> out;
  std::string cur;
  std::istringstream is(text);
  while (std::getline(is, cur, sep)) {
    auto b = cur.find_first_not_of(" \t\n");
    auto e = cur.find_last_not_of(" \t\n");
    if (b != std::string::npos) out.push_back(cur.substr(b, e - b + 1));
  }
  return out;
}

const char* kPi = "pi";

Poly pi_of(const PolyRingPtr& r) { return Poly::var(r, kPi); }

// z such that rel = c z + h with c a nonzero constant and h free of z.
std::optional<std::string> linear_unit_variable(const Poly& rel, const std::vector<std::string>& candidates) {
  for (const auto& z : candidates) {
    if (rel.degree_in(z) != 1) continue;
    Poly c = rel.coefficient_of(z, 1);
    if (c.is_constant() && !c.is_zero()) return z;
  }
  return std::nullopt;
}

// Solves rel = 0 for z (see linear_unit_variable).
Poly solve_for(const Poly& rel, const std::string& z) {
  Coeff c = rel.coefficient_of(z, 1).constant_term();
  Poly rest = rel.coefficient_of(z, 0).embed(rel.ring());
  return -(rest * Poly::constant(rel.ring(), c.inverse()));
}

}  // namespace

AffinePresentation AffinePresentation::make(const PolyRingPtr& ring, std::vector<std::string> generators,
                                            std::vector<Poly> relations) {
  if (ring->index_of(kPi) < 0) throw std::invalid_argument("presentation ring needs the variable pi");
  AffinePresentation p;
  p.ring = ring;
  p.generators = generators;
  for (auto& r : relations) p.relations.push_back(r.embed(ring));
  p.original_ring = ring;
  p.original_generators = generators;
  p.original_relations = p.relations;
  for (const auto& g : generators) {
    if (ring->index_of(g) < 0 || g == kPi) throw std::invalid_argument("bad generator " + g);
    p.forward.emplace(g, Poly::var(ring, g));
    p.backward.emplace(g, RatFunc(Poly::var(ring, g)));
  }
  return p;
}

AffinePresentation AffinePresentation::parse(const std::string& generators, const std::string& relations,
                                             std::uint32_t modulus) {
  auto gens = split_list(generators, ',');
  std::vector<std::string> vars = gens;
  vars.push_back(kPi);
  auto ring = make_ring(vars, modulus);
  std::vector<Poly> rels;
  for (const auto& r : split_list(relations, ';')) rels.push_back(Poly::parse(ring, r));
  return make(ring, gens, rels);
}

std::string AffinePresentation::str() const {
  std::ostringstream os;
  os << "o[";
  for (std::size_t i = 0; i < generators.size(); ++i) os << (i ? ", " : "") << generators[i];
  os << "]";
  if (!relations.empty()) {
    os << "/(";
    for (std::size_t i = 0; i < relations.size(); ++i) os << (i ? ", " : "") << relations[i].str();
    os << ")";
  }
  return os.str();
}

AffinePresentation dilate(const AffinePresentation& pres, const std::vector<Poly>& center) {
  AffinePresentation out = pres;
  for (const Poly& g_in : center) {
    Poly g = g_in.embed(union_ring(out.ring, g_in.ring()));
    for (const auto& v : g.ring()->vars)
      if (g.involves(v) && v != kPi && std::find(out.generators.begin(), out.generators.end(), v) == out.generators.end())
        throw std::invalid_argument("center involves the non-generator " + v);
    Poly special = g.substitute({{kPi, Poly::constant(g.ring(), 0)}});
    if (special.is_constant() && !special.is_zero())
      throw std::invalid_argument("center generator " + g_in.str() + " is a unit on the special fiber");

    // Fresh generator y with relation g - pi y.
    std::string y;
    for (int k = 1;; ++k) {
      y = "y" + std::to_string(k);
      if (out.ring->index_of(y) < 0 && g.ring()->index_of(y) < 0) break;
    }
    auto ring = union_ring(g.ring(), make_ring({y}, out.ring->modulus));
    ring = union_ring(out.ring, ring);
    Poly rel = g.embed(ring) - pi_of(ring) * Poly::var(ring, y);

    // Generic fiber: y = g / pi.
    std::map<std::string, RatFunc> back_vals = out.backward;
    RatFunc one_orig(Poly::constant(out.original_ring, 1));
    RatFunc pi_orig(Poly::var(out.original_ring, kPi));
    back_vals.emplace(kPi, pi_orig);
    RatFunc gy = g.embed(ring).evaluate<RatFunc>(
                     back_vals, one_orig,
                     [&](const Coeff& c) { return RatFunc(Poly::constant(out.original_ring, c)); }) *
                 pi_orig.inverse();

    std::vector<Poly> rels;
    for (const auto& r : out.relations) rels.push_back(r.embed(ring));
    std::map<std::string, Poly> fwd;
    for (auto& [k, v] : out.forward) fwd.emplace(k, v.embed(ring));
    out.ring = ring;
    out.generators.push_back(y);
    out.backward.emplace(y, gy);

    std::vector<std::string> old = out.generators;
    old.pop_back();
    if (auto z = linear_unit_variable(rel, old)) {
      Poly image = solve_for(rel, *z);
      std::map<std::string, Poly> sub{{*z, image}};
      for (auto& r : rels) r = r.substitute(sub);
      for (auto& [k, v] : fwd) v = v.substitute(sub);
      out.generators.erase(std::find(out.generators.begin(), out.generators.end(), *z));
      out.backward.erase(*z);
    } else {
      rels.push_back(rel);
    }
    out.relations.clear();
    for (auto& r : rels) {
      if (r.is_zero()) continue;
      int k = r.order_in(kPi);
      out.relations.push_back(k ? r.divided_by_power(kPi, k) : r);
    }
    out.forward = fwd;
  }
  return out;
}

bool generic_round_trip(const AffinePresentation& pres) {
  RatFunc one_orig(Poly::constant(pres.original_ring, 1));
  std::map<std::string, RatFunc> vals = pres.backward;
  vals.emplace(kPi, RatFunc(Poly::var(pres.original_ring, kPi)));
  auto from_orig = [&](const Coeff& c) { return RatFunc(Poly::constant(pres.original_ring, c)); };
  auto back_of = [&](const Poly& p) { return p.evaluate<RatFunc>(vals, one_orig, from_orig); };
  for (const auto& x : pres.original_generators)
    if (back_of(pres.forward.at(x)) != RatFunc(Poly::var(pres.original_ring, x))) return false;

  // Fraction field of the original algebra: solve original relations that
  // are linear in some generator.
  std::map<std::string, RatFunc> solved;
  for (const auto& x : pres.original_generators) solved.emplace(x, RatFunc(Poly::var(pres.original_ring, x)));
  solved.emplace(kPi, RatFunc(Poly::var(pres.original_ring, kPi)));
  for (const auto& r : pres.original_relations)
    for (const auto& z : pres.original_generators) {
      if (r.degree_in(z) != 1) continue;
      Poly c1 = r.coefficient_of(z, 1).embed(pres.original_ring);
      Poly c0 = r.coefficient_of(z, 0).embed(pres.original_ring);
      solved.insert_or_assign(z, RatFunc(-c0, c1));
      break;
    }
  auto reduced = [&](const RatFunc& f) {
    return f.num().evaluate<RatFunc>(solved, one_orig, from_orig) *
           f.den().evaluate<RatFunc>(solved, one_orig, from_orig).inverse();
  };
  for (const auto& r : pres.relations)
    if (!reduced(back_of(r)).is_zero()) return false;

  std::map<std::string, Poly> fwd;
  for (const auto& [k, v] : pres.forward) fwd.emplace(k, v.embed(pres.ring));
  for (const auto& y : pres.generators) {
    const RatFunc& b = pres.backward.at(y);
    Poly num = b.num().embed(union_ring(pres.ring, b.num().ring())).substitute(fwd);
    Poly den = b.den().embed(union_ring(pres.ring, b.den().ring())).substitute(fwd);
    Poly yv = Poly::var(num.ring(), y);
    if (RatFunc(num, den) == RatFunc(yv)) continue;
    Poly diff = num - yv * den.embed(num.ring());
    int k = diff.order_in(kPi);
    if (k) diff = diff.divided_by_power(kPi, k);
    bool found = false;
    for (const auto& r : pres.relations) {
      Poly re = r.embed(diff.ring());
      if (diff == re || diff == -re) found = true;
    }
    if (!found) return false;
  }
  return true;
}

AffinePresentation congruence_presentation(int n, std::uint32_t modulus) {
  AffinePresentation p = AffinePresentation::parse("T,S", "T*S - 1", modulus);
  for (int k = 0; k < n; ++k) {
    std::string c = k == 0 ? "T - 1" : p.generators.back();
    p = dilate(p, {Poly::parse(p.ring, c)});
  }
  return p;
}

namespace {

// Special fiber presentation with linear unit variables eliminated.
std::pair<std::vector<std::string>, std::vector<Poly>> special_fiber(const AffinePresentation& p) {
  std::vector<std::string> gens = p.generators;
  std::vector<Poly> rels;
  for (const auto& r : p.relations) {
    Poly s = r.substitute({{kPi, Poly::constant(r.ring(), 0)}});
    if (!s.is_zero()) rels.push_back(s);
  }
  for (bool changed = true; changed;) {
    changed = false;
    for (std::size_t i = 0; i < rels.size(); ++i) {
      auto z = linear_unit_variable(rels[i], gens);
      if (!z) continue;
      Poly image = solve_for(rels[i], *z);
      rels.erase(rels.begin() + static_cast<long>(i));
      for (auto& r : rels) r = r.substitute({{*z, image}});
      rels.erase(std::remove_if(rels.begin(), rels.end(), [](const Poly& r) { return r.is_zero(); }), rels.end());
      gens.erase(std::find(gens.begin(), gens.end(), *z));
      changed = true;
      break;
    }
  }
  return {gens, rels};
}

}  // namespace

bool congruence_fiber_iso_check(int n) {
  if (n <= 0)
    throw std::invalid_argument(
        "n = 0: the special fiber of G_m is kappa[T, S]/(T*S - 1), a torus, not the affine line kappa[u]");
  AffinePresentation g = congruence_presentation(n);
  AffinePresentation a = AffinePresentation::parse("T", "");
  for (int k = 0; k < n; ++k) {
    std::string c = k == 0 ? "T - 1" : a.generators.back();
    a = dilate(a, {Poly::parse(a.ring, c)});
  }
  // Both dilatations write T = 1 + pi^n u for their last generator u.
  if (g.generators.empty() || a.generators.size() != 1) return false;
  const std::string& ug = g.generators.back();
  const std::string& ua = a.generators.back();
  Poly tg = g.forward.at("T");
  Poly ta = a.forward.at("T").substitute({{ua, Poly::var(tg.ring(), ug)}}).embed(union_ring(tg.ring(), a.ring));
  if (tg.embed(ta.ring()) != ta) return false;
  auto [gens, rels] = special_fiber(g);
  auto [agens, arels] = special_fiber(a);
  return gens == std::vector<std::string>{ug} && rels.empty() && agens.size() == 1 && arels.empty();
}

PointModel PointModel::affine_space(int dim) {
  PointModel m;
  m.contains = [dim](const std::vector<FieldElem>& x) {
    if (static_cast<int>(x.size()) != dim) return false;
    for (const auto& c : x)
      if (!c.is_zero() && !c.valuation_at_least(Rational(0))) return false;
    return true;
  };
  m.coordinates = [](const std::vector<FieldElem>& x) { return x; };
  return m;
}

PointModel PointModel::multiplicative_group() {
  PointModel m;
  m.contains = [](const std::vector<FieldElem>& x) { return x.size() == 1 && x[0].is_unit(); };
  m.coordinates = [](const std::vector<FieldElem>& x) { return x; };
  return m;
}

PointModel dilate_points(const PointModel& model, const Poly& center) {
  auto value = [center, model](const std::vector<FieldElem>& x) {
    auto c = model.coordinates(x);
    std::map<std::string, FieldElem> vals;
    for (std::size_t i = 0; i < c.size(); ++i) vals.emplace("x" + std::to_string(i), c[i]);
    const auto& cfg = x.at(0).config();
    return center.evaluate<FieldElem>(vals, FieldElem::from_int(cfg, 1),
                                      [&](const Coeff& k) { return FieldElem::from_coeff(cfg, k); });
  };
  PointModel out;
  out.contains = [model, value](const std::vector<FieldElem>& x) {
    if (!model.contains(x)) return false;
    FieldElem g = value(x);
    return g.is_zero() || g.valuation_at_least(Rational(1));
  };
  out.coordinates = [model, value](const std::vector<FieldElem>& x) {
    auto c = model.coordinates(x);
    c.push_back(value(x).shifted(Rational(-1)));
    return c;
  };
  return out;
}

// ---------------------------------------------------------------------------

std::vector<Exponents> TruncDist::basis() const {
  std::vector<Exponents> out;
  Exponents e(static_cast<std::size_t>(vars), 0);
  // Degree by degree, lexicographic within a degree.
  for (int d = 0; d < level; ++d) {
    std::function<void(int, int)> rec = [&](int i, int left) {
      if (i == vars - 1) {
        e[i] = left;
        out.push_back(e);
        return;
      }
      for (int k = left; k >= 0; --k) {
        e[i] = k;
        rec(i + 1, left - k);
      }
    };
    if (vars == 0) {
      if (d == 0) out.push_back(e);
      continue;
    }
    rec(0, d);
  }
  return out;
}

long TruncDist::dimension() const {
  // C(vars + level - 1, vars)
  long num = 1, den = 1;
  for (int i = 1; i <= vars; ++i) {
    num *= level - 1 + i;
    den *= i;
  }
  return num / den;
}

struct JetShape {
  int vars = 0, level = 0;
  std::vector<Exponents> monos;
  // For each i: pairs (j, k) with monos[i] + monos[j] = monos[k].
  std::vector<std::vector<std::pair<int, int>>> mult;
};

std::shared_ptr<const JetShape> Jet::make_shape(int vars, int level) {
  if (vars < 0 || level < 1) throw std::invalid_argument("jet shape needs vars >= 0 and level >= 1");
  auto s = std::make_shared<JetShape>();
  s->vars = vars;
  s->level = level;
  s->monos = TruncDist{vars, level}.basis();
  std::map<Exponents, int> index;
  for (std::size_t i = 0; i < s->monos.size(); ++i) index.emplace(s->monos[i], static_cast<int>(i));
  s->mult.resize(s->monos.size());
  for (std::size_t i = 0; i < s->monos.size(); ++i)
    for (std::size_t j = 0; j < s->monos.size(); ++j) {
      Exponents e = s->monos[i];
      for (int v = 0; v < vars; ++v) e[v] += s->monos[j][v];
      auto it = index.find(e);
      if (it != index.end()) s->mult[i].emplace_back(static_cast<int>(j), it->second);
    }
  return s;
}

Jet::Jet(std::shared_ptr<const JetShape> shape, const FieldElem& constant)
    : shape_(std::move(shape)), c_(shape_->monos.size(), FieldElem(constant.config())) {
  c_[0] = constant;
}

Jet Jet::variable(std::shared_ptr<const JetShape> shape, int index, const FieldElem& base) {
  Jet j(shape, base);
  if (shape->level > 1) {
    Exponents e(static_cast<std::size_t>(shape->vars), 0);
    e.at(index) = 1;
    auto it = std::find(shape->monos.begin(), shape->monos.end(), e);
    j.c_[static_cast<std::size_t>(it - shape->monos.begin())] = FieldElem::from_int(base.config(), 1);
  }
  return j;
}

Jet Jet::one_like(const Jet& j) { return Jet(j.shape_, FieldElem::from_int(j.c_[0].config(), 1)); }

Jet Jet::constant_like(const Jet& j, const FieldElem& c) { return Jet(j.shape_, c); }

const std::vector<Exponents>& Jet::monomials() const { return shape_->monos; }

Jet Jet::operator-() const {
  Jet r = *this;
  for (auto& c : r.c_) c = -c;
  return r;
}

Jet operator+(const Jet& a, const Jet& b) {
  Jet r = a;
  for (std::size_t i = 0; i < r.c_.size(); ++i) r.c_[i] += b.c_[i];
  return r;
}

Jet operator-(const Jet& a, const Jet& b) {
  Jet r = a;
  for (std::size_t i = 0; i < r.c_.size(); ++i) r.c_[i] -= b.c_[i];
  return r;
}

Jet operator*(const Jet& a, const Jet& b) {
  Jet r(a.shape_, FieldElem(a.c_[0].config()));
  const auto& mult = a.shape_->mult;
  for (std::size_t i = 0; i < a.c_.size(); ++i) {
    if (a.c_[i].is_zero()) continue;
    for (auto [j, k] : mult[i]) {
      if (b.c_[j].is_zero()) continue;
      r.c_[k] += a.c_[i] * b.c_[j];
    }
  }
  return r;
}

Jet Jet::inverse() const {
  if (c_[0].is_indistinguishable_from_zero()) throw PrecisionError("jet with vanishing constant term");
  FieldElem inv0 = c_[0].inverse();
  Jet n = *this;
  for (auto& c : n.c_) c *= inv0;
  n.c_[0] = FieldElem(c_[0].config());  // nilpotent part
  Jet one = one_like(*this);
  Jet acc = one, pw = one;
  for (int k = 1; k < shape_->level; ++k) {
    pw = pw * (-n);
    acc += pw;
  }
  for (auto& c : acc.c_) c *= inv0;
  return acc;
}

namespace {

std::string mono_str(const Exponents& e) {
  std::ostringstream os;
  bool any = false;
  for (std::size_t i = 0; i < e.size(); ++i) {
    if (!e[i]) continue;
    os << (any ? "*" : "") << "X" << i;
    if (e[i] > 1) os << "^" << e[i];
    any = true;
  }
  return any ? os.str() : "1";
}

}  // namespace

ExtensionVerdict extension_test(const JetMap& map, const std::vector<FieldElem>& base, int level) {
  if (base.empty()) throw std::invalid_argument("base point needs coordinates");
  auto shape = Jet::make_shape(static_cast<int>(base.size()), level);
  std::vector<Jet> in;
  for (std::size_t i = 0; i < base.size(); ++i) in.push_back(Jet::variable(shape, static_cast<int>(i), base[i]));
  std::vector<Jet> out;
  try {
    out = map(in);
  } catch (const PrecisionError& e) {
    throw std::invalid_argument(std::string("map undefined at the base point: ") + e.what());
  }
  ExtensionVerdict v;
  v.level = level;
  for (std::size_t comp = 0; comp < out.size(); ++comp) {
    const auto& c = out[comp].coefficients();
    for (std::size_t i = 0; i < c.size(); ++i) {
      if (c[i].is_zero() || c[i].valuation_at_least(Rational(0))) continue;
      v.integral = false;
      v.witness = "component " + std::to_string(comp) + ", coefficient of " + mono_str(shape->monos[i]) + " = " +
                  c[i].str();
      return v;
    }
  }
  return v;
}

ExtensionVerdict extension_test(const std::vector<RatFunc>& components, const std::vector<std::string>& vars,
                                const std::vector<FieldElem>& base, int level) {
  if (vars.size() != base.size()) throw std::invalid_argument("one base coordinate per variable");
  const auto& cfg = base.at(0).config();
  JetMap map = [&](const std::vector<Jet>& x) {
    std::map<std::string, Jet> vals;
    for (std::size_t i = 0; i < vars.size(); ++i) vals.emplace(vars[i], x[i]);
    Jet one = Jet::one_like(x.at(0));
    Jet pi = Jet::constant_like(one, FieldElem::t_power(cfg, 1));
    vals.emplace(kPi, pi);
    auto from = [&](const Coeff& c) { return Jet::constant_like(one, FieldElem::from_coeff(cfg, c)); };
    std::vector<Jet> out;
    for (const auto& r : components) {
      Jet num = r.num().evaluate<Jet>(vals, one, from);
      Jet den = r.den().evaluate<Jet>(vals, one, from);
      if (!is_invertible(den)) throw PrecisionError("denominator vanishes");
      out.push_back(num * den.inverse());
    }
    return out;
  };
  return extension_test(map, base, level);
}

}  // namespace bt

namespace bt {

namespace {

using JetMatrix = BasicMatrix<Jet>;

JetMatrix pgl2_cell(const Jet& um, const Jet& tbar, const Jet& up) {
  Jet one = Jet::one_like(um);
  Jet zero = one - one;
  JetMatrix l = JetMatrix::identity(2, one), d = JetMatrix::identity(2, one), u = JetMatrix::identity(2, one);
  l(1, 0) = zero - um;
  d(1, 1) = tbar;
  u(0, 1) = up;
  return l * d * u;
}

std::vector<Jet> pgl2_action(const std::vector<Jet>& x) {
  if (x.size() != 9) throw std::invalid_argument("the PGL_2 action takes nine coordinates");
  JetMatrix g1 = pgl2_cell(x[0], x[1], x[2]);
  JetMatrix g2 = pgl2_cell(x[6], x[7], x[8]);
  Jet one = Jet::one_like(x[0]);
  JetMatrix left = g1 * split_root_matrix(2, RootPair{0, 1}, x[3], true);
  JetMatrix right = split_root_matrix(2, RootPair{0, 1}, x[5], false) * g2;
  auto [lf, lk] = ldu_factor(left);
  auto [rf, rk] = ldu_factor(right);
  if (!lf || !rf) throw PrecisionError("factor leaves the big cell");
  auto c = split_collide(lf->upper, std::vector<Jet>{x[4]}, rf->lower, {RootPair{0, 1}});
  if (!c.ok) throw PrecisionError("d_a vanishes at the base point");
  const auto& s = lf->diag;
  const auto& sp = rf->diag;
  Jet zero = one - one;
  Jet um = lf->lower(1, 0) + c.lower(1, 0) * s[1] * inverse_of(s[0]);
  Jet up = c.upper(0, 1) * sp[1] * inverse_of(sp[0]) + rf->upper(0, 1);
  Jet tbar = s[1] * inverse_of(s[0]) * c.tbar[0] * sp[1] * inverse_of(sp[0]);
  return {zero - um, tbar, up};
}

}  // namespace

JetMap pgl2_action_jet_map() { return pgl2_action; }

std::vector<FieldElem> pgl2_identity_triple(const FieldConfigPtr& field) {
  FieldElem z(field), o = FieldElem::from_int(field, 1);
  return {z, o, z, z, o, z, z, o, z};
}

// ---------------------------------------------------------------------------

namespace {

// Digits of a parameter (as laid out by reduce) that the tighter level f
// forces to vanish, given the level g.
bool residue_meets(const RelativeForm& form, const ApartmentPoint& x, const ConcaveFn& f, const ConcaveFn& g,
                   std::size_t root, const std::vector<Coeff>& digits, const Rational& gamma) {
  int e = form.ramification(root);
  Rational step(1, e);
  auto zeros = [](const RTilde& a, const RTilde& b, const Rational& st, const Rational& off) {
    if (a.is_infinite() || b.is_infinite()) return 0;
    Rational d = (reduction_shift(b, st, off) - reduction_shift(a, st, off)) / st;
    return static_cast<int>(floor_rational(d));
  };
  RTilde extra = form.is_multipliable(root) ? RTilde(gamma) : RTilde(0);
  RTilde ug = param_bound(x, root, g[root] + extra), uf = param_bound(x, root, f[root] + extra);
  int zu = std::min(zeros(ug, uf, step, 0), e);
  for (int i = 0; i < zu; ++i)
    if (!digits.at(static_cast<std::size_t>(i)).is_zero()) return false;
  if (form.is_multipliable(root)) {
    auto twice = *form.index_of(scaled(form.roots()[root], 2));
    RTilde wg = param_bound(x, twice, g[twice]), wf = param_bound(x, twice, f[twice]);
    std::size_t nu = ug.is_infinite() ? 0 : static_cast<std::size_t>(e);
    if (!wg.is_infinite() && zeros(wg, wf, Rational(1), Rational(1, 2)) > 0 && !digits.at(nu).is_zero())
      return false;
  }
  return true;
}

bool torus_residue_meets(const RTilde& f0, const RTilde& g0, int e, const std::vector<Coeff>& digits) {
  Rational step(1, e);
  if (g0 == RTilde(0)) {
    if (f0 == RTilde(0)) return true;
    if (!digits.at(0).is_one()) return false;
    int z = static_cast<int>(floor_rational(reduction_shift(f0, step) / step));
    for (int i = 1; i < std::min(z, e); ++i)
      if (!digits.at(static_cast<std::size_t>(i)).is_zero()) return false;
    return true;
  }
  int z = static_cast<int>(floor_rational((reduction_shift(f0, step) - reduction_shift(g0, step)) / step));
  for (int i = 0; i < std::min(z, e); ++i)
    if (!digits.at(static_cast<std::size_t>(i)).is_zero()) return false;
  return true;
}

}  // namespace

CompatibilityReport dilatation_compatibility_check(const GroupModel& model, const ApartmentPoint& x,
                                                   const ConcaveFn& f, const ConcaveFn& g, int samples,
                                                   std::uint64_t seed) {
  const auto& form = *x.form;
  for (std::size_t r = 0; r < form.roots().size(); ++r)
    if (!(g[r] <= f[r] && f[r] <= g[r] + RTilde(1)))
      throw std::invalid_argument("need g <= f <= g + 1 at " + form.root_name(form.roots()[r]));
  if (!(g.at_zero() <= f.at_zero() && f.at_zero() <= g.at_zero() + RTilde(1)))
    throw std::invalid_argument("need g <= f <= g + 1 at 0");
  Rational gamma = model.is_split() ? Rational(0) : gamma_constant(QuadExt(model.field()));
  Rng rng(seed);
  CompatibilityReport rep;
  auto rp = form.reduced_positive_roots();
  for (int i = 0; i < samples; ++i) {
    BigCellPoint p = random_big_cell_point(model, x, i % 2 == 0 ? f : g, CellKind::omega, rng, 4);
    bool lhs = membership(p, x, f, CellKind::omega);
    bool rhs = membership(p, x, g, CellKind::omega);
    if (rhs) {
      SpecialPoint sp = reduce(model, p, x, g);
      for (std::size_t k = 0; k < rp.size() && rhs; ++k)
        rhs = residue_meets(form, x, f, g, form.negative_of(rp[k]), sp.u_minus[k], gamma) &&
              residue_meets(form, x, f, g, rp[k], sp.u_plus[k], gamma);
      for (int k = 0; k < form.rank() && rhs; ++k) {
        int e = form.ramification(*form.index_of(form.simple_root(k)));
        rhs = torus_residue_meets(f.at_zero(), g.at_zero(), e, sp.t_bar[static_cast<std::size_t>(k)]);
      }
    }
    ++rep.samples;
    if (lhs) ++rep.in_f;
    if (lhs == rhs) {
      ++rep.agreements;
    } else if (rep.first_disagreement.empty()) {
      rep.first_disagreement = "sample " + std::to_string(i) + ": " + to_string(p) + " in G_f: " +
                               (lhs ? "yes" : "no") + ", via residues: " + (rhs ? "yes" : "no");
    }
  }
  return rep;
}

}  // namespace bt
