#include "bt/rootdata.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <set>
#include <stdexcept>

#include <gmpxx.h>

namespace bt {

RootVec operator+(const RootVec& a, const RootVec& b) {
  if (a.size() != b.size()) throw std::invalid_argument("root vectors of different rank");
  RootVec r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
  return r;
}

RootVec operator-(const RootVec& a) { return scaled(a, -1); }

RootVec scaled(const RootVec& a, int k) {
  RootVec r(a);
  for (auto& x : r) x *= k;
  return r;
}

int height(const RootVec& a) { return std::accumulate(a.begin(), a.end(), 0); }

bool is_zero(const RootVec& a) {
  return std::all_of(a.begin(), a.end(), [](int x) { return x == 0; });
}

namespace {

// Positive roots by height, then the larger coordinate vector first, so the
// simple roots come out as alpha_1, alpha_2, ...
void sort_positive(std::vector<RootVec>& pos) {
  std::sort(pos.begin(), pos.end(), [](const RootVec& a, const RootVec& b) {
    int ha = height(a), hb = height(b);
    if (ha != hb) return ha < hb;
    return a > b;
  });
}

std::vector<RootVec> with_negatives(std::vector<RootVec> pos) {
  sort_positive(pos);
  std::vector<RootVec> all = pos;
  for (const auto& r : pos) all.push_back(-r);
  return all;
}

bool is_positive_vec(const RootVec& r) {
  return !is_zero(r) && std::all_of(r.begin(), r.end(), [](int x) { return x >= 0; });
}

}  // namespace

RootSystem RootSystem::build(const std::string& cartan_type) {
  RootSystem rs;
  rs.label_ = cartan_type;
  if (cartan_type == "A1") {
    rs.gram2_ = {{4}};
  } else if (cartan_type == "A2") {
    rs.gram2_ = {{4, -2}, {-2, 4}};
  } else if (cartan_type == "A3") {
    rs.gram2_ = {{4, -2, 0}, {-2, 4, -2}, {0, -2, 4}};
  } else if (cartan_type == "B2") {
    // alpha_1 long, alpha_2 short
    rs.gram2_ = {{4, -2}, {-2, 2}};
  } else if (cartan_type == "G2") {
    // alpha_1 short, alpha_2 long
    rs.gram2_ = {{4, -6}, {-6, 12}};
  } else {
    throw std::invalid_argument("unsupported Cartan type: " + cartan_type);
  }
  rs.rank_ = static_cast<int>(rs.gram2_.size());

  // Closure of the simple roots under the simple reflections.
  std::set<RootVec> found;
  std::vector<RootVec> frontier;
  for (int i = 0; i < rs.rank_; ++i) {
    RootVec e(rs.rank_, 0);
    e[i] = 1;
    found.insert(e);
    found.insert(-e);
    frontier.push_back(e);
    frontier.push_back(-e);
  }
  while (!frontier.empty()) {
    RootVec r = frontier.back();
    frontier.pop_back();
    for (int i = 0; i < rs.rank_; ++i) {
      RootVec s = rs.reflect(rs.simple_root(i), r);
      if (found.insert(s).second) frontier.push_back(s);
    }
  }
  std::vector<RootVec> pos;
  for (const auto& r : found) {
    if (is_positive_vec(r)) {
      pos.push_back(r);
    } else if (!std::all_of(r.begin(), r.end(), [](int x) { return x <= 0; })) {
      throw std::logic_error("root with mixed-sign coordinates");
    }
  }
  rs.roots_ = with_negatives(std::move(pos));
  return rs;
}

std::optional<std::size_t> RootSystem::index_of(const RootVec& r) const {
  auto it = std::find(roots_.begin(), roots_.end(), r);
  if (it == roots_.end()) return std::nullopt;
  return static_cast<std::size_t>(it - roots_.begin());
}

RootVec RootSystem::simple_root(int i) const {
  if (i < 0 || i >= rank_) throw std::out_of_range("simple root index");
  RootVec e(rank_, 0);
  e[i] = 1;
  return e;
}

int RootSystem::form2(const RootVec& a, const RootVec& b) const {
  int s = 0;
  for (int i = 0; i < rank_; ++i)
    for (int j = 0; j < rank_; ++j) s += a[i] * gram2_[i][j] * b[j];
  return s;
}

int RootSystem::pairing(const RootVec& a, const RootVec& b) const {
  int bb = form2(b, b);
  if (bb == 0) throw std::invalid_argument("pairing with the zero vector");
  int num = 2 * form2(a, b);
  if (num % bb != 0) throw std::logic_error("non-integral Cartan integer");
  return num / bb;
}

int RootSystem::cartan(int i, int j) const { return pairing(simple_root(i), simple_root(j)); }

RootVec RootSystem::reflect(const RootVec& a, const RootVec& b) const {
  return b + scaled(a, -pairing(b, a));
}

// ---------------------------------------------------------------------------

RelativeForm::RelativeForm(RootSystem base, std::vector<int> perm) : base_(std::move(base)), perm_(std::move(perm)) {
  int n = base_.rank();
  if (static_cast<int>(perm_.size()) != n) throw std::invalid_argument("permutation has the wrong length");
  std::vector<int> seen(n, 0);
  for (int x : perm_) {
    if (x < 0 || x >= n || seen[x]++) throw std::invalid_argument("not a permutation of the simple roots");
  }
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (base_.cartan(perm_[i], perm_[j]) != base_.cartan(i, j))
        throw std::invalid_argument("permutation does not preserve the Dynkin diagram");

  simple_to_orbit_.assign(n, -1);
  for (int i = 0; i < n; ++i) {
    if (simple_to_orbit_[i] >= 0) continue;
    std::vector<int> orbit;
    int j = i;
    do {
      simple_to_orbit_[j] = static_cast<int>(orbits_.size());
      orbit.push_back(j);
      j = perm_[j];
    } while (j != i);
    std::sort(orbit.begin(), orbit.end());
    orbits_.push_back(orbit);
  }

  std::set<RootVec> rel;
  for (const auto& r : base_.roots()) {
    RootVec x = restrict(r);
    if (is_zero(x)) throw std::logic_error("absolute root with trivial restriction");
    rel.insert(x);
  }
  std::vector<RootVec> pos;
  for (const auto& r : rel)
    if (is_positive_vec(r)) pos.push_back(r);
  roots_ = with_negatives(std::move(pos));

  for (std::size_t k = 0; k < roots_.size(); ++k) {
    const RootVec& r = roots_[k];
    if (contains(scaled(r, 2))) {
      mult_.push_back(Multiplicity::multipliable);
    } else {
      bool half = std::all_of(r.begin(), r.end(), [](int x) { return x % 2 == 0; });
      RootVec h(r);
      for (auto& x : h) x /= 2;
      mult_.push_back(half && contains(h) ? Multiplicity::divisible : Multiplicity::plain);
    }
    ram_.push_back(static_cast<int>(preimage_orbits(k).front().size()));
  }
}

std::shared_ptr<const RelativeForm> RelativeForm::build(const RootSystem& base, const std::vector<int>& permutation) {
  return std::shared_ptr<const RelativeForm>(new RelativeForm(base, permutation));
}

std::shared_ptr<const RelativeForm> RelativeForm::build(const RootSystem& base, const std::string& automorphism) {
  std::vector<int> perm(base.rank());
  std::iota(perm.begin(), perm.end(), 0);
  if (automorphism == "swap") {
    if (base.label()[0] != 'A') throw std::invalid_argument("swap is only defined for type A");
    std::reverse(perm.begin(), perm.end());
    if (base.rank() == 1) throw std::invalid_argument("A1 has no nontrivial diagram automorphism");
  } else if (automorphism != "trivial") {
    throw std::invalid_argument("unknown automorphism: " + automorphism);
  }
  return build(base, perm);
}

bool RelativeForm::is_split() const {
  for (std::size_t i = 0; i < perm_.size(); ++i)
    if (perm_[i] != static_cast<int>(i)) return false;
  return true;
}

std::string RelativeForm::name() const { return base_.label() + (is_split() ? "/split" : "/quasi-split"); }

std::optional<std::size_t> RelativeForm::index_of(const RootVec& r) const {
  auto it = std::find(roots_.begin(), roots_.end(), r);
  if (it == roots_.end()) return std::nullopt;
  return static_cast<std::size_t>(it - roots_.begin());
}

std::size_t RelativeForm::negative_of(std::size_t idx) const {
  auto j = index_of(-roots_.at(idx));
  if (!j) throw std::logic_error("root system not symmetric");
  return *j;
}

RootVec RelativeForm::simple_root(int i) const {
  if (i < 0 || i >= rank()) throw std::out_of_range("relative simple root index");
  RootVec e(rank(), 0);
  e[i] = 1;
  return e;
}

std::vector<std::size_t> RelativeForm::reduced_roots() const {
  std::vector<std::size_t> out;
  for (std::size_t k = 0; k < roots_.size(); ++k)
    if (!is_divisible(k)) out.push_back(k);
  return out;
}

std::vector<std::size_t> RelativeForm::reduced_positive_roots() const {
  std::vector<std::size_t> out;
  for (std::size_t k = 0; k < num_positive(); ++k)
    if (!is_divisible(k)) out.push_back(k);
  return out;
}

RootVec RelativeForm::restrict(const RootVec& absolute) const {
  RootVec r(orbits_.size(), 0);
  for (std::size_t i = 0; i < absolute.size(); ++i) r[simple_to_orbit_[i]] += absolute[i];
  return r;
}

RootVec RelativeForm::absolute_orbit_image(const RootVec& r) const {
  RootVec s(r.size(), 0);
  for (std::size_t i = 0; i < r.size(); ++i) s[perm_[i]] = r[i];
  return s;
}

std::vector<RootVec> RelativeForm::preimage(std::size_t idx) const {
  std::vector<RootVec> out;
  for (const auto& r : base_.roots())
    if (restrict(r) == roots_.at(idx)) out.push_back(r);
  return out;
}

std::vector<std::vector<RootVec>> RelativeForm::preimage_orbits(std::size_t idx) const {
  std::vector<RootVec> pre = preimage(idx);
  std::vector<std::vector<RootVec>> out;
  std::set<RootVec> done;
  for (const auto& r : pre) {
    if (done.count(r)) continue;
    std::vector<RootVec> orbit;
    RootVec s = r;
    do {
      orbit.push_back(s);
      done.insert(s);
      s = absolute_orbit_image(s);
    } while (s != r);
    out.push_back(orbit);
  }
  return out;
}

RootVec RelativeForm::lift(std::size_t idx) const {
  // preimage() follows the base ordering, so the first entry is the least.
  return preimage(idx).front();
}

namespace {

// Gram form on relative roots: restriction is the orthogonal projection to the
// Galois-fixed subspace, so inner products average over the orbits.
mpq_class relative_form(const RelativeForm& f, const RootVec& a, const RootVec& b) {
  const auto& orb = f.simple_orbits();
  mpq_class s = 0;
  for (std::size_t i = 0; i < orb.size(); ++i) {
    for (std::size_t j = 0; j < orb.size(); ++j) {
      if (a[i] == 0 || b[j] == 0) continue;
      mpq_class g = 0;
      for (int x : orb[i])
        for (int y : orb[j]) g += f.base().form2(f.base().simple_root(x), f.base().simple_root(y));
      g /= static_cast<long>(orb[i].size() * orb[j].size());
      s += g * a[i] * b[j];
    }
  }
  return s;
}

}  // namespace

int RelativeForm::pairing(const RootVec& a, const RootVec& b) const {
  mpq_class bb = relative_form(*this, b, b);
  if (bb == 0) throw std::invalid_argument("pairing with the zero vector");
  mpq_class q = 2 * relative_form(*this, a, b) / bb;
  q.canonicalize();
  if (q.get_den() != 1) throw std::logic_error("non-integral relative Cartan integer");
  return static_cast<int>(q.get_num().get_si());
}

RootVec RelativeForm::reflect(const RootVec& a, const RootVec& b) const { return b + scaled(a, -pairing(b, a)); }

std::string RelativeForm::root_name(const RootVec& r) const {
  if (is_zero(r)) return "0";
  std::string out;
  for (std::size_t i = 0; i < r.size(); ++i) {
    if (r[i] == 0) continue;
    int c = r[i];
    if (c < 0)
      out += "-";
    else if (!out.empty())
      out += "+";
    int m = c < 0 ? -c : c;
    if (m != 1) out += std::to_string(m);
    out += rank() == 1 ? "a" : "a" + std::to_string(i + 1);
  }
  return out;
}

std::optional<std::size_t> RelativeForm::parse_root_name(const std::string& name) const {
  std::string s;
  for (char c : name)
    if (c != ' ') s.push_back(c);
  for (std::size_t k = 0; k < roots_.size(); ++k)
    if (root_name(roots_[k]) == s) return k;
  return std::nullopt;
}

bool is_positive_system(const RelativeForm& form, const std::vector<std::size_t>& psi) {
  std::set<std::size_t> in(psi.begin(), psi.end());
  if (in.size() != psi.size()) return false;
  for (std::size_t k = 0; k < form.roots().size(); ++k) {
    bool p = in.count(k) > 0;
    bool n = in.count(form.negative_of(k)) > 0;
    if (p == n) return false;
  }
  for (std::size_t a : psi) {
    for (std::size_t b : psi) {
      auto s = form.index_of(form.roots()[a] + form.roots()[b]);
      if (s && !in.count(*s)) return false;
    }
  }
  return true;
}

std::vector<std::size_t> simple_roots_of(const RelativeForm& form, const std::vector<std::size_t>& positive_system) {
  std::set<RootVec> sums;
  for (std::size_t a : positive_system)
    for (std::size_t b : positive_system) sums.insert(form.roots()[a] + form.roots()[b]);
  std::vector<std::size_t> out;
  for (std::size_t a : positive_system)
    if (!sums.count(form.roots()[a])) out.push_back(a);
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace bt
