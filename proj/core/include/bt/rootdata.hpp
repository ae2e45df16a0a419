#pragma once

#include <cstddef>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace bt {

/// Coordinates of a root over the simple roots.
using RootVec = std::vector<int>;

RootVec operator+(const RootVec& a, const RootVec& b);
RootVec operator-(const RootVec& a);
RootVec scaled(const RootVec& a, int k);
int height(const RootVec& a);
bool is_zero(const RootVec& a);

/// Reduced irreducible root system of rank <= 3, realized on the simple-root
/// basis with an explicit Gram matrix.
class RootSystem {
 public:
  /// "A1", "A2", "A3", "B2", "G2".
  static RootSystem build(const std::string& cartan_type);

  const std::string& label() const { return label_; }
  int rank() const { return rank_; }
  /// Positive roots first (height, then lexicographic), then their negatives
  /// in the same order.
  const std::vector<RootVec>& roots() const { return roots_; }
  std::size_t num_positive() const { return roots_.size() / 2; }
  std::optional<std::size_t> index_of(const RootVec& r) const;
  bool contains(const RootVec& r) const { return index_of(r).has_value(); }
  RootVec simple_root(int i) const;

  /// Cartan integer <a, b^vee>.
  int pairing(const RootVec& a, const RootVec& b) const;
  /// <alpha_i, alpha_j^vee>.
  int cartan(int i, int j) const;
  /// s_a(b) = b - <b, a^vee> a.
  RootVec reflect(const RootVec& a, const RootVec& b) const;
  /// Twice the Gram form; integral for every supported type.
  int form2(const RootVec& a, const RootVec& b) const;

 private:
  std::string label_;
  int rank_ = 0;
  std::vector<std::vector<int>> gram2_;  // 2 (alpha_i, alpha_j)
  std::vector<RootVec> roots_;
};

enum class Multiplicity { plain, multipliable, divisible };

/// Relative root system of a quasi-split form obtained from a diagram
/// automorphism (or the trivial action for split forms).
class RelativeForm {
 public:
  /// `automorphism` is "trivial" or "swap" (reverses the Dynkin diagram of
  /// type A). Throws when the permutation does not preserve the Cartan
  /// matrix.
  static std::shared_ptr<const RelativeForm> build(const RootSystem& base, const std::string& automorphism);
  /// Arbitrary permutation of the simple roots.
  static std::shared_ptr<const RelativeForm> build(const RootSystem& base, const std::vector<int>& permutation);

  const RootSystem& base() const { return base_; }
  const std::vector<int>& permutation() const { return perm_; }
  bool is_split() const;
  std::string name() const;

  int rank() const { return static_cast<int>(orbits_.size()); }
  /// Absolute simple-root indices of each relative simple root.
  const std::vector<std::vector<int>>& simple_orbits() const { return orbits_; }
  /// Relative roots (coordinates over Delta): positives ordered by height then
  /// lexicographically, then negatives.
  const std::vector<RootVec>& roots() const { return roots_; }
  std::size_t num_positive() const { return roots_.size() / 2; }
  std::optional<std::size_t> index_of(const RootVec& r) const;
  bool contains(const RootVec& r) const { return index_of(r).has_value(); }
  std::size_t negative_of(std::size_t idx) const;
  bool is_positive(std::size_t idx) const { return idx < num_positive(); }
  RootVec simple_root(int i) const;

  Multiplicity multiplicity(std::size_t idx) const { return mult_[idx]; }
  bool is_multipliable(std::size_t idx) const { return mult_[idx] == Multiplicity::multipliable; }
  bool is_divisible(std::size_t idx) const { return mult_[idx] == Multiplicity::divisible; }
  /// Non-divisible roots.
  std::vector<std::size_t> reduced_roots() const;
  std::vector<std::size_t> reduced_positive_roots() const;

  /// Restriction of an absolute root.
  RootVec restrict(const RootVec& absolute) const;
  /// Absolute roots restricting to the relative root `idx`.
  std::vector<RootVec> preimage(std::size_t idx) const;
  /// Galois orbits of absolute roots restricting to `idx`.
  std::vector<std::vector<RootVec>> preimage_orbits(std::size_t idx) const;
  /// Lexicographically least absolute root over `idx`.
  RootVec lift(std::size_t idx) const;
  /// Ramification index e of the field of definition k_alpha of the lift;
  /// equals the size of its Galois orbit.
  int ramification(std::size_t idx) const { return ram_[idx]; }

  /// <a, b^vee> for relative roots; for BC1 uses <a, a^vee> = 2 and
  /// (2a)^vee = a^vee / 2.
  int pairing(const RootVec& a, const RootVec& b) const;
  RootVec reflect(const RootVec& a, const RootVec& b) const;

  /// Human-readable name: "a", "2a", "-a" in rank one, "a1+a2" otherwise.
  std::string root_name(const RootVec& r) const;
  std::optional<std::size_t> parse_root_name(const std::string& name) const;

 private:
  RelativeForm(RootSystem base, std::vector<int> perm);
  RootVec absolute_orbit_image(const RootVec& r) const;

  RootSystem base_;
  std::vector<int> perm_;
  std::vector<std::vector<int>> orbits_;
  std::vector<int> simple_to_orbit_;
  std::vector<RootVec> roots_;
  std::vector<Multiplicity> mult_;
  std::vector<int> ram_;
};

using FormPtr = std::shared_ptr<const RelativeForm>;

/// Psi is the set of roots positive for some generic linear functional.
/// Equivalently Psi is closed, Psi and -Psi are disjoint and cover Phi.
bool is_positive_system(const RelativeForm& form, const std::vector<std::size_t>& psi);

/// Elements of a positive system that are not a sum of two of its elements.
std::vector<std::size_t> simple_roots_of(const RelativeForm& form, const std::vector<std::size_t>& positive_system);

}  // namespace bt
