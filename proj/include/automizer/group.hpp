#pragma once

// Finite groups given by a multiplication table, subgroups as element
// bitsets, and the full subgroup lattice of a desk-scale group.

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <vector>

namespace automizer {

using Elem = uint32_t;

class FiniteGroup {
 public:
  /// `mul` is row-major, mul[a*order + b] = ab. Validates identity and
  /// inverses; associativity is checked only when `check_associativity`.
  FiniteGroup(std::size_t order, std::vector<uint32_t> mul, bool check_associativity = false);

  std::size_t order() const noexcept { return order_; }
  Elem identity() const noexcept { return identity_; }
  Elem mul(Elem a, Elem b) const { return mul_[static_cast<std::size_t>(a) * order_ + b]; }
  Elem inv(Elem a) const { return inv_[a]; }
  /// Left-handed conjugation g x g^-1.
  Elem conj(Elem g, Elem x) const { return mul(mul(g, x), inv_[g]); }
  /// x y x^-1 y^-1.
  Elem commutator(Elem x, Elem y) const { return mul(mul(x, y), mul(inv_[x], inv_[y])); }
  Elem pow(Elem x, long long k) const;
  std::size_t element_order(Elem x) const { return orders_[x]; }
  std::size_t exponent() const;
  std::span<const uint32_t> table() const noexcept { return mul_; }
  std::size_t words() const noexcept { return (order_ + 63) / 64; }

 private:
  std::size_t order_;
  std::vector<uint32_t> mul_;
  std::vector<uint32_t> inv_;
  std::vector<std::size_t> orders_;
  Elem identity_ = 0;
};

class Subgroup {
 public:
  Subgroup() = default;
  /// From a closed element set (not re-verified).
  Subgroup(const FiniteGroup& g, std::vector<Elem> elements, std::vector<Elem> generators);

  std::size_t order() const noexcept { return elements_.size(); }
  bool contains(Elem x) const { return (bits_[x >> 6] >> (x & 63)) & 1u; }
  /// Sorted ascending.
  const std::vector<Elem>& elements() const noexcept { return elements_; }
  const std::vector<Elem>& generators() const noexcept { return generators_; }
  const std::vector<uint64_t>& bits() const noexcept { return bits_; }
  /// Position of x in elements(); x must be a member.
  std::size_t position(Elem x) const;
  bool is_subgroup_of(const Subgroup& other) const;

  friend bool operator==(const Subgroup& a, const Subgroup& b) { return a.bits_ == b.bits_; }

 private:
  std::vector<uint64_t> bits_;
  std::vector<Elem> elements_;
  std::vector<Elem> generators_;
};

/// Canonical order: by order, then lexicographically by sorted element list.
bool canonical_less(const Subgroup& a, const Subgroup& b);

Subgroup closure(const FiniteGroup& g, std::span<const Elem> generators);
Subgroup trivial_subgroup(const FiniteGroup& g);
Subgroup whole_group(const FiniteGroup& g);
Subgroup join(const FiniteGroup& g, const Subgroup& a, const Subgroup& b);
Subgroup intersect(const FiniteGroup& g, const Subgroup& a, const Subgroup& b);
/// x H x^-1.
Subgroup conjugate(const FiniteGroup& g, const Subgroup& h, Elem x);
Subgroup normalizer(const FiniteGroup& g, const Subgroup& h);
Subgroup centralizer(const FiniteGroup& g, const Subgroup& h);
Subgroup center(const FiniteGroup& g);
/// [A, B] generated by all a b a^-1 b^-1.
Subgroup commutator_subgroup(const FiniteGroup& g, const Subgroup& a, const Subgroup& b);
Subgroup derived_subgroup(const FiniteGroup& g);
bool is_normal(const FiniteGroup& g, const Subgroup& h);
bool is_abelian(const FiniteGroup& g, const Subgroup& h);
std::size_t exponent(const FiniteGroup& g, const Subgroup& h);
/// True iff h ≅ C_e × C_e (e >= 2).
bool is_homocyclic_rank2(const FiniteGroup& g, const Subgroup& h, std::size_t e);
/// Least pair (in element order) generating h, for a 2-generated h.
std::optional<std::pair<Elem, Elem>> generating_pair(const FiniteGroup& g, const Subgroup& h);
/// Greedy generating set: scans elements in order, keeps those that enlarge.
std::vector<Elem> small_generating_set(const FiniteGroup& g, const Subgroup& h);

class SubgroupLattice {
 public:
  /// Throws ScaleError("max_subgroups") once the count passes the bound.
  SubgroupLattice(std::shared_ptr<const FiniteGroup> g, std::size_t max_subgroups);

  const FiniteGroup& group() const noexcept { return *group_; }
  std::shared_ptr<const FiniteGroup> group_ptr() const noexcept { return group_; }
  std::size_t size() const noexcept { return subs_.size(); }
  const Subgroup& operator[](std::size_t id) const { return subs_[id]; }
  const std::vector<Subgroup>& all() const noexcept { return subs_; }
  std::optional<std::size_t> find(const Subgroup& h) const;
  /// Like find, but throws DomainError when h is not a subgroup in the lattice.
  std::size_t id_of(const Subgroup& h) const;
  std::size_t trivial() const noexcept { return 0; }
  std::size_t whole() const noexcept { return subs_.size() - 1; }
  std::size_t cyclic(Elem x) const { return cyclic_[x]; }
  /// Ids of all subgroups of `id` (including itself), ascending.
  const std::vector<std::size_t>& subgroups_of(std::size_t id) const { return below_[id]; }

 private:
  std::shared_ptr<const FiniteGroup> group_;
  std::vector<Subgroup> subs_;
  std::map<std::vector<uint64_t>, std::size_t> index_;
  std::vector<std::size_t> cyclic_;
  std::vector<std::vector<std::size_t>> below_;
};

}  // namespace automizer
