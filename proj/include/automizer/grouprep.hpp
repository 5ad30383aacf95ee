#pragma once

// The input group A, the semidirect product S = U ⋊ A with
// U = (Z/e)^|A| × (Z/e)^|A| (two copies of the regular A-module), and the
// subgroup searches the construction needs.

#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "automizer/group.hpp"
#include "automizer/perm.hpp"

namespace automizer {

struct InputGroupA {
  std::string name;  // catalog identifier or "custom"
  std::shared_ptr<const FiniteGroup> table;
  std::size_t exponent = 1;

  std::size_t order() const { return table->order(); }
  /// FNV-1a over the table, as 16 hex digits.
  std::string table_hash() const;
};

/// Catalog: "1", "C<n>", "D<2n>", "S<n>" (n <= 4), "Q8", and products joined
/// by 'x', e.g. "C2xC2". Elements are indexed with the identity at 0.
InputGroupA catalog_group(std::string_view name);
/// Text: order, then the row-major table of 0-based element indices.
InputGroupA parse_table(std::string_view text, std::string name = "custom");
InputGroupA group_from_table(std::string name, std::size_t order, std::vector<uint32_t> mul);
/// Multiplication table of a permutation group (elements sorted).
InputGroupA group_from_permutations(std::string name, const PermGroup& g);

/// An isomorphism G → H as an element map, if one exists.
std::optional<std::vector<Elem>> find_isomorphism(const FiniteGroup& g, const FiniteGroup& h);

class SGroup {
 public:
  /// Throws ScaleError("max_subgroup_order") when |S| exceeds the bound.
  static SGroup build(const InputGroupA& a, std::size_t max_order = 4096);
  /// Order of S without building it.
  static BigInt predicted_order(const InputGroupA& a);

  const InputGroupA& A() const noexcept { return a_; }
  std::size_t e() const noexcept { return e_; }
  std::size_t rank() const noexcept { return 2 * a_.order(); }
  const FiniteGroup& group() const noexcept { return *group_; }
  std::shared_ptr<const FiniteGroup> group_ptr() const noexcept { return group_; }
  std::size_t order() const noexcept { return group_->order(); }

  /// Canonical order on S is lexicographic on (u, a); the index encodes it.
  Elem encode(const std::vector<uint32_t>& u, std::size_t a) const;
  std::vector<uint32_t> u_of(Elem x) const;
  std::size_t a_of(Elem x) const { return x % a_.order(); }
  /// "(u0 u1 ...; a)".
  std::string literal(Elem x) const;
  Elem parse_literal(std::string_view text) const;

  Subgroup U() const;
  /// C_U(A): vectors constant on each copy.
  Subgroup fixed_subgroup() const;
  /// The complement {(0, a)}.
  Subgroup complement() const;

 private:
  InputGroupA a_;
  std::size_t e_ = 1;
  std::size_t u_size_ = 1;
  std::shared_ptr<const FiniteGroup> group_;
};

/// Number of subspaces of F_p^r for the least prime p | e; a lower bound for
/// the number of subgroups of U (1 when e = 1).
BigInt subgroup_count_lower_bound(const SGroup& s);

/// All V ≤ S with V ≅ C_e × C_e, as lattice ids (empty when e = 1).
std::vector<std::size_t> homocyclic_rank2(const SGroup& s, const SubgroupLattice& lat);

}  // namespace automizer
