#pragma once

// Fusion systems on a finite group S: the closed morphism store generated by
// Inn(S) and a set of injective homomorphisms, together with the queries the
// construction relies on (nonextendable morphisms, Q(F), O_S(F), the focal
// subgroup, and F × F_S(S)-classes of twisted diagonals).

#include <memory>
#include <optional>
#include <span>
#include <unordered_map>
#include <vector>

#include "automizer/morphism.hpp"

namespace automizer {

using MorphId = std::size_t;

class FusionSystem {
 public:
  /// Least fusion system containing Inn(S) and `gens`. Throws DomainError on
  /// a generator that is not an injective homomorphism and
  /// ScaleError("max_morphisms") if the store grows past the bound.
  static FusionSystem generate(std::shared_ptr<const SubgroupLattice> lat,
                               const std::vector<Morphism>& gens,
                               std::size_t max_morphisms = 4'000'000);

  const SubgroupLattice& lattice() const noexcept { return *lat_; }
  std::shared_ptr<const SubgroupLattice> lattice_ptr() const noexcept { return lat_; }
  const FiniteGroup& group() const noexcept { return lat_->group(); }
  const std::vector<Morphism>& generators() const noexcept { return gens_; }

  /// Morphisms are numbered by (source id, images), so ids are canonical.
  std::size_t size() const noexcept { return store_.size(); }
  const Morphism& morphism(MorphId id) const { return store_[id]; }
  std::size_t source(MorphId id) const { return store_[id].source; }
  std::size_t image(MorphId id) const { return image_[id]; }
  std::optional<MorphId> find(const Morphism& m) const;
  MorphId id_of(const Morphism& m) const;  // throws DomainError if absent
  bool contains(const Morphism& m) const { return find(m).has_value(); }

  /// Hom_F(P, S), ascending ids.
  std::span<const MorphId> from(std::size_t p) const { return by_source_[p]; }
  /// Morphisms with image exactly q.
  std::span<const MorphId> onto(std::size_t q) const { return by_image_[q]; }
  /// Hom_F(P, Q): morphisms from P whose image lies in Q.
  std::vector<MorphId> hom_set(std::size_t p, std::size_t q) const;
  std::vector<MorphId> aut(std::size_t p) const;
  MorphId identity(std::size_t p) const;

  bool is_nonextendable(MorphId id) const { return !extendable_[id]; }
  /// Restriction of id to the subgroup `sub` of its source, as an id.
  MorphId restriction(MorphId id, std::size_t sub) const;
  /// ψ∘φ as an id.
  MorphId compose_ids(MorphId psi, MorphId phi) const;
  MorphId inverse_id(MorphId id) const;

 private:
  std::shared_ptr<const SubgroupLattice> lat_;
  std::vector<Morphism> gens_;
  std::vector<Morphism> store_;
  std::vector<std::size_t> image_;
  std::vector<std::vector<MorphId>> by_source_;
  std::vector<std::vector<MorphId>> by_image_;
  std::unordered_map<Morphism, MorphId, MorphismHash> index_;
  std::vector<char> extendable_;
};

struct QFResult {
  std::size_t subgroup = 0;             // Q(F)
  std::vector<std::size_t> family;      // sources of nonextendable morphisms
};

QFResult compute_QF(const FusionSystem& f);
/// Largest N such that every φ: P → S extends to PN with N mapped onto N.
std::size_t compute_OSF(const FusionSystem& f);
/// ⟨φ(s)s^-1 : s ∈ S, φ ∈ Hom_F(⟨s⟩, S)⟩ as a lattice id.
std::size_t focal_subgroup(const FusionSystem& f);

/// Order on twisted diagonals Δ(P, φ) by their sorted element lists in S×S.
bool delta_less(const FusionSystem& f, MorphId a, MorphId b);
/// The F × F_S(S)-class of Δ(P, φ): all Δ(ψ(P), c_s φ ψ^-1), sorted by
/// delta_less.
std::vector<MorphId> fprime_orbit(const FusionSystem& f, MorphId d);

/// Ids of all restrictions of c_s, s ∈ S, to P, deduplicated.
std::vector<MorphId> inner_morphisms(const FusionSystem& f, std::size_t p);

}  // namespace automizer
