#pragma once

// Injective homomorphisms between subgroups of a lattice's ambient group.
// Targets are always the ambient group; Hom(P, Q) is a filtered view.

#include <compare>
#include <cstdint>
#include <optional>
#include <vector>

#include "automizer/group.hpp"

namespace automizer {

struct Morphism {
  std::size_t source = 0;    // lattice id
  std::vector<Elem> images;  // images[k] = φ(lattice[source].elements()[k])

  friend bool operator==(const Morphism&, const Morphism&) = default;
  friend auto operator<=>(const Morphism&, const Morphism&) = default;
};

struct MorphismHash {
  std::size_t operator()(const Morphism& m) const noexcept;
};

Elem apply(const SubgroupLattice& lat, const Morphism& phi, Elem x);
std::size_t image_id(const SubgroupLattice& lat, const Morphism& phi);
Morphism identity_morphism(const SubgroupLattice& lat, std::size_t source);
/// c_s restricted to `source`: x ↦ s x s^-1.
Morphism conjugation(const SubgroupLattice& lat, std::size_t source, Elem s);
/// ψ∘φ; requires φ(source) ≤ source(ψ).
Morphism compose(const SubgroupLattice& lat, const Morphism& psi, const Morphism& phi);
Morphism restrict(const SubgroupLattice& lat, const Morphism& phi, std::size_t sub);
Morphism inverse(const SubgroupLattice& lat, const Morphism& phi);
/// Builds the map from generator images; nullopt if it does not extend to an
/// injective homomorphism on lattice[source].
std::optional<Morphism> from_generator_images(const SubgroupLattice& lat, std::size_t source,
                                              const std::vector<Elem>& gens,
                                              const std::vector<Elem>& images);
bool is_injective_homomorphism(const SubgroupLattice& lat, const Morphism& phi);
/// Every abstract automorphism of lattice[v], identity first, then sorted.
std::vector<Morphism> automorphisms_of(const SubgroupLattice& lat, std::size_t v);

}  // namespace automizer
