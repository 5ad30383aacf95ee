#pragma once

// The embedding ι: S → Aut(₁X) ≅ S ≀ Σ_n for a biset X, wreath arithmetic,
// conjugation witnesses for fusion morphisms, and membership in Γ′.
//
// Points of X are ⟨t_ij, y⟩ with t_ij a coset representative of Q_i and
// y ∈ S. A right S-set automorphism (b; σ) sends ⟨t_j, y⟩ to
// ⟨t_σ(j), b_σ(j) y⟩, so base entries sit at the target slot and
// (b; σ)(c; τ) = (b · σ(c); στ) with σ(c)_k = c_σ^-1(k).

#include <memory>
#include <string>
#include <vector>

#include "automizer/biset.hpp"
#include "automizer/perm.hpp"

namespace automizer {

struct WreathElement {
  std::vector<uint32_t> base;  // n elements of S
  std::vector<uint32_t> top;   // images of a permutation of {0..n-1}

  std::size_t degree() const noexcept { return top.size(); }
  friend bool operator==(const WreathElement&, const WreathElement&) = default;
};

WreathElement wreath_identity(const FiniteGroup& s, std::size_t n);
WreathElement wreath_multiply(const FiniteGroup& s, const WreathElement& a, const WreathElement& b);
WreathElement wreath_inverse(const FiniteGroup& s, const WreathElement& a);
Permutation top_projection(const WreathElement& a);
/// Ordered product b_0 b_1 ... b_{n-1} of the base components.
Elem component_product(const FiniteGroup& s, const WreathElement& a);
/// Membership in Γ′ for Γ = S ≀ Σ_n, n ≥ 5: even top and component product
/// in S′. Throws DomainError for n < 5.
bool gamma_prime_member(const FiniteGroup& s, const WreathElement& g, const Subgroup& s_prime);

struct EmbeddingOrbit {
  std::size_t q = 0;                // lattice id of Q_i
  Morphism phi;                     // φ_i on Q_i
  std::uint64_t multiplicity = 1;
  std::vector<Elem> reps;           // t_ij, reps[0] = identity
  std::vector<uint32_t> coset_of;   // s ↦ j with s ∈ t_ij Q_i
  std::vector<uint32_t> phi_table;  // s ↦ φ_i(s) on Q_i
  std::size_t offset = 0;           // first slot of copy 0
  std::size_t index() const noexcept { return reps.size(); }
};

class BisetEmbedding {
 public:
  /// Orbit 0 must be (S, id). Throws DomainError otherwise.
  static BisetEmbedding decompose(std::shared_ptr<const SubgroupLattice> lat,
                                 const std::vector<std::pair<Morphism, std::uint64_t>>& orbits);
  static BisetEmbedding decompose(const FusionSystem& f, const Biset& x);

  const SubgroupLattice& lattice() const noexcept { return *lat_; }
  const FiniteGroup& group() const noexcept { return lat_->group(); }
  std::size_t degree() const noexcept { return n_; }
  const std::vector<EmbeddingOrbit>& orbits() const noexcept { return orbits_; }

  WreathElement iota(Elem u) const;
  /// Left action of v on the point ⟨t_j, y⟩ of a copy of orbit i; returns
  /// the new (j, y).
  std::pair<uint32_t, Elem> act(std::size_t i, Elem v, uint32_t j, Elem y) const;

  /// g with g ι(u) g^-1 = ι(φ(u)) for all u in the source of φ. Throws
  /// DomainError when the orbit types of _P X and _φ X do not match.
  WreathElement witness(const Morphism& phi) const;
  /// Checks g ι(u) = ι(φ(u)) g on the generators of the source.
  bool verify_witness(const Morphism& phi, const WreathElement& g) const;

 private:
  std::shared_ptr<const SubgroupLattice> lat_;
  std::vector<EmbeddingOrbit> orbits_;
  std::size_t n_ = 0;
};

struct EmbeddingReport {
  bool homomorphism = true;
  bool injective = true;
  bool trivial_top_in_QF = true;   // {u : top(ι(u)) = 1} ⊆ Q(F)
  bool base_intersection_trivial = true;  // ι(S) ∩ B = 1
  std::string failure;
  bool ok() const { return homomorphism && injective && trivial_top_in_QF && base_intersection_trivial; }
};

/// Exhaustive over pairs when |S| ≤ exhaustive_limit, otherwise over pairs of
/// generators and a seeded sample.
EmbeddingReport verify_embedding(const BisetEmbedding& pe, const Subgroup& qf, std::size_t exhaustive_limit = 64);

}  // namespace automizer
