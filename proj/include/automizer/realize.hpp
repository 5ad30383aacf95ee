#pragma once

// The realization pipeline: S = U ⋊ A with its fusion system, the checks on
// that fusion system, the biset and embedding stages, and the final checks on
// the perfect group Γ′ ≤ S ≀ Σ_n.

#include <optional>
#include <string>
#include <vector>

#include "automizer/park.hpp"
#include "automizer/grouprep.hpp"

namespace automizer {

struct VerificationPolicy {
  std::size_t max_subgroup_order = 4096;
  std::size_t max_subgroups = 10'000;
  std::size_t max_morphisms = 4'000'000;
  std::uint64_t max_n = 1'000'000;
  std::size_t max_perm_degree = 100'000;
  /// Full: exhaustive stability scan and a witness for every stored
  /// morphism. Fast: F-orbit stability and witnesses for the recorded
  /// generators only.
  bool full = true;

  static VerificationPolicy fast();
  static VerificationPolicy full_policy();
  std::string name() const { return full ? "full" : "fast"; }
};

struct FusionInput {
  InputGroupA a;
  SGroup s;
  std::shared_ptr<const SubgroupLattice> lattice;
  FusionSystem f;
  std::size_t u = 0;                  // lattice id of U
  std::vector<std::size_t> v;         // rank 2 homocyclic subgroups of order e^2
  std::vector<Morphism> generators;   // reduced generating set of F
};

/// One V per S-class of rank 2 homocyclic subgroups, each with a small
/// generating set of Aut(V). Generates the same fusion system as all Aut(V).
std::vector<Morphism> reduced_generators(const SubgroupLattice& lat, const std::vector<std::size_t>& v);

/// Throws ScaleError naming the bound ("max_subgroup_order",
/// "max_subgroups", "max_morphisms").
FusionInput build_fusion_for(const InputGroupA& a, const VerificationPolicy& policy = {});

struct FusionReport {
  bool semidirect = false;        // U ⊴ S, S = U·A, U ∩ A = 1
  bool exponent_matches = false;  // exp(U) = e = exp(A)
  bool autF_U_is_autS_U = false;
  bool autF_U_iso_A = false;
  bool focal_is_S = false;
  bool QF_trivial = false;
  bool index_gt_2A = false;       // some Q ∈ 𝒬(F) with |S:Q| > 2|A|
  bool v1_generates_S = false;
  bool v1_intersection_trivial = false;
  std::size_t autF_U_order = 0;
  std::size_t QF_order = 0;
  std::size_t max_family_index = 0;
  std::size_t v1_count = 0;
  bool ok() const {
    return semidirect && exponent_matches && autF_U_is_autS_U && autF_U_iso_A && focal_is_S && QF_trivial &&
           index_gt_2A && v1_generates_S && v1_intersection_trivial;
  }
};

FusionReport verify_fusion_claims(const FusionInput& in);

/// Least prime p with m < p < 2m. Throws DomainError for m < 2.
std::size_t bertrand_prime(std::size_t m);

struct MainReport {
  bool iota_in_gamma_prime = false;   // ι(s) ∈ Γ′ for generators s of S
  bool top_closure_is_An = false;
  std::string top_closure_method;     // "order", "jordan", "transitivity-only"
  std::size_t jordan_prime = 0;
  bool prime_ok = false;              // p ∤ |S| and p ≤ n
  bool degree_ok = false;             // n ≥ 5 and n > 2|A|
  std::string failure;
  bool ok() const { return iota_in_gamma_prime && top_closure_is_An && prime_ok && degree_ok; }
};

MainReport verify_main(const BisetEmbedding& pe, const FusionInput& in, std::size_t p,
                       const VerificationPolicy& policy);

/// N_{G0}(U0)/C_{G0}(U0) as the permutation action on U0, with its table.
/// Throws ScaleError("max_oracle_order") above `max_order` elements.
InputGroupA automizer_oracle(const PermGroup& g0, const std::vector<Permutation>& u0,
                             std::size_t max_order = 1'000'000);

/// Catalog name of a small group isomorphic to g, if any.
std::optional<std::string> identify_small_group(const FiniteGroup& g);

/// Multiplication table of Aut_F(P) under composition, rows in id order.
FiniteGroup automorphism_table(const FusionSystem& f, std::size_t p);

}  // namespace automizer
