#pragma once

// Brute-force oracles and corpora for the tests: fusion systems of
// permutation groups by direct conjugation, exhaustive marks over all
// subgroups of S×S, and structured certificate corruptions.

#include <string>
#include <vector>

#include <json.hpp>

#include "automizer/biset.hpp"
#include "automizer/perm.hpp"

namespace automizer::testkit {

struct SurrogatePair {
  std::string name;
  PermGroup g0;
  std::vector<Permutation> s0;
};

/// One pair per line: "name degree | G0 generators | S0 generators", with
/// generators in cycle notation separated by commas.
std::vector<SurrogatePair> parse_surrogates(std::string_view text);
std::vector<SurrogatePair> load_surrogates(const std::string& path);

/// S0 as an abstract group: elements sorted, Elem k = elements[k].
struct SurrogateS {
  std::vector<Permutation> elements;
  std::shared_ptr<const SubgroupLattice> lattice;
  Elem index(const Permutation& p) const;
};
SurrogateS surrogate_group(const SurrogatePair& pair, std::size_t max_subgroups = 100'000);

/// F_{S0}(G0): every c_g restricted to a subgroup P with gPg^-1 ≤ S0, sorted
/// and deduplicated. Throws ScaleError("max_oracle_order") for |G0| > 10^4.
std::vector<Morphism> brute_fusion(const SurrogatePair& pair, const SurrogateS& s);

/// c_g on S0 ∩ g^-1 S0 g for g over representatives of S0\G0/S0.
std::vector<Morphism> conjugation_generators(const SurrogatePair& pair, const SurrogateS& s);

/// Direct product S×S with (a, b) encoded as a·|S| + b.
FiniteGroup direct_square(const FiniteGroup& s);

/// |X^D| for a subgroup D of S×S, counting fixed cosets of every orbit
/// (S×S)/Δ(Q_i, φ_i) explicitly.
std::uint64_t brute_mark(const FiniteGroup& sxs, const SubgroupLattice& lat, const Biset& x,
                         const FusionSystem& f, const Subgroup& d);

/// Exhaustive stability: for every Q ≤ S, φ ∈ Hom_F(Q, S) and every
/// subgroup D ≤ Q×S, |X^D| = |X^{(φ,id)(D)}|. Requires |S|² ≤ bound.
CheckReport brute_stability(const Biset& x, const FusionSystem& f, std::size_t bound = 4096);

struct Mutation {
  std::string name;
  nlohmann::json certificate;
};

/// Structured corruptions of an accepted certificate.
std::vector<Mutation> mutation_suite(const nlohmann::json& cert);

}  // namespace automizer::testkit
