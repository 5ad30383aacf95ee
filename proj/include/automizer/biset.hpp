#pragma once

// S-S bisets built from twisted diagonals Δ(P, φ) ≤ S×S: the marks table,
// the inductive semicharacteristic construction, and the stability and
// orbit-prediction checks.

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "automizer/fusion.hpp"

namespace automizer {

using Rational = boost::multiprecision::cpp_rational;

/// |((S×S)/Δ(Q,γ))^{Δ(P,φ)}|. Both morphisms are arbitrary injective maps on
/// lattice subgroups; only generators of P are tested.
std::uint64_t marks(const SubgroupLattice& lat, const Morphism& orbit, const Morphism& d);

/// S×S-conjugacy classes of the twisted diagonals Δ(P, φ), φ ∈ F. Classes are
/// numbered by (|P| descending, representative ascending) so class 0 is
/// Δ(S, id); members are sorted by delta_less and members[c][0] is the
/// representative.
struct DiagonalClasses {
  std::vector<std::size_t> class_of;  // indexed by MorphId
  std::vector<std::vector<MorphId>> members;
  std::size_t size() const noexcept { return members.size(); }
  MorphId rep(std::size_t c) const { return members[c][0]; }
};
DiagonalClasses diagonal_classes(const FusionSystem& f);

/// Lazily filled class-level marks matrix M[i][j] = marks(rep i, rep j).
class MarksTable {
 public:
  MarksTable(const FusionSystem& f, const DiagonalClasses& c);
  std::uint64_t operator()(std::size_t orbit_class, std::size_t d_class);
  /// |N_{S×S}(Δ)/Δ| for the class representative.
  std::uint64_t normalizer_index(std::size_t c) { return (*this)(c, c); }

 private:
  const FusionSystem& f_;
  const DiagonalClasses& c_;
  std::vector<std::vector<std::int64_t>> cache_;  // -1 = not computed
};

struct BisetOrbit {
  std::size_t q = 0;      // Q_i, lattice id
  MorphId phi = 0;        // φ_i ∈ Hom_F(Q_i, S)
  std::uint64_t multiplicity = 0;
  friend bool operator==(const BisetOrbit&, const BisetOrbit&) = default;
};

struct Biset {
  std::vector<BisetOrbit> orbits;  // orbits[0] = (S, id)
  std::uint64_t m = 1;             // denominator-clearing factor
  std::uint64_t n = 0;             // Σ multiplicity·|S:Q_i|

  friend bool operator==(const Biset&, const Biset&) = default;
};

std::uint64_t biset_degree(const FusionSystem& f, const std::vector<BisetOrbit>& orbits);

struct BuildOptions {
  std::uint64_t max_n = 1'000'000;
  /// Called after each F′-class is equalized with the processed classes so
  /// far and the current coefficients (per S×S class).
  std::function<void(const std::vector<std::vector<std::size_t>>& processed,
                     const std::vector<Rational>& coefficients)>
      on_step;
};

/// Throws ScaleError("max_n") when the final degree exceeds options.max_n.
Biset build_semicharacteristic(const FusionSystem& f, const DiagonalClasses& c, MarksTable& marks,
                               const BuildOptions& options = {});
Biset build_semicharacteristic(const FusionSystem& f, const BuildOptions& options = {});

/// F′-classes of the proper twisted diagonals as lists of S×S classes, in
/// processing order.
std::vector<std::vector<std::size_t>> fprime_classes(const FusionSystem& f, const DiagonalClasses& c);

/// |X^Δ| for every S×S class.
std::vector<std::uint64_t> biset_marks(const Biset& x, const DiagonalClasses& c, MarksTable& marks);

struct CheckReport {
  bool ok = true;
  std::string failure;  // first failing witness, empty when ok
  std::uint64_t checked = 0;
};

/// Every orbit is (Q_i, φ_i) with φ_i ∈ F, orbit 0 is (S, id), and the
/// degree and multiplicities are consistent.
CheckReport verify_generated(const Biset& x, const FusionSystem& f);

/// Left F-stability by the marks criterion. A subgroup D ≤ Q×S fixes a point
/// of X only if D = Δ(R, χ) with χ ∈ F, since point stabilizers are
/// conjugates of the Δ(Q_i, φ_i); every other D has zero marks on both _Q X
/// and _φ X. Stability is therefore equivalent to
///   |X^{Δ(R,χ)}| = |X^{Δ(φ(R), χφ^-1)}|   for all R, χ, φ ∈ Hom_F(R, S).
/// With `exhaustive`, additionally confirms zero marks on Δ(R, χ) for every
/// injective χ ∉ F.
CheckReport verify_stability(const Biset& x, const FusionSystem& f, const DiagonalClasses& c,
                             MarksTable& marks, bool exhaustive = true);

/// (a) every nonextendable φ has an orbit S×S-conjugate to Δ(P, φ);
/// (b) ∩_i ∩_s ^sQ_i ≤ Q(F).
CheckReport check_orbit_predictions(const Biset& x, const FusionSystem& f, const DiagonalClasses& c);

/// X plus `count` free orbits (1, triv). Throws DomainError when count = 0.
Biset append_free_orbits(const Biset& x, const FusionSystem& f, std::uint64_t count);

/// Injective homomorphisms from lattice[p] into the ambient group.
std::vector<Morphism> injective_homomorphisms(const SubgroupLattice& lat, std::size_t p);

}  // namespace automizer
