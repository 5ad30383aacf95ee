#pragma once

// Permutations on {0..n-1} and permutation groups with a deterministic
// Schreier-Sims stabilizer chain.
//
// Composition convention, used everywhere: compose(p, q) applies q first,
// then p, i.e. compose(p, q)(x) = p(q(x)).

#include <boost/multiprecision/cpp_int.hpp>
#include <compare>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace automizer {

using BigInt = boost::multiprecision::cpp_int;

class Permutation {
 public:
  Permutation() = default;
  /// Identity of the given degree.
  explicit Permutation(std::size_t degree);
  /// Throws DomainError unless images is a bijection on {0..size-1}.
  explicit Permutation(std::vector<uint32_t> images);
  /// No validation; the caller guarantees a bijection.
  static Permutation unchecked(std::vector<uint32_t> images) {
    Permutation p;
    p.images_ = std::move(images);
    return p;
  }

  /// Parses cycle notation with 0-based points, e.g. "(0 1 2)(3 4)"; "()" is
  /// the identity.
  static Permutation from_cycles(std::string_view text, std::size_t degree);
  static Permutation cycle(std::size_t degree, std::span<const uint32_t> points);

  std::size_t degree() const noexcept { return images_.size(); }
  uint32_t operator()(uint32_t x) const { return images_[x]; }
  std::span<const uint32_t> images() const noexcept { return images_; }

  bool is_identity() const noexcept;
  Permutation inverse() const;
  bool is_even() const;
  std::vector<std::size_t> cycle_lengths() const;  // including fixed points
  std::size_t smallest_moved_point() const;        // degree() if identity
  std::string to_cycles() const;

  friend bool operator==(const Permutation&, const Permutation&) = default;
  friend auto operator<=>(const Permutation&, const Permutation&) = default;

 private:
  std::vector<uint32_t> images_;
};

/// p∘q: q first. Throws DomainError on degree mismatch.
Permutation compose(const Permutation& p, const Permutation& q);
inline Permutation operator*(const Permutation& p, const Permutation& q) {
  return compose(p, q);
}
Permutation power(const Permutation& p, long long k);
/// p q p^-1 q^-1.
Permutation commutator(const Permutation& p, const Permutation& q);

/// Base and strong generating set.
class StabChain {
 public:
  StabChain(std::size_t degree, std::span<const Permutation> generators);

  std::size_t degree() const noexcept { return degree_; }
  const std::vector<uint32_t>& base() const noexcept { return base_; }
  BigInt order() const;
  bool contains(const Permutation& p) const;
  /// Uniformly random element from a transversal product; `draw(k)` must
  /// return a value in [0, k).
  template <class Draw>
  Permutation random_element(Draw&& draw) const {
    Permutation g(degree_);
    for (const auto& lv : levels_) {
      const auto& u = lv.transversal[draw(lv.orbit.size())];
      g = compose(g, u);
    }
    return g;
  }
  /// Calls f on every element; intended for groups of desk-scale order.
  template <class F>
  void for_each_element(F&& f) const {
    Permutation g(degree_);
    walk(0, g, f);
  }
  std::size_t depth() const noexcept { return levels_.size(); }
  std::span<const uint32_t> orbit(std::size_t level) const { return levels_[level].orbit; }

 private:
  struct Level {
    uint32_t point = 0;
    std::vector<Permutation> gens;
    std::vector<uint32_t> orbit;
    std::vector<int32_t> where;  // index into orbit or -1
    std::vector<Permutation> transversal;
  };
  void recompute_orbit(std::size_t i);
  // Returns the residue and the level where sifting stopped.
  std::pair<Permutation, std::size_t> strip(Permutation g, std::size_t from) const;
  void extend_base(const Permutation& h);
  void run();

  template <class F>
  void walk(std::size_t i, const Permutation& prefix, F& f) const {
    if (i == levels_.size()) {
      f(prefix);
      return;
    }
    for (const auto& u : levels_[i].transversal) walk(i + 1, compose(prefix, u), f);
  }

  std::size_t degree_;
  std::vector<uint32_t> base_;
  std::vector<Level> levels_;
};

class PermGroup {
 public:
  PermGroup(std::size_t degree, std::vector<Permutation> generators);

  std::size_t degree() const noexcept { return degree_; }
  const std::vector<Permutation>& generators() const noexcept { return gens_; }
  /// Built once on first use; safe to call from several threads.
  const StabChain& chain() const;
  BigInt order() const { return chain().order(); }
  bool contains(const Permutation& p) const;
  bool is_transitive() const;

 private:
  struct Lazy;
  std::size_t degree_;
  std::vector<Permutation> gens_;
  std::shared_ptr<Lazy> lazy_;
};

/// Smallest subgroup containing seeds that is normalized by g's generators.
PermGroup normal_closure(const PermGroup& g, std::span<const Permutation> seeds);
PermGroup derived_subgroup(const PermGroup& g);

enum class GiantKind { Alternating, Symmetric, Other };

struct GiantReport {
  GiantKind kind = GiantKind::Other;
  /// "order" when decided by exact chain order, "jordan" when decided by a
  /// transitive group containing a prime cycle of length in (n/2, n-3].
  std::string method;
  std::size_t prime_cycle = 0;
};

/// Degrees up to this are decided by exact order comparison.
inline constexpr std::size_t kExactGiantDegree = 64;

GiantReport recognize_giant(const PermGroup& g);
inline GiantKind is_alternating_or_symmetric(const PermGroup& g) {
  return recognize_giant(g).kind;
}

/// Whether the normal closure of ⟨seeds⟩ in A_n is A_n (seeds must be even).
/// Exact for n <= kExactGiantDegree; above that, seeds and seeded random
/// conjugates generate a subgroup of the closure which is certified by
/// transitivity and a Jordan prime cycle. Other above the exact degree means
/// no certificate was found, not that the closure is small.
GiantReport alternating_closure_giant(std::size_t n, std::span<const Permutation> seeds);

/// Standard generators of A_n (n >= 3) and S_n (n >= 2).
std::vector<Permutation> alternating_generators(std::size_t n);
std::vector<Permutation> symmetric_generators(std::size_t n);

BigInt factorial(std::size_t n);

}  // namespace automizer
