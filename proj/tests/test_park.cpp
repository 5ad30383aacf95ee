#include <doctest.h>

#include <random>

#include "automizer/errors.hpp"
#include "automizer/grouprep.hpp"
#include "automizer/park.hpp"
#include "automizer/testkit.hpp"

using namespace automizer;

namespace {

WreathElement random_wreath(const FiniteGroup& s, std::size_t n, std::mt19937_64& rng) {
  WreathElement w = wreath_identity(s, n);
  for (auto& b : w.base) b = static_cast<uint32_t>(rng() % s.order());
  std::shuffle(w.top.begin(), w.top.end(), rng);
  return w;
}

WreathElement base_at(const FiniteGroup& s, std::size_t n, std::size_t i, Elem x) {
  WreathElement w = wreath_identity(s, n);
  w.base[i] = x;
  return w;
}

WreathElement top_only(const FiniteGroup& s, const Permutation& p) {
  WreathElement w = wreath_identity(s, p.degree());
  w.top.assign(p.images().begin(), p.images().end());
  return w;
}

// (b; σ) on the points (k, x) of n copies of the regular S-set: (σk, b_σk x).
Permutation as_permutation(const FiniteGroup& s, const WreathElement& w) {
  const std::size_t m = s.order();
  std::vector<uint32_t> img(w.degree() * m);
  for (std::size_t k = 0; k < w.degree(); ++k)
    for (Elem x = 0; x < m; ++x) img[k * m + x] = static_cast<uint32_t>(w.top[k] * m + s.mul(w.base[w.top[k]], x));
  return Permutation(std::move(img));
}

WreathElement commutator(const FiniteGroup& s, const WreathElement& a, const WreathElement& b) {
  return wreath_multiply(s, wreath_multiply(s, a, b), wreath_multiply(s, wreath_inverse(s, a), wreath_inverse(s, b)));
}

FusionSystem surrogate(const std::string& name) {
  for (const auto& p : testkit::load_surrogates(AUTOMIZER_TEST_DATA "/surrogates.txt"))
    if (p.name == name) {
      const auto s = testkit::surrogate_group(p);
      return FusionSystem::generate(s.lattice, testkit::conjugation_generators(p, s));
    }
  throw std::logic_error("missing surrogate " + name);
}

}  // namespace

TEST_CASE("wreath group laws") {
  const auto a = catalog_group("S3");
  const FiniteGroup& s = *a.table;
  std::mt19937_64 rng(3);
  const std::size_t n = 7;
  const auto id = wreath_identity(s, n);
  for (int i = 0; i < 1000; ++i) {
    const auto x = random_wreath(s, n, rng), y = random_wreath(s, n, rng), z = random_wreath(s, n, rng);
    CHECK(wreath_multiply(s, wreath_multiply(s, x, y), z) == wreath_multiply(s, x, wreath_multiply(s, y, z)));
    CHECK(wreath_multiply(s, x, wreath_inverse(s, x)) == id);
    CHECK(wreath_multiply(s, wreath_inverse(s, x), x) == id);
    CHECK(top_projection(wreath_multiply(s, x, y)) == compose(top_projection(x), top_projection(y)));
    CHECK(as_permutation(s, wreath_multiply(s, x, y)) == compose(as_permutation(s, x), as_permutation(s, y)));
  }
  auto b = base_at(s, n, 2, 3), c = base_at(s, n, 2, 4);
  c.base[5] = 1;
  const auto bc = wreath_multiply(s, b, c);
  for (std::size_t k = 0; k < n; ++k) CHECK(bc.base[k] == s.mul(b.base[k], c.base[k]));
  CHECK_THROWS_AS(wreath_multiply(s, id, wreath_identity(s, n + 1)), DomainError);
}

TEST_CASE("conjugating a base coordinate moves it along the top") {
  const auto a = catalog_group("S3");
  const FiniteGroup& s = *a.table;
  const std::size_t n = 6;
  std::mt19937_64 rng(5);
  for (int i = 0; i < 200; ++i) {
    auto g = top_only(s, Permutation::unchecked([&] {
                        std::vector<uint32_t> p(n);
                        std::iota(p.begin(), p.end(), 0u);
                        std::shuffle(p.begin(), p.end(), rng);
                        return p;
                      }()));
    const std::size_t k = rng() % n;
    const Elem x = static_cast<Elem>(rng() % s.order());
    // [g, e_k(x)] = e_{g(k)}(x) e_k(x)^-1
    const auto lhs = commutator(s, g, base_at(s, n, k, x));
    const auto rhs = wreath_multiply(s, base_at(s, n, g.top[k], x), base_at(s, n, k, s.inv(x)));
    CHECK(lhs == rhs);
  }
}

TEST_CASE("the e_i commutator identity") {
  const auto a = catalog_group("S3");
  const FiniteGroup& s = *a.table;
  const std::size_t n = 5;
  auto c = [&](std::size_t i, std::size_t j, Elem x) {
    return wreath_multiply(s, base_at(s, n, j, x), base_at(s, n, i, s.inv(x)));
  };
  for (std::size_t i = 0; i < n; ++i)
    for (Elem x = 0; x < s.order(); ++x)
      for (Elem y = 0; y < s.order(); ++y) {
        const std::size_t prev = (i + n - 1) % n, next = (i + 1) % n;
        CHECK(commutator(s, c(prev, i, x), c(i, next, s.inv(y))) == base_at(s, n, i, s.commutator(x, y)));
      }
}

TEST_CASE("membership in the derived subgroup of S3 wr Sym(5)") {
  const auto a = catalog_group("S3");
  const FiniteGroup& s = *a.table;
  const std::size_t n = 5;
  const Subgroup s_prime = derived_subgroup(s);
  REQUIRE(s_prime.order() == 3);

  std::vector<Permutation> gamma_gens, b_gens, k_prime_gens;
  for (Elem x : small_generating_set(s, whole_group(s))) {
    gamma_gens.push_back(as_permutation(s, base_at(s, n, 0, x)));
    for (std::size_t i = 0; i < n; ++i) b_gens.push_back(as_permutation(s, base_at(s, n, i, x)));
  }
  for (const auto& p : symmetric_generators(n)) gamma_gens.push_back(as_permutation(s, top_only(s, p)));
  for (const auto& p : alternating_generators(n)) k_prime_gens.push_back(as_permutation(s, top_only(s, p)));
  const PermGroup gamma(30, gamma_gens);
  CHECK(gamma.order() == 6 * 6 * 6 * 6 * 6 * 120);

  const PermGroup gp = derived_subgroup(gamma);
  CHECK(gp.order() == 233280);
  CHECK(derived_subgroup(gp).order() == gp.order());

  // [K′, B] as the normal closure in K′B of the commutators of generators.
  std::vector<Permutation> kb = k_prime_gens, comms;
  kb.insert(kb.end(), b_gens.begin(), b_gens.end());
  for (const auto& k : k_prime_gens)
    for (const auto& b : b_gens) comms.push_back(automizer::commutator(k, b));
  const PermGroup kpb = normal_closure(PermGroup(30, kb), comms);
  CHECK(kpb.order() == 3888);
  // Every element of [K′, B] is a base element with component product in S′;
  // both sets have 6^5/2 elements.
  kpb.chain().for_each_element([&](const Permutation& p) {
    WreathElement w = wreath_identity(s, n);
    for (std::size_t k = 0; k < n; ++k) {
      CHECK(p(static_cast<uint32_t>(k * 6)) / 6 == k);
      w.base[k] = p(static_cast<uint32_t>(k * 6)) % 6;
    }
    CHECK(s_prime.contains(component_product(s, w)));
  });
  for (const auto& x : b_gens)
    for (const auto& y : b_gens) CHECK(kpb.contains(automizer::commutator(x, y)));
  // Γ′ = K′·[K′, B].
  std::vector<Permutation> both = k_prime_gens;
  both.insert(both.end(), kpb.generators().begin(), kpb.generators().end());
  CHECK(PermGroup(30, both).order() == gp.order());

  std::mt19937_64 rng(2024);
  int members = 0;
  for (int i = 0; i < 1000; ++i) {
    const auto w = random_wreath(s, n, rng);
    const bool in = gamma_prime_member(s, w, s_prime);
    CHECK(in == gp.contains(as_permutation(s, w)));
    members += in;
  }
  CHECK(members > 150);
  CHECK(members < 350);

  CHECK(gamma_prime_member(s, wreath_identity(s, n), s_prime));
  CHECK_FALSE(gamma_prime_member(s, top_only(s, Permutation::from_cycles("(0 1)", n)), s_prime));
  CHECK_THROWS_AS(gamma_prime_member(s, wreath_identity(s, 4), s_prime), DomainError);
}

TEST_CASE("the embedding of a surrogate system") {
  for (const char* name : {"S4_D8", "A4_V4", "S4_S3", "S5_D8"}) {
    CAPTURE(name);
    const auto f = surrogate(name);
    const SubgroupLattice& L = f.lattice();
    const FiniteGroup& g = L.group();
    const Biset x = build_semicharacteristic(f);
    const auto pe = BisetEmbedding::decompose(f, x);
    CHECK(pe.degree() == x.n);
    const auto qf = compute_QF(f);
    const auto rep = verify_embedding(pe, L[qf.subgroup]);
    CHECK(rep.ok());
    CHECK(rep.failure.empty());

    for (Elem u = 0; u < g.order(); ++u) {
      const WreathElement iu = pe.iota(u);
      if (top_projection(iu).is_identity()) CHECK(L[qf.subgroup].contains(u));
      for (Elem v = 0; v < g.order(); ++v) CHECK(wreath_multiply(g, iu, pe.iota(v)) == pe.iota(g.mul(u, v)));
      for (std::size_t i = 0; i < pe.orbits().size(); ++i) {
        const auto& o = pe.orbits()[i];
        for (uint32_t j = 0; j < o.index(); ++j) {
          const auto [j2, b] = pe.act(i, u, j, g.identity());
          CHECK(iu.top[o.offset + j] == o.offset + j2);
          CHECK(iu.base[o.offset + j2] == b);
        }
      }
    }

    for (MorphId id = 0; id < f.size(); ++id) {
      const Morphism& phi = f.morphism(id);
      const WreathElement w = pe.witness(phi);
      CHECK(pe.verify_witness(phi, w));
      // The identity on all of P, as a certificate check.
      const WreathElement wi = wreath_inverse(g, w);
      for (std::size_t k = 0; k < L[phi.source].order(); ++k) {
        const Elem u = L[phi.source].elements()[k];
        CHECK(wreath_multiply(g, wreath_multiply(g, w, pe.iota(u)), wi) == pe.iota(phi.images[k]));
      }
    }
    for (Elem s0 = 0; s0 < g.order(); ++s0)
      for (std::size_t p = 0; p < L.size(); p += 3) CHECK(pe.verify_witness(conjugation(L, p, s0), pe.iota(s0)));
    const std::size_t whole = L.whole();
    CHECK(pe.verify_witness(identity_morphism(L, whole), wreath_identity(g, pe.degree())));
    for (MorphId a : f.aut(whole))
      if (f.morphism(a) != identity_morphism(L, whole))
        CHECK_FALSE(pe.verify_witness(f.morphism(a), wreath_identity(g, pe.degree())));
  }
}

TEST_CASE("decompose requires the (S, id) orbit first") {
  const auto f = surrogate("S4_D8");
  const auto& L = f.lattice();
  CHECK_THROWS_AS(BisetEmbedding::decompose(f.lattice_ptr(), {{identity_morphism(L, 0), 1}}), DomainError);
  const auto pe = BisetEmbedding::decompose(f.lattice_ptr(), {{identity_morphism(L, L.whole()), 1},
                                                             {identity_morphism(L, 0), 2}});
  CHECK(pe.degree() == 1 + 2 * 8);
}
