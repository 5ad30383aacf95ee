#include <doctest.h>

#include <algorithm>
#include <set>

#include "automizer/errors.hpp"
#include "automizer/fusion.hpp"
#include "automizer/grouprep.hpp"
#include "automizer/realize.hpp"
#include "automizer/testkit.hpp"

using namespace automizer;

namespace {

std::vector<testkit::SurrogatePair> corpus() {
  return testkit::load_surrogates(AUTOMIZER_TEST_DATA "/surrogates.txt");
}

std::shared_ptr<const SubgroupLattice> lattice_of(const char* name) {
  return std::make_shared<const SubgroupLattice>(catalog_group(name).table, 100'000);
}

}  // namespace

TEST_CASE("the surrogate corpus loads") {
  const auto c = corpus();
  CHECK(c.size() >= 20);
  for (const auto& p : c) {
    PermGroup s0(p.g0.degree(), p.s0);
    for (const auto& g : p.s0) CHECK_MESSAGE(p.g0.contains(g), p.name);
    CHECK(p.g0.order() % s0.order() == 0);
  }
  CHECK_THROWS_AS(testkit::parse_surrogates("bad line"), DomainError);
}

TEST_CASE("generated fusion systems equal the brute-force conjugation systems") {
  for (const auto& p : corpus()) {
    const auto s = testkit::surrogate_group(p);
    const auto brute = testkit::brute_fusion(p, s);
    const auto f = FusionSystem::generate(s.lattice, testkit::conjugation_generators(p, s));
    std::vector<Morphism> got;
    for (MorphId id = 0; id < f.size(); ++id) got.push_back(f.morphism(id));
    CHECK_MESSAGE(got == brute, p.name);
  }
}

TEST_CASE("focal subgroup lies in S0 ∩ [G0, G0], with equality for Sylow S0") {
  std::size_t sylow = 0;
  for (const auto& p : corpus()) {
    CAPTURE(p.name);
    const auto s = testkit::surrogate_group(p);
    const auto f = FusionSystem::generate(s.lattice, testkit::conjugation_generators(p, s));
    const PermGroup d = derived_subgroup(p.g0);
    std::vector<Elem> expect;
    for (std::size_t k = 0; k < s.elements.size(); ++k)
      if (d.contains(s.elements[k])) expect.push_back(static_cast<Elem>(k));
    const Subgroup& foc = (*s.lattice)[focal_subgroup(f)];
    for (Elem x : foc.elements()) CHECK(std::binary_search(expect.begin(), expect.end(), x));
    // Sylow: |S0| a prime power and coprime to the index.
    const std::size_t order = s.elements.size();
    std::size_t q = 2;
    while (order > 1 && order % q) ++q;
    std::size_t r = order;
    while (r > 1 && r % q == 0) r /= q;
    const BigInt index = p.g0.order() / order;
    if (order > 1 && r == 1 && index % q != 0) {
      ++sylow;
      CHECK(foc.elements() == expect);
    }
  }
  CHECK(sylow >= 10);
}

TEST_CASE("the inner fusion system") {
  auto lat = lattice_of("D8");
  const auto f = FusionSystem::generate(lat, {});
  const auto qf = compute_QF(f);
  CHECK(qf.subgroup == lat->whole());
  CHECK(qf.family == std::vector<std::size_t>{lat->whole()});
  CHECK(compute_OSF(f) == lat->whole());
  CHECK((*lat)[focal_subgroup(f)] == derived_subgroup(lat->group()));
  CHECK(f.aut(lat->whole()).size() == 4);  // Inn(D8)
  for (std::size_t p = 0; p < lat->size(); ++p) {
    const auto inner = inner_morphisms(f, p);
    CHECK(std::vector<MorphId>(f.from(p).begin(), f.from(p).end()) == inner);
  }
}

TEST_CASE("V4 with an automorphism of order 3") {
  auto lat = lattice_of("C2xC2");
  const auto auts = automorphisms_of(*lat, lat->whole());
  Morphism three;
  for (const auto& m : auts) {
    const Morphism sq = compose(*lat, m, m);
    if (m != auts.front() && sq != auts.front() && compose(*lat, m, sq) == auts.front()) three = m;
  }
  REQUIRE(!three.images.empty());
  const auto f = FusionSystem::generate(lat, {three});
  CHECK(f.size() == 13);
  CHECK(f.aut(lat->whole()).size() == 3);
  CHECK(compute_QF(f).subgroup == lat->whole());
  CHECK(compute_OSF(f) == lat->whole());
  CHECK(focal_subgroup(f) == lat->whole());
  for (std::size_t p = 1; p < lat->whole(); ++p) CHECK(f.from(p).size() == 3);

  // Adding the whole of Aut(V4) gives F_{V4}(S4): still 3 maps from each line.
  const auto full = FusionSystem::generate(lat, auts);
  CHECK(full.size() == 6 + 9 + 1);
  CHECK_THROWS_AS(FusionSystem::generate(lat, {three}, 5), ScaleError);
}

TEST_CASE("closure is idempotent and ids are canonical") {
  const auto c = corpus();
  for (const auto& p : c) {
    if (p.name != "S4_D8" && p.name != "PSL27_D8" && p.name != "S6_D8xC2") continue;
    const auto s = testkit::surrogate_group(p);
    const auto f = FusionSystem::generate(s.lattice, testkit::conjugation_generators(p, s));
    std::vector<Morphism> all;
    for (MorphId id = 0; id < f.size(); ++id) all.push_back(f.morphism(id));
    CHECK(std::is_sorted(all.begin(), all.end()));
    auto rev = all;
    std::reverse(rev.begin(), rev.end());
    const auto g = FusionSystem::generate(s.lattice, rev);
    REQUIRE(g.size() == f.size());
    for (MorphId id = 0; id < f.size(); ++id) CHECK(g.morphism(id) == f.morphism(id));
  }
}

TEST_CASE("store operations are consistent") {
  const auto c = corpus();
  const auto it = std::find_if(c.begin(), c.end(), [](const auto& p) { return p.name == "S4_D8"; });
  REQUIRE(it != c.end());
  const auto s = testkit::surrogate_group(*it);
  const SubgroupLattice& L = *s.lattice;
  const auto f = FusionSystem::generate(s.lattice, testkit::conjugation_generators(*it, s));
  for (MorphId id = 0; id < f.size(); ++id) {
    const Morphism& m = f.morphism(id);
    CHECK(f.id_of(m) == id);
    CHECK(f.image(id) == image_id(L, m));
    const MorphId inv = f.inverse_id(id);
    CHECK(f.compose_ids(inv, id) == f.identity(f.source(id)));
    CHECK(f.restriction(id, f.source(id)) == id);
    for (std::size_t sub : L.subgroups_of(f.source(id)))
      CHECK(f.morphism(f.restriction(id, sub)) == restrict(L, m, sub));
    for (MorphId psi : f.from(f.image(id))) CHECK(f.contains(compose(L, f.morphism(psi), m)));
    const auto hs = f.hom_set(f.source(id), f.image(id));
    CHECK(std::find(hs.begin(), hs.end(), id) != hs.end());
    // Nonextendable means no proper overgroup carries an extension.
    bool extends = false;
    for (std::size_t over = 0; over < L.size() && !extends; ++over) {
      if (over == f.source(id) || !L[f.source(id)].is_subgroup_of(L[over])) continue;
      for (MorphId e : f.from(over))
        if (f.restriction(e, f.source(id)) == id) extends = true;
    }
    CHECK(f.is_nonextendable(id) == !extends);
  }
  for (std::size_t q = 0; q < L.size(); ++q)
    for (MorphId id : f.onto(q)) CHECK(f.image(id) == q);
}

TEST_CASE("F′-orbits partition the twisted diagonals") {
  auto lat = lattice_of("C2xC2");
  const auto f = FusionSystem::generate(lat, automorphisms_of(*lat, lat->whole()));
  std::set<MorphId> covered;
  for (MorphId d = 0; d < f.size(); ++d) {
    const auto orb = fprime_orbit(f, d);
    CHECK(std::find(orb.begin(), orb.end(), d) != orb.end());
    CHECK(std::is_sorted(orb.begin(), orb.end(), [&](MorphId a, MorphId b) { return delta_less(f, a, b); }));
    for (MorphId e : orb) CHECK(fprime_orbit(f, e) == orb);
    covered.insert(orb.begin(), orb.end());
  }
  CHECK(covered.size() == f.size());
  // S abelian: the orbit of Δ(P, id) is {Δ(ψP, ψ^-1)}, one per line.
  CHECK(fprime_orbit(f, f.identity(1)).size() == 3);
}

TEST_CASE("reduced generators give the same fusion system as all of Aut(V)") {
  const SGroup s = SGroup::build(catalog_group("C2"));
  auto lat = std::make_shared<const SubgroupLattice>(s.group_ptr(), 100'000);
  const auto v = homocyclic_rank2(s, *lat);
  std::vector<Morphism> all;
  for (std::size_t id : v)
    for (const auto& m : automorphisms_of(*lat, id)) all.push_back(m);
  const auto full = FusionSystem::generate(lat, all);
  const auto reduced = reduced_generators(*lat, v);
  CHECK(reduced.size() < all.size());
  const auto f = FusionSystem::generate(lat, reduced);
  REQUIRE(f.size() == full.size());
  for (MorphId id = 0; id < f.size(); ++id) CHECK(f.morphism(id) == full.morphism(id));
  CHECK(f.size() == 1036);
}
