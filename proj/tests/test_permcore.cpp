#include <doctest.h>

#include <algorithm>
#include <random>
#include <set>

#include "automizer/errors.hpp"
#include "automizer/kernels.hpp"
#include "automizer/perm.hpp"

using namespace automizer;

namespace {

std::vector<uint32_t> random_perm(std::mt19937_64& rng, std::size_t n) {
  std::vector<uint32_t> p(n);
  for (std::size_t i = 0; i < n; ++i) p[i] = static_cast<uint32_t>(i);
  std::shuffle(p.begin(), p.end(), rng);
  return p;
}

std::vector<uint64_t> random_words(std::mt19937_64& rng, std::size_t n) {
  std::vector<uint64_t> w(n);
  for (auto& x : w) x = rng();
  return w;
}

}  // namespace

TEST_CASE("scalar and avx2 kernels agree") {
  if (!kernels::avx2_available()) {
    MESSAGE("AVX2 unavailable; equivalence not exercised");
    return;
  }
  std::mt19937_64 rng(7);
  for (std::size_t n : {0u, 1u, 7u, 8u, 9u, 31u, 64u, 257u, 1000u}) {
    const auto p = random_perm(rng, n), q = random_perm(rng, n);
    std::vector<uint32_t> a(n), b(n);
    kernels::scalar::gather(p.data(), q.data(), a.data(), n);
    kernels::avx2::gather(p.data(), q.data(), b.data(), n);
    CHECK(a == b);

    const std::size_t order = 13;
    std::vector<uint32_t> mul(order * order);
    for (std::size_t i = 0; i < order; ++i)
      for (std::size_t j = 0; j < order; ++j) mul[i * order + j] = static_cast<uint32_t>((i + j) % order);
    std::vector<uint32_t> x(n), y(n);
    for (std::size_t i = 0; i < n; ++i) {
      x[i] = static_cast<uint32_t>(rng() % order);
      y[i] = static_cast<uint32_t>(rng() % order);
    }
    kernels::scalar::table_multiply(mul.data(), order, x.data(), y.data(), a.data(), n);
    kernels::avx2::table_multiply(mul.data(), order, x.data(), y.data(), b.data(), n);
    CHECK(a == b);

    const std::size_t w = n / 8 + 1;
    const auto u = random_words(rng, w), v = random_words(rng, w);
    std::vector<uint64_t> c(w), d(w);
    kernels::scalar::bits_and(u.data(), v.data(), c.data(), w);
    kernels::avx2::bits_and(u.data(), v.data(), d.data(), w);
    CHECK(c == d);
    kernels::scalar::bits_or(u.data(), v.data(), c.data(), w);
    kernels::avx2::bits_or(u.data(), v.data(), d.data(), w);
    CHECK(c == d);
    CHECK(kernels::scalar::popcount(u.data(), w) == kernels::avx2::popcount(u.data(), w));
    CHECK(kernels::scalar::bits_subset(c.data(), u.data(), w) == kernels::avx2::bits_subset(c.data(), u.data(), w));
    kernels::scalar::bits_and(u.data(), v.data(), c.data(), w);
    CHECK(kernels::avx2::bits_subset(c.data(), u.data(), w));
  }
}

TEST_CASE("dispatch honours the forced backend") {
  const auto before = kernels::active_backend();
  CHECK(kernels::set_backend(kernels::Backend::Scalar));
  CHECK(kernels::active_backend() == kernels::Backend::Scalar);
  const std::vector<uint32_t> p{2, 0, 1}, q{1, 2, 0};
  std::vector<uint32_t> out(3);
  kernels::gather(p, q, out);
  CHECK(out == std::vector<uint32_t>{0, 1, 2});
  kernels::invert_permutation(p, out);
  CHECK(out == q);
  kernels::set_backend(before);
}

TEST_CASE("composition applies the right factor first") {
  const auto a = Permutation::from_cycles("(0 1)", 3);
  const auto b = Permutation::from_cycles("(1 2)", 3);
  CHECK(compose(a, b)(1) == 2);
  CHECK(compose(a, b).to_cycles() == "(0 1 2)");
  CHECK(compose(b, a).to_cycles() == "(0 2 1)");
  CHECK(commutator(a, b) == compose(compose(a, b), compose(a.inverse(), b.inverse())));
  CHECK_THROWS_AS(Permutation(std::vector<uint32_t>{0, 0}), DomainError);
  CHECK_THROWS_AS(compose(a, Permutation(4)), DomainError);
}

TEST_CASE("the multiplication table of Sym(3)") {
  PermGroup s3(3, symmetric_generators(3));
  std::vector<Permutation> el;
  s3.chain().for_each_element([&](const Permutation& p) { el.push_back(p); });
  std::sort(el.begin(), el.end());
  REQUIRE(el.size() == 6);
  std::vector<std::string> cyc;
  for (const auto& p : el) cyc.push_back(p.to_cycles());
  CHECK(cyc == std::vector<std::string>{"()", "(1 2)", "(0 1)", "(0 1 2)", "(0 2 1)", "(0 2)"});
  // Row of (0 1): (0 1)·x for x in sorted order.
  std::vector<std::string> row;
  for (const auto& x : el) row.push_back(compose(el[2], x).to_cycles());
  CHECK(row == std::vector<std::string>{"(0 1)", "(0 1 2)", "()", "(1 2)", "(0 2)", "(0 2 1)"});
}

TEST_CASE("orders and membership") {
  CHECK(PermGroup(5, symmetric_generators(5)).order() == 120);
  CHECK(PermGroup(5, alternating_generators(5)).order() == 60);
  CHECK(PermGroup(10, alternating_generators(10)).order() == factorial(10) / 2);
  PermGroup a5(5, alternating_generators(5));
  CHECK(a5.contains(Permutation::from_cycles("(0 1)(2 3)", 5)));
  CHECK_FALSE(a5.contains(Permutation::from_cycles("(0 1)", 5)));
  CHECK(a5.is_transitive());
  CHECK_FALSE(PermGroup(5, {Permutation::from_cycles("(0 1 2)", 5)}).is_transitive());
  CHECK(factorial(20) == BigInt("2432902008176640000"));
}

TEST_CASE("random elements lie in the group and reach every coset") {
  PermGroup g(6, {Permutation::from_cycles("(0 1 2 3 4 5)", 6), Permutation::from_cycles("(0 1)", 6)});
  std::mt19937_64 rng(1);
  std::set<Permutation> seen;
  for (int i = 0; i < 20000; ++i) {
    auto p = g.chain().random_element([&](std::size_t k) { return rng() % k; });
    CHECK(g.contains(p));
    seen.insert(p);
  }
  CHECK(seen.size() == 720);
}

TEST_CASE("normal closures") {
  PermGroup s5(5, symmetric_generators(5));
  const std::vector<Permutation> c3{Permutation::from_cycles("(0 1 2)", 5)};
  CHECK(normal_closure(s5, c3).order() == 60);
  PermGroup s4(4, symmetric_generators(4));
  const std::vector<Permutation> dbl{Permutation::from_cycles("(0 1)(2 3)", 4)};
  CHECK(normal_closure(s4, dbl).order() == 4);
  CHECK(derived_subgroup(s4).order() == 12);
  CHECK(derived_subgroup(PermGroup(5, alternating_generators(5))).order() == 60);
}

TEST_CASE("giant recognition") {
  CHECK(recognize_giant(PermGroup(7, symmetric_generators(7))).kind == GiantKind::Symmetric);
  CHECK(recognize_giant(PermGroup(7, alternating_generators(7))).kind == GiantKind::Alternating);
  CHECK(recognize_giant(PermGroup(4, {Permutation::from_cycles("(0 1 2 3)", 4)})).kind == GiantKind::Other);
  const std::vector<Permutation> d{Permutation::from_cycles("(0 1 2 3 4 5 6)", 7),
                                   Permutation::from_cycles("(1 6)(2 5)(3 4)", 7)};
  CHECK(recognize_giant(PermGroup(7, d)).kind == GiantKind::Other);

  auto big = recognize_giant(PermGroup(101, alternating_generators(101)));
  CHECK(big.kind == GiantKind::Alternating);
  CHECK(big.method == "jordan");
  CHECK(big.prime_cycle > 50);
  CHECK(big.prime_cycle <= 98);
}

TEST_CASE("alternating closure of seeds") {
  const std::vector<Permutation> seed{Permutation::from_cycles("(0 1 2)", 9)};
  auto r = alternating_closure_giant(9, seed);
  CHECK(r.kind == GiantKind::Alternating);
  CHECK(r.method == "order");
  // A product of disjoint 3-cycles still has normal closure A_n in A_n.
  std::string cyc;
  for (uint32_t k = 0; k + 2 < 120; k += 3)
    cyc += "(" + std::to_string(k) + " " + std::to_string(k + 1) + " " + std::to_string(k + 2) + ")";
  const std::vector<Permutation> big{Permutation::from_cycles(cyc, 120)};
  auto rb = alternating_closure_giant(120, big);
  CHECK(rb.kind == GiantKind::Alternating);
  CHECK(rb.method == "jordan");
  const std::vector<Permutation> ident{Permutation(9)};
  CHECK(alternating_closure_giant(9, ident).kind == GiantKind::Other);
}
