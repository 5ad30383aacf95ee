// One line per acceptance criterion; exits nonzero if any criterion fails.

#include <chrono>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>

#include "automizer/certificate.hpp"
#include "automizer/errors.hpp"
#include "automizer/testkit.hpp"

using namespace automizer;

namespace {

struct Outcome {
  bool ok = true;
  std::string detail;
};

class Criterion {
 public:
  explicit Criterion(Outcome& o) : o_(o) {}
  void require(bool cond, const std::string& what) {
    if (!cond && o_.ok) {
      o_.ok = false;
      o_.detail = what;
    }
  }

 private:
  Outcome& o_;
};

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

Outcome trivial_group() {
  Outcome o;
  Criterion c(o);
  const auto t0 = std::chrono::steady_clock::now();
  const auto r = run_pipeline(catalog_group("1"));
  c.require(r.exit_code == kAccepted, "pipeline did not accept A = 1");
  c.require(verify_certificate(r.certificate).accepted(), "verify rejected the A = 1 certificate");
  const double t = seconds_since(t0);
  c.require(t < 1.0, "took longer than 1 s");
  if (o.ok) o.detail = "accepted in " + std::to_string(t) + " s";
  return o;
}

Outcome c2_end_to_end(nlohmann::json& cert_out) {
  Outcome o;
  Criterion c(o);
  const auto t0 = std::chrono::steady_clock::now();
  const auto r = run_pipeline(catalog_group("C2"), VerificationPolicy::full_policy());
  c.require(r.exit_code == kAccepted, "pipeline did not accept A = C2");
  cert_out = r.certificate;
  const double t_run = seconds_since(t0);

  // Independent recomputation of every claim from the fusion system up.
  const auto in = build_fusion_for(catalog_group("C2"));
  const SubgroupLattice& L = *in.lattice;
  const FusionSystem& f = in.f;
  c.require(in.s.order() == 32, "|S| != 32");
  const auto aut_u = automorphism_table(f, in.u);
  c.require(aut_u.order() == 2 && find_isomorphism(aut_u, *catalog_group("C2").table).has_value(),
            "Aut_F(U) is not C2");
  c.require(focal_subgroup(f) == L.whole(), "foc(F) != S");
  const auto qf = compute_QF(f);
  c.require(qf.subgroup == L.trivial(), "Q(F) != 1");
  std::size_t max_index = 0;
  for (std::size_t q : qf.family) max_index = std::max(max_index, 32 / L[q].order());
  c.require(max_index > 4, "no Q in the family has index > 4");

  const auto dc = diagonal_classes(f);
  MarksTable mt(f, dc);
  const Biset x = build_semicharacteristic(f, dc, mt);
  c.require(verify_generated(x, f).ok, "biset not F-generated");
  const auto st = verify_stability(x, f, dc, mt, true);
  c.require(st.ok, "biset not stable: " + st.failure);
  c.require(check_orbit_predictions(x, f, dc).ok, "orbit predictions fail");

  const auto pe = BisetEmbedding::decompose(f, x);
  const auto er = verify_embedding(pe, L[qf.subgroup], 64);
  c.require(er.homomorphism && er.injective, "iota is not an injective homomorphism");
  c.require(er.base_intersection_trivial, "iota(S) meets the base group");
  std::size_t witnesses = 0;
  for (MorphId id = 0; id < f.size(); ++id) {
    const Morphism& phi = f.morphism(id);
    const WreathElement w = pe.witness(phi);
    const WreathElement wi = wreath_inverse(L.group(), w);
    bool ok = true;
    for (std::size_t k = 0; k < L[phi.source].order() && ok; ++k)
      ok = wreath_multiply(L.group(), wreath_multiply(L.group(), w, pe.iota(L[phi.source].elements()[k])), wi) ==
           pe.iota(phi.images[k]);
    c.require(ok, "witness fails for stored morphism " + std::to_string(id));
    witnesses += ok;
  }
  const std::size_t p = bertrand_prime(2);
  c.require(p == 3 && cert_out["main"]["p"] == p && 32 % p != 0 && p <= x.n, "Bertrand prime is not 3");
  c.require(x.n > 4 && cert_out["biset"]["n"] == x.n, "n <= 4 or differs from the certificate");
  const auto v = verify_certificate(cert_out);
  c.require(v.accepted(), "verify rejected the certificate");
  const double t = seconds_since(t0);
  c.require(t < 1800, "took longer than 30 minutes");
  if (o.ok) {
    std::ostringstream d;
    d << "|S| = 32, " << f.size() << " morphisms, " << witnesses << " witnesses, n = " << x.n << ", p = 3; run "
      << t_run << " s, total " << t << " s";
    o.detail = d.str();
  }
  return o;
}

// |X_0^{Δ(S,β)}| = |Z(S)| for β ∈ Aut_F(S), where X_0 has one orbit (S, α)
// per class of Out_F(S).
Outcome marks_anchor() {
  Outcome o;
  Criterion c(o);
  std::size_t checked = 0;
  auto check = [&](const FusionSystem& f) {
    const SubgroupLattice& L = f.lattice();
    const std::size_t z = center(L.group()).order();
    const auto dc = diagonal_classes(f);
    for (MorphId beta : f.aut(L.whole())) {
      std::uint64_t x0 = 0;
      for (std::size_t k = 0; k < dc.size() && f.source(dc.rep(k)) == L.whole(); ++k)
        x0 += marks(L, f.morphism(dc.rep(k)), f.morphism(beta));
      c.require(x0 == z, "mark of a diagonal of S on X_0 is not |Z(S)|");
      ++checked;
    }
  };
  const auto in = build_fusion_for(catalog_group("C2"));
  check(in.f);
  for (const auto& p : testkit::load_surrogates(AUTOMIZER_TEST_DATA "/surrogates.txt")) {
    const auto s = testkit::surrogate_group(p);
    check(FusionSystem::generate(s.lattice, testkit::conjugation_generators(p, s)));
  }
  if (o.ok) o.detail = std::to_string(checked) + " automorphisms";
  return o;
}

Permutation as_permutation(const FiniteGroup& s, const WreathElement& w) {
  const std::size_t m = s.order();
  std::vector<uint32_t> img(w.degree() * m);
  for (std::size_t k = 0; k < w.degree(); ++k)
    for (Elem x = 0; x < m; ++x) img[k * m + x] = static_cast<uint32_t>(w.top[k] * m + s.mul(w.base[w.top[k]], x));
  return Permutation(std::move(img));
}

Outcome wreath_commutator() {
  Outcome o;
  Criterion c(o);
  const auto t0 = std::chrono::steady_clock::now();
  const auto a = catalog_group("S3");
  const FiniteGroup& s = *a.table;
  const std::size_t n = 5;
  const Subgroup s_prime = derived_subgroup(s);
  std::vector<Permutation> gens, base, k_prime;
  for (Elem x : small_generating_set(s, whole_group(s)))
    for (std::size_t i = 0; i < n; ++i) {
      WreathElement w = wreath_identity(s, n);
      w.base[i] = x;
      base.push_back(as_permutation(s, w));
    }
  gens = base;
  auto top = [&](const Permutation& p) {
    WreathElement w = wreath_identity(s, n);
    w.top.assign(p.images().begin(), p.images().end());
    return as_permutation(s, w);
  };
  for (const auto& p : symmetric_generators(n)) gens.push_back(top(p));
  for (const auto& p : alternating_generators(n)) k_prime.push_back(top(p));
  const PermGroup gamma(30, gens);
  const PermGroup gp = derived_subgroup(gamma);
  c.require(gp.order() == 233280, "|Gamma'| = " + gp.order().str());
  c.require(derived_subgroup(gp).order() == gp.order(), "Gamma' is not perfect");

  std::vector<Permutation> kb = k_prime, comms;
  kb.insert(kb.end(), base.begin(), base.end());
  for (const auto& k : k_prime)
    for (const auto& b : base) comms.push_back(commutator(k, b));
  const PermGroup kpb = normal_closure(PermGroup(30, kb), comms);
  c.require(kpb.order() == 3888, "|[K', B]| != 6^5/2");
  kpb.chain().for_each_element([&](const Permutation& g) {
    WreathElement w = wreath_identity(s, n);
    for (std::size_t k = 0; k < n; ++k) {
      c.require(g(static_cast<uint32_t>(6 * k)) / 6 == k, "[K', B] leaves the base group");
      w.base[k] = g(static_cast<uint32_t>(6 * k)) % 6;
    }
    c.require(s_prime.contains(component_product(s, w)), "[K', B] element outside the kernel");
  });

  std::mt19937_64 rng(1000);
  for (int i = 0; i < 1000; ++i) {
    WreathElement w = wreath_identity(s, n);
    for (auto& b : w.base) b = static_cast<uint32_t>(rng() % 6);
    std::shuffle(w.top.begin(), w.top.end(), rng);
    c.require(gamma_prime_member(s, w, s_prime) == gp.contains(as_permutation(s, w)), "membership disagrees");
  }
  const double t = seconds_since(t0);
  c.require(t < 60, "took longer than a minute");
  if (o.ok) o.detail = "|Gamma'| = 233280, perfect, 1000 memberships agree, " + std::to_string(t) + " s";
  return o;
}

Outcome fusion_corpus() {
  Outcome o;
  Criterion c(o);
  const auto corpus = testkit::load_surrogates(AUTOMIZER_TEST_DATA "/surrogates.txt");
  c.require(corpus.size() >= 20, "corpus has fewer than 20 pairs");
  for (const auto& p : corpus) {
    c.require(p.g0.order() <= 10'000, p.name + ": |G0| > 10^4");
    const auto s = testkit::surrogate_group(p);
    const auto brute = testkit::brute_fusion(p, s);
    const auto f = FusionSystem::generate(s.lattice, testkit::conjugation_generators(p, s));
    bool same = f.size() == brute.size();
    for (MorphId id = 0; same && id < f.size(); ++id) same = f.morphism(id) == brute[id];
    c.require(same, p.name + ": closure differs from brute force");
  }
  if (o.ok) o.detail = std::to_string(corpus.size()) + " pairs";
  return o;
}

Outcome automizer_oracles() {
  Outcome o;
  Criterion c(o);
  const std::vector<Permutation> v4{Permutation::from_cycles("(0 1)(2 3)", 4), Permutation::from_cycles("(0 2)(1 3)", 4)};
  const auto a = automizer_oracle(PermGroup(4, symmetric_generators(4)), v4);
  const auto b = automizer_oracle(PermGroup(4, alternating_generators(4)), v4);
  c.require(find_isomorphism(*a.table, *catalog_group("S3").table).has_value(), "Aut_S4(V4) is not S3");
  c.require(find_isomorphism(*b.table, *catalog_group("C3").table).has_value(), "Aut_A4(V4) is not C3");
  if (o.ok) o.detail = "S3 and C3";
  return o;
}

Outcome mutations(const nlohmann::json& cert) {
  Outcome o;
  Criterion c(o);
  const auto suite = testkit::mutation_suite(cert);
  c.require(suite.size() >= 10, "mutation suite is incomplete");
  for (const auto& m : suite) c.require(verify_certificate(m.certificate).exit_code == kCheckFailed, m.name + " accepted");
  if (o.ok) o.detail = std::to_string(suite.size()) + " of " + std::to_string(suite.size()) + " rejected";
  return o;
}

Outcome determinism(const nlohmann::json& cert) {
  Outcome o;
  Criterion c(o);
  const auto again = run_pipeline(catalog_group("C2"), VerificationPolicy::full_policy());
  const std::string a = dump_certificate(cert), b = dump_certificate(again.certificate);
  c.require(a == b, "certificates differ");
  if (o.ok) o.detail = std::to_string(a.size()) + " identical bytes";
  return o;
}

Outcome c3_stretch() {
  Outcome o;
  Criterion c(o);
  const auto r = run_pipeline(catalog_group("C3"));
  const std::string status = r.certificate.value("status", "");
  if (r.exit_code == kAccepted) {
    c.require(status == "accepted" && verify_certificate(r.certificate).accepted(), "accepted without verification");
    if (o.ok) o.detail = "accepted";
  } else {
    c.require(r.exit_code == kScaleRejected, "neither accepted nor scale-rejected");
    c.require(status == "scale_rejected", "status is " + status);
    c.require(!r.certificate.value("scale_bound", "").empty(), "violated bound not named");
    if (o.ok) o.detail = "scale rejection, bound " + r.certificate.value("scale_bound", "");
  }
  return o;
}

}  // namespace

int main() {
  nlohmann::json cert;
  std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
      {"trivial input", trivial_group},
      {"A = C2 end to end", [&] { return c2_end_to_end(cert); }},
      {"marks anchor", marks_anchor},
      {"wreath commutator instance", wreath_commutator},
      {"fusion oracle corpus", fusion_corpus},
      {"automizer oracle", automizer_oracles},
      {"mutation suite", [&] { return mutations(cert); }},
      {"determinism", [&] { return determinism(cert); }},
      {"A = C3 stretch", c3_stretch},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    std::printf("%s %zu %s: %s\n", o.ok ? "PASS" : "FAIL", i + 1, criteria[i].first.c_str(), o.detail.c_str());
    std::fflush(stdout);
    failed += !o.ok;
  }
  return failed == 0 ? 0 : 1;
}
