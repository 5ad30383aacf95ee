#include "automizer/realize.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "automizer/errors.hpp"

namespace automizer {

VerificationPolicy VerificationPolicy::fast() {
  VerificationPolicy p;
  p.full = false;
  return p;
}

VerificationPolicy VerificationPolicy::full_policy() { return {}; }

namespace {

// Closure of a set of automorphisms of one subgroup under composition.
std::set<Morphism> generated_autos(const SubgroupLattice& lat, std::size_t v, const std::vector<Morphism>& gens) {
  std::set<Morphism> seen{identity_morphism(lat, v)};
  std::vector<Morphism> queue(seen.begin(), seen.end());
  for (std::size_t k = 0; k < queue.size(); ++k)
    for (const auto& g : gens) {
      Morphism m = compose(lat, g, queue[k]);
      if (seen.insert(m).second) queue.push_back(std::move(m));
    }
  return seen;
}

}  // namespace

std::vector<Morphism> reduced_generators(const SubgroupLattice& lat, const std::vector<std::size_t>& v) {
  const FiniteGroup& g = lat.group();
  std::vector<char> covered(lat.size(), 0);
  std::vector<Morphism> out;
  for (std::size_t id : v) {
    if (covered[id]) continue;
    for (Elem s = 0; s < g.order(); ++s) covered[lat.id_of(conjugate(g, lat[id], s))] = 1;
    std::vector<Morphism> gens;
    std::set<Morphism> have = generated_autos(lat, id, gens);
    for (const auto& a : automorphisms_of(lat, id)) {
      if (have.count(a)) continue;
      gens.push_back(a);
      have = generated_autos(lat, id, gens);
    }
    out.insert(out.end(), gens.begin(), gens.end());
  }
  return out;
}

FusionInput build_fusion_for(const InputGroupA& a, const VerificationPolicy& policy) {
  SGroup s = SGroup::build(a, policy.max_subgroup_order);
  const BigInt bound = subgroup_count_lower_bound(s);
  if (bound > policy.max_subgroups)
    throw ScaleError("max_subgroups", "S has at least " + bound.str() + " subgroups (bound " +
                                          std::to_string(policy.max_subgroups) + ")");
  auto lat = std::make_shared<const SubgroupLattice>(s.group_ptr(), policy.max_subgroups);
  auto v = homocyclic_rank2(s, *lat);
  auto gens = reduced_generators(*lat, v);
  FusionSystem f = FusionSystem::generate(lat, gens, policy.max_morphisms);
  const std::size_t u = lat->id_of(s.U());
  return FusionInput{a, std::move(s), std::move(lat), std::move(f), u, std::move(v), std::move(gens)};
}

FiniteGroup automorphism_table(const FusionSystem& f, std::size_t p) {
  const auto ids = f.aut(p);
  std::map<MorphId, uint32_t> pos;
  for (std::size_t k = 0; k < ids.size(); ++k) pos[ids[k]] = static_cast<uint32_t>(k);
  std::vector<uint32_t> mul(ids.size() * ids.size());
  for (std::size_t i = 0; i < ids.size(); ++i)
    for (std::size_t j = 0; j < ids.size(); ++j) mul[i * ids.size() + j] = pos.at(f.compose_ids(ids[i], ids[j]));
  return FiniteGroup(ids.size(), std::move(mul));
}

FusionReport verify_fusion_claims(const FusionInput& in) {
  const SubgroupLattice& L = *in.lattice;
  const FiniteGroup& g = L.group();
  const FusionSystem& f = in.f;
  FusionReport r;

  const Subgroup& u = L[in.u];
  const Subgroup c = in.s.complement();
  r.semidirect = is_normal(g, u) && intersect(g, u, c).order() == 1 && c.order() == in.a.order() &&
                 u.order() * c.order() == g.order();
  r.exponent_matches = exponent(g, u) == in.s.e() && in.s.e() == in.a.exponent;

  const auto autf = f.aut(in.u);
  r.autF_U_order = autf.size();
  r.autF_U_is_autS_U = std::vector<MorphId>(autf.begin(), autf.end()) == inner_morphisms(f, in.u);
  r.autF_U_iso_A = find_isomorphism(automorphism_table(f, in.u), *in.a.table).has_value();

  r.focal_is_S = focal_subgroup(f) == L.whole();
  const QFResult qf = compute_QF(f);
  r.QF_order = L[qf.subgroup].order();
  r.QF_trivial = r.QF_order == 1;
  for (std::size_t q : qf.family) r.max_family_index = std::max(r.max_family_index, g.order() / L[q].order());

  if (in.a.order() == 1) {
    // Nothing to realize; the remaining claims are vacuous.
    r.index_gt_2A = r.v1_generates_S = r.v1_intersection_trivial = true;
    return r;
  }
  r.index_gt_2A = r.max_family_index > 2 * in.a.order();
  Subgroup join_v = trivial_subgroup(g);
  Subgroup meet_v = whole_group(g);
  for (std::size_t v : in.v) {
    bool supports = false;
    for (MorphId id : f.aut(v))
      if (f.is_nonextendable(id)) {
        supports = true;
        break;
      }
    if (!supports) continue;
    ++r.v1_count;
    join_v = join(g, join_v, L[v]);
    meet_v = intersect(g, meet_v, L[v]);
  }
  r.v1_generates_S = r.v1_count > 0 && join_v.order() == g.order();
  r.v1_intersection_trivial = r.v1_count > 0 && meet_v.order() == 1;
  return r;
}

std::size_t bertrand_prime(std::size_t m) {
  if (m < 2) throw DomainError("bertrand_prime requires m >= 2");
  auto prime = [](std::size_t p) {
    for (std::size_t d = 2; d * d <= p; ++d)
      if (p % d == 0) return false;
    return p >= 2;
  };
  for (std::size_t p = m + 1; p < 2 * m; ++p)
    if (prime(p)) return p;
  throw DomainError("no prime found in (m, 2m)");
}

MainReport verify_main(const BisetEmbedding& pe, const FusionInput& in, std::size_t p,
                       const VerificationPolicy& policy) {
  const SubgroupLattice& L = *in.lattice;
  const FiniteGroup& g = L.group();
  const std::size_t n = pe.degree();
  MainReport r;
  r.degree_ok = n >= 5 && n > 2 * in.a.order();
  r.prime_ok = p >= 2 && g.order() % p != 0 && p <= n;
  if (n < 5) {
    r.failure = "degree below 5";
    return r;
  }
  const Subgroup s_prime = derived_subgroup(g);
  r.iota_in_gamma_prime = true;
  for (Elem s : L[L.whole()].generators())
    if (!gamma_prime_member(g, pe.iota(s), s_prime)) {
      r.iota_in_gamma_prime = false;
      r.failure = "iota of a generator of S lies outside the derived subgroup of the wreath product";
      break;
    }

  std::vector<Permutation> seeds;
  for (Elem x : L[in.u].generators()) seeds.push_back(top_projection(pe.iota(x)));
  if (n <= policy.max_perm_degree) {
    for (const auto& s : seeds)
      if (!s.is_even()) {
        if (r.failure.empty()) r.failure = "top of iota(U) is odd";
        return r;
      }
    const GiantReport gr = alternating_closure_giant(n, seeds);
    r.top_closure_method = gr.method;
    r.jordan_prime = gr.prime_cycle;
    r.top_closure_is_An = gr.kind == GiantKind::Alternating;
  } else {
    std::vector<Permutation> gens = seeds;
    for (const auto& h : alternating_generators(n))
      for (const auto& s : seeds) gens.push_back(compose(compose(h, s), h.inverse()));
    r.top_closure_method = "transitivity-only";
    r.top_closure_is_An = PermGroup(n, gens).is_transitive();
  }
  if (!r.top_closure_is_An && r.failure.empty())
    r.failure = "normal closure of the tops of iota(U) not certified as the alternating group";
  if (!r.prime_ok && r.failure.empty()) r.failure = "prime divides |S| or exceeds n";
  if (!r.degree_ok && r.failure.empty()) r.failure = "n does not exceed 2|A|";
  return r;
}

InputGroupA automizer_oracle(const PermGroup& g0, const std::vector<Permutation>& u0, std::size_t max_order) {
  if (g0.order() > max_order)
    throw ScaleError("max_oracle_order", "|G0| = " + g0.order().str() + " exceeds " + std::to_string(max_order));
  for (const auto& x : u0)
    if (!g0.contains(x)) throw DomainError("subgroup generator not in G0");
  const std::size_t n = g0.degree();
  PermGroup u(n, u0);
  std::vector<Permutation> elems;
  u.chain().for_each_element([&](const Permutation& x) { elems.push_back(x); });
  std::sort(elems.begin(), elems.end());
  std::map<Permutation, uint32_t> index;
  for (std::size_t k = 0; k < elems.size(); ++k) index.emplace(elems[k], static_cast<uint32_t>(k));

  std::set<std::vector<uint32_t>> actions;
  g0.chain().for_each_element([&](const Permutation& x) {
    const Permutation xi = x.inverse();
    for (const auto& h : u0)
      if (!index.count(compose(compose(x, h), xi))) return;
    std::vector<uint32_t> act(elems.size());
    for (std::size_t k = 0; k < elems.size(); ++k) act[k] = index.at(compose(compose(x, elems[k]), xi));
    actions.insert(std::move(act));
  });
  std::vector<std::vector<uint32_t>> list(actions.begin(), actions.end());
  std::map<std::vector<uint32_t>, uint32_t> pos;
  for (std::size_t k = 0; k < list.size(); ++k) pos.emplace(list[k], static_cast<uint32_t>(k));
  std::vector<uint32_t> mul(list.size() * list.size());
  std::vector<uint32_t> c(elems.size());
  for (std::size_t i = 0; i < list.size(); ++i)
    for (std::size_t j = 0; j < list.size(); ++j) {
      for (std::size_t k = 0; k < elems.size(); ++k) c[k] = list[i][list[j][k]];
      mul[i * list.size() + j] = pos.at(c);
    }
  return group_from_table("automizer", list.size(), std::move(mul));
}

std::optional<std::string> identify_small_group(const FiniteGroup& g) {
  const std::size_t n = g.order();
  std::vector<std::string> names{"1", "C" + std::to_string(n)};
  for (const char* s : {"C2xC2", "S3", "D8", "Q8", "C2xC4", "C2xC2xC2", "D10", "D12", "C2xC6", "S4", "C3xC3"})
    names.emplace_back(s);
  for (const auto& name : names) {
    InputGroupA h = catalog_group(name);
    if (h.order() == n && find_isomorphism(g, *h.table)) return name;
  }
  return std::nullopt;
}

}  // namespace automizer
