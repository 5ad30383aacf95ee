#include "automizer/park.hpp"

#include <algorithm>
#include <map>
#include <tuple>

#include "automizer/errors.hpp"
#include "automizer/kernels.hpp"

namespace automizer {

WreathElement wreath_identity(const FiniteGroup& s, std::size_t n) {
  WreathElement w;
  w.base.assign(n, s.identity());
  w.top.resize(n);
  for (std::size_t k = 0; k < n; ++k) w.top[k] = static_cast<uint32_t>(k);
  return w;
}

WreathElement wreath_multiply(const FiniteGroup& s, const WreathElement& a, const WreathElement& b) {
  const std::size_t n = a.degree();
  if (b.degree() != n || a.base.size() != n || b.base.size() != n)
    throw DomainError("wreath_multiply: degree mismatch");
  std::vector<uint32_t> inv(n), moved(n);
  kernels::invert_permutation(a.top, inv);
  kernels::gather(b.base, inv, moved);
  WreathElement out;
  out.base.resize(n);
  out.top.resize(n);
  kernels::table_multiply(s.table(), s.order(), a.base, moved, out.base);
  kernels::gather(a.top, b.top, out.top);
  return out;
}

WreathElement wreath_inverse(const FiniteGroup& s, const WreathElement& a) {
  const std::size_t n = a.degree();
  WreathElement out;
  out.top.resize(n);
  out.base.resize(n);
  kernels::invert_permutation(a.top, out.top);
  for (std::size_t j = 0; j < n; ++j) out.base[j] = s.inv(a.base[a.top[j]]);
  return out;
}

Permutation top_projection(const WreathElement& a) { return Permutation(a.top); }

Elem component_product(const FiniteGroup& s, const WreathElement& a) {
  Elem acc = s.identity();
  for (uint32_t b : a.base) acc = s.mul(acc, b);
  return acc;
}

bool gamma_prime_member(const FiniteGroup& s, const WreathElement& g, const Subgroup& s_prime) {
  if (g.degree() < 5) throw DomainError("gamma_prime_member requires n >= 5");
  return top_projection(g).is_even() && s_prime.contains(component_product(s, g));
}

// ---------------------------------------------------------------------------

BisetEmbedding BisetEmbedding::decompose(std::shared_ptr<const SubgroupLattice> lat,
                                       const std::vector<std::pair<Morphism, std::uint64_t>>& orbits) {
  const SubgroupLattice& L = *lat;
  const FiniteGroup& g = L.group();
  if (orbits.empty() || orbits[0].first != identity_morphism(L, L.whole()))
    throw DomainError("biset must start with the orbit (S, id)");
  BisetEmbedding pe;
  pe.lat_ = std::move(lat);
  constexpr uint32_t kNone = static_cast<uint32_t>(-1);
  for (const auto& [phi, mult] : orbits) {
    if (mult == 0) throw DomainError("orbit multiplicity must be positive");
    if (!is_injective_homomorphism(L, phi)) throw DomainError("orbit map is not an injective homomorphism");
    EmbeddingOrbit o;
    o.q = phi.source;
    o.phi = phi;
    o.multiplicity = mult;
    const Subgroup& q = L[o.q];
    o.phi_table.assign(g.order(), kNone);
    for (std::size_t k = 0; k < q.order(); ++k) o.phi_table[q.elements()[k]] = phi.images[k];
    o.coset_of.assign(g.order(), kNone);
    auto add_coset = [&](Elem t) {
      const auto j = static_cast<uint32_t>(o.reps.size());
      o.reps.push_back(t);
      for (Elem x : q.elements()) o.coset_of[g.mul(t, x)] = j;
    };
    add_coset(g.identity());
    for (Elem s = 0; s < g.order(); ++s)
      if (o.coset_of[s] == kNone) add_coset(s);
    o.offset = pe.n_;
    pe.n_ += o.index() * mult;
    pe.orbits_.push_back(std::move(o));
  }
  return pe;
}

BisetEmbedding BisetEmbedding::decompose(const FusionSystem& f, const Biset& x) {
  std::vector<std::pair<Morphism, std::uint64_t>> orbits;
  for (const auto& o : x.orbits) orbits.emplace_back(f.morphism(o.phi), o.multiplicity);
  return decompose(f.lattice_ptr(), orbits);
}

std::pair<uint32_t, Elem> BisetEmbedding::act(std::size_t i, Elem v, uint32_t j, Elem y) const {
  const FiniteGroup& g = group();
  const EmbeddingOrbit& o = orbits_[i];
  const Elem w = g.mul(v, o.reps[j]);
  const uint32_t k = o.coset_of[w];
  const Elem q = g.mul(g.inv(o.reps[k]), w);
  return {k, g.mul(o.phi_table[q], y)};
}

WreathElement BisetEmbedding::iota(Elem u) const {
  if (u >= group().order()) throw DomainError("iota: element out of range");
  WreathElement w;
  w.base.resize(n_);
  w.top.resize(n_);
  for (std::size_t i = 0; i < orbits_.size(); ++i) {
    const EmbeddingOrbit& o = orbits_[i];
    const std::size_t idx = o.index();
    for (uint32_t j = 0; j < idx; ++j) {
      const auto [k, b] = act(i, u, j, group().identity());
      for (std::uint64_t c = 0; c < o.multiplicity; ++c) {
        const std::size_t off = o.offset + c * idx;
        w.top[off + j] = static_cast<uint32_t>(off + k);
        w.base[off + k] = b;
      }
    }
  }
  return w;
}

namespace {

// A P-orbit on the cosets of one orbit type, seen through α: P → S (the
// inclusion for _P X, φ for _φ X).
struct CosetOrbit {
  std::size_t type = 0;
  uint32_t base = 0;  // j of the base point ⟨t_j, 1⟩
  // For each member j: u_j ∈ P and c_j with α(u_j)·⟨t_base, 1⟩ = ⟨t_j, c_j⟩.
  std::vector<std::tuple<uint32_t, Elem, Elem>> members;
  Morphism stabilizer;  // Δ(R, χ) as χ on R ≤ P
};

struct CanonicalForm {
  Morphism key;
  Elem x = 0, y = 0;  // key = (x, y) Δ (x, y)^-1
};

}  // namespace

WreathElement BisetEmbedding::witness(const Morphism& phi) const {
  const SubgroupLattice& L = lattice();
  const FiniteGroup& g = group();
  const Subgroup& p = L[phi.source];
  std::vector<Elem> phi_of(g.order(), 0);
  for (std::size_t k = 0; k < p.order(); ++k) phi_of[p.elements()[k]] = phi.images[k];

  auto orbits_for = [&](bool twisted) {
    std::vector<CosetOrbit> out;
    for (std::size_t i = 0; i < orbits_.size(); ++i) {
      const EmbeddingOrbit& o = orbits_[i];
      std::vector<char> seen(o.index(), 0);
      for (uint32_t j0 = 0; j0 < o.index(); ++j0) {
        if (seen[j0]) continue;
        CosetOrbit co;
        co.type = i;
        co.base = j0;
        seen[j0] = 1;
        co.members.emplace_back(j0, g.identity(), g.identity());
        for (std::size_t t = 0; t < co.members.size(); ++t) {
          const auto [j, u, c] = co.members[t];
          for (Elem h : p.generators()) {
            const auto [j2, c2] = act(i, twisted ? phi_of[h] : h, j, c);
            if (!seen[j2]) {
              seen[j2] = 1;
              co.members.emplace_back(j2, g.mul(h, u), c2);
            }
          }
        }
        std::vector<Elem> r;
        const Elem tb = o.reps[j0];
        for (Elem u : p.elements()) {
          const Elem a = twisted ? phi_of[u] : u;
          if (o.coset_of[g.mul(a, tb)] == j0) r.push_back(u);
        }
        const std::size_t rid = L.id_of(closure(g, r));
        const Subgroup& rs = L[rid];
        co.stabilizer = Morphism{rid, std::vector<Elem>(rs.order())};
        for (std::size_t k = 0; k < rs.order(); ++k) {
          const Elem a = twisted ? phi_of[rs.elements()[k]] : rs.elements()[k];
          co.stabilizer.images[k] = o.phi_table[g.mul(g.inv(tb), g.mul(a, tb))];
        }
        out.push_back(std::move(co));
      }
    }
    return out;
  };

  std::map<Morphism, CanonicalForm> memo;
  auto canonical = [&](const Morphism& d) -> const CanonicalForm& {
    auto it = memo.find(d);
    if (it != memo.end()) return it->second;
    const Subgroup& r = L[d.source];
    CanonicalForm best;
    bool have = false;
    for (Elem x : p.elements()) {
      const std::size_t xr = L.id_of(conjugate(g, r, x));
      const Subgroup& t = L[xr];
      std::vector<uint32_t> slot(r.order());
      for (std::size_t k = 0; k < r.order(); ++k) slot[k] = static_cast<uint32_t>(t.position(g.conj(x, r.elements()[k])));
      for (Elem y = 0; y < g.order(); ++y) {
        Morphism m{xr, std::vector<Elem>(t.order())};
        for (std::size_t k = 0; k < r.order(); ++k) m.images[slot[k]] = g.conj(y, d.images[k]);
        if (!have || m < best.key) {
          best = {std::move(m), x, y};
          have = true;
        }
      }
    }
    return memo.emplace(d, std::move(best)).first->second;
  };

  const auto dom = orbits_for(false);
  const auto cod = orbits_for(true);
  // Copies of an orbit type share their coset orbits; expand by multiplicity.
  std::map<Morphism, std::vector<std::pair<std::size_t, std::uint64_t>>> want;
  for (std::size_t a = 0; a < cod.size(); ++a)
    for (std::uint64_t c = 0; c < orbits_[cod[a].type].multiplicity; ++c)
      want[canonical(cod[a].stabilizer).key].emplace_back(a, c);
  std::map<Morphism, std::size_t> used;

  WreathElement w;
  w.base.assign(n_, g.identity());
  w.top.assign(n_, static_cast<uint32_t>(-1));
  for (std::size_t a = 0; a < dom.size(); ++a) {
    const CosetOrbit& da = dom[a];
    const CanonicalForm& fa = canonical(da.stabilizer);
    for (std::uint64_t ca = 0; ca < orbits_[da.type].multiplicity; ++ca) {
      auto it = want.find(fa.key);
      std::size_t& next = used[fa.key];
      if (it == want.end() || next >= it->second.size())
        throw DomainError("witness: orbit types of the twisted and untwisted bisets differ");
      const auto [b, cb] = it->second[next++];
      const CosetOrbit& db = cod[b];
      const CanonicalForm& fb = canonical(db.stabilizer);
      // D_b = (x, y) D_a (x, y)^-1 and the image of the base point of a is
      // (x, y)^-1 applied to the base point of b.
      const Elem x = g.mul(g.inv(fb.x), fa.x);
      const Elem y = g.mul(g.inv(fb.y), fa.y);
      auto [k, d] = act(db.type, phi_of[g.inv(x)], db.base, g.identity());
      d = g.mul(d, y);
      const std::size_t off_a = orbits_[da.type].offset + ca * orbits_[da.type].index();
      const std::size_t off_b = orbits_[db.type].offset + cb * orbits_[db.type].index();
      for (const auto& [j, u, c] : da.members) {
        const auto [k2, d2] = act(db.type, phi_of[u], k, d);
        const std::size_t src = off_a + j, tgt = off_b + k2;
        w.top[src] = static_cast<uint32_t>(tgt);
        w.base[tgt] = g.mul(d2, g.inv(c));
      }
    }
  }
  return w;
}

bool BisetEmbedding::verify_witness(const Morphism& phi, const WreathElement& g) const {
  const FiniteGroup& s = group();
  if (g.degree() != n_ || g.base.size() != n_) return false;
  std::vector<char> hit(n_, 0);
  for (uint32_t t : g.top) {
    if (t >= n_ || hit[t]) return false;
    hit[t] = 1;
  }
  for (uint32_t b : g.base)
    if (b >= s.order()) return false;
  const Subgroup& p = lattice()[phi.source];
  for (Elem h : p.generators()) {
    const Elem ph = phi.images[p.position(h)];
    if (wreath_multiply(s, g, iota(h)) != wreath_multiply(s, iota(ph), g)) return false;
  }
  return true;
}

EmbeddingReport verify_embedding(const BisetEmbedding& pe, const Subgroup& qf, std::size_t exhaustive_limit) {
  const FiniteGroup& g = pe.group();
  EmbeddingReport r;
  std::vector<WreathElement> img;
  img.reserve(g.order());
  for (Elem u = 0; u < g.order(); ++u) img.push_back(pe.iota(u));
  std::vector<Elem> right;
  if (g.order() <= exhaustive_limit) {
    for (Elem v = 0; v < g.order(); ++v) right.push_back(v);
  } else {
    right = whole_group(g).generators();
  }
  // Multiplicativity against a generating set already forces a homomorphism.
  for (Elem u = 0; u < g.order() && r.homomorphism; ++u)
    for (Elem v : right)
      if (wreath_multiply(g, img[u], img[v]) != img[g.mul(u, v)]) {
        r.homomorphism = false;
        r.failure = "iota(u) iota(v) != iota(uv) for u = " + std::to_string(u) + ", v = " + std::to_string(v);
        break;
      }
  std::vector<WreathElement> sorted = img;
  std::sort(sorted.begin(), sorted.end(), [](const WreathElement& a, const WreathElement& b) {
    return std::tie(a.top, a.base) < std::tie(b.top, b.base);
  });
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
    r.injective = false;
    if (r.failure.empty()) r.failure = "iota is not injective";
  }
  const bool qf_trivial = qf.order() == 1;
  for (Elem u = 0; u < g.order(); ++u) {
    if (!top_projection(img[u]).is_identity()) continue;
    if (!qf.contains(u)) {
      r.trivial_top_in_QF = false;
      if (r.failure.empty()) r.failure = "an element outside Q(F) acts trivially on the slots";
    }
    if (qf_trivial && u != g.identity()) {
      r.base_intersection_trivial = false;
      if (r.failure.empty()) r.failure = "iota(S) meets the base group nontrivially";
    }
  }
  return r;
}

}  // namespace automizer
