#include "automizer/fusion.hpp"

#include <algorithm>
#include <numeric>

#include "automizer/errors.hpp"

namespace automizer {

FusionSystem FusionSystem::generate(std::shared_ptr<const SubgroupLattice> lat,
                                    const std::vector<Morphism>& gens, std::size_t max_morphisms) {
  const SubgroupLattice& L = *lat;
  const FiniteGroup& g = L.group();
  for (const auto& m : gens)
    if (m.source >= L.size() || !is_injective_homomorphism(L, m))
      throw DomainError("fusion generator is not an injective homomorphism");

  std::vector<Morphism> all;
  std::vector<std::size_t> img;
  std::unordered_map<Morphism, MorphId, MorphismHash> index;
  std::vector<std::vector<MorphId>> by_source(L.size()), by_image(L.size());
  std::vector<MorphId> queue;

  auto add = [&](Morphism m) {
    if (index.count(m)) return;
    if (all.size() >= max_morphisms)
      throw ScaleError("max_morphisms", "fusion closure exceeds " + std::to_string(max_morphisms) + " morphisms");
    const MorphId id = all.size();
    const std::size_t im = image_id(L, m);
    by_source[m.source].push_back(id);
    by_image[im].push_back(id);
    img.push_back(im);
    index.emplace(m, id);
    all.push_back(std::move(m));
    queue.push_back(id);
  };

  for (std::size_t p = 0; p < L.size(); ++p)
    for (Elem s = 0; s < g.order(); ++s) add(conjugation(L, p, s));
  for (const auto& m : gens) {
    add(m);
    add(inverse(L, m));
  }
  for (std::size_t k = 0; k < queue.size(); ++k) {
    const MorphId id = queue[k];
    const std::size_t src = all[id].source;
    for (std::size_t r : L.subgroups_of(src))
      if (r != src) add(restrict(L, all[id], r));
    const std::size_t im = img[id];
    for (std::size_t t = 0; t < by_source[im].size(); ++t) {
      const MorphId psi = by_source[im][t];
      add(compose(L, all[psi], all[id]));
    }
    for (std::size_t t = 0; t < by_image[src].size(); ++t) {
      const MorphId chi = by_image[src][t];
      add(compose(L, all[id], all[chi]));
    }
  }

  // Renumber canonically.
  std::vector<MorphId> order(all.size());
  std::iota(order.begin(), order.end(), MorphId{0});
  std::sort(order.begin(), order.end(), [&](MorphId a, MorphId b) { return all[a] < all[b]; });
  FusionSystem f;
  f.lat_ = std::move(lat);
  f.gens_ = gens;
  f.store_.reserve(all.size());
  f.image_.reserve(all.size());
  f.by_source_.assign(L.size(), {});
  f.by_image_.assign(L.size(), {});
  for (MorphId old : order) {
    const MorphId id = f.store_.size();
    f.by_source_[all[old].source].push_back(id);
    f.by_image_[img[old]].push_back(id);
    f.image_.push_back(img[old]);
    f.store_.push_back(std::move(all[old]));
  }
  for (MorphId id = 0; id < f.store_.size(); ++id) f.index_.emplace(f.store_[id], id);

  f.extendable_.assign(f.store_.size(), 0);
  for (MorphId id = 0; id < f.store_.size(); ++id) {
    const std::size_t src = f.store_[id].source;
    for (std::size_t r : L.subgroups_of(src))
      if (r != src) f.extendable_[f.id_of(restrict(L, f.store_[id], r))] = 1;
  }
  return f;
}

std::optional<MorphId> FusionSystem::find(const Morphism& m) const {
  auto it = index_.find(m);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

MorphId FusionSystem::id_of(const Morphism& m) const {
  auto id = find(m);
  if (!id) throw DomainError("morphism is not in the fusion system");
  return *id;
}

std::vector<MorphId> FusionSystem::hom_set(std::size_t p, std::size_t q) const {
  if (p >= lat_->size() || q >= lat_->size()) throw DomainError("hom_set: subgroup id out of range");
  std::vector<MorphId> out;
  for (MorphId id : by_source_[p])
    if ((*lat_)[image_[id]].is_subgroup_of((*lat_)[q])) out.push_back(id);
  return out;
}

std::vector<MorphId> FusionSystem::aut(std::size_t p) const {
  std::vector<MorphId> out;
  for (MorphId id : by_source_[p])
    if (image_[id] == p) out.push_back(id);
  return out;
}

MorphId FusionSystem::identity(std::size_t p) const { return id_of(identity_morphism(*lat_, p)); }

MorphId FusionSystem::restriction(MorphId id, std::size_t sub) const {
  return id_of(restrict(*lat_, store_[id], sub));
}

MorphId FusionSystem::compose_ids(MorphId psi, MorphId phi) const {
  const Morphism& a = store_[psi];
  const std::size_t im = image_[phi];
  if (a.source == im) return id_of(compose(*lat_, a, store_[phi]));
  return id_of(compose(*lat_, restrict(*lat_, a, im), store_[phi]));
}

MorphId FusionSystem::inverse_id(MorphId id) const { return id_of(inverse(*lat_, store_[id])); }

QFResult compute_QF(const FusionSystem& f) {
  const SubgroupLattice& L = f.lattice();
  QFResult r;
  std::vector<char> in(L.size(), 0);
  for (MorphId id = 0; id < f.size(); ++id)
    if (f.is_nonextendable(id)) in[f.source(id)] = 1;
  Subgroup acc = whole_group(L.group());
  for (std::size_t p = 0; p < L.size(); ++p)
    if (in[p]) {
      r.family.push_back(p);
      acc = intersect(L.group(), acc, L[p]);
    }
  r.subgroup = L.id_of(acc);
  return r;
}

std::size_t compute_OSF(const FusionSystem& f) {
  const SubgroupLattice& L = f.lattice();
  const FiniteGroup& g = L.group();
  for (std::size_t cand = L.size(); cand-- > 0;) {
    const Subgroup& n = L[cand];
    if (!is_normal(g, n)) continue;
    bool ok = true;
    for (MorphId id = 0; id < f.size() && ok; ++id) {
      const std::size_t p = f.source(id);
      const std::size_t pn = L.id_of(join(g, L[p], n));
      bool extended = false;
      for (MorphId psi : f.from(pn)) {
        const Morphism& m = f.morphism(psi);
        bool maps_n = true;
        for (Elem x : n.generators())
          if (!n.contains(apply(L, m, x))) {
            maps_n = false;
            break;
          }
        if (!maps_n) continue;
        if (pn == p ? psi == id : f.restriction(psi, p) == id) {
          extended = true;
          break;
        }
      }
      ok = extended;
    }
    if (ok) return cand;
  }
  return L.trivial();
}

std::size_t focal_subgroup(const FusionSystem& f) {
  const SubgroupLattice& L = f.lattice();
  const FiniteGroup& g = L.group();
  std::vector<char> mark(g.order(), 0);
  std::vector<Elem> gens;
  for (Elem s = 0; s < g.order(); ++s)
    for (MorphId id : f.from(L.cyclic(s))) {
      Elem c = g.mul(apply(L, f.morphism(id), s), g.inv(s));
      if (!mark[c]) {
        mark[c] = 1;
        gens.push_back(c);
      }
    }
  std::sort(gens.begin(), gens.end());
  return L.id_of(closure(g, gens));
}

bool delta_less(const FusionSystem& f, MorphId a, MorphId b) {
  const SubgroupLattice& L = f.lattice();
  const auto& ea = L[f.source(a)].elements();
  const auto& eb = L[f.source(b)].elements();
  const auto& ia = f.morphism(a).images;
  const auto& ib = f.morphism(b).images;
  const std::size_t n = std::min(ea.size(), eb.size());
  for (std::size_t k = 0; k < n; ++k) {
    if (ea[k] != eb[k]) return ea[k] < eb[k];
    if (ia[k] != ib[k]) return ia[k] < ib[k];
  }
  return ea.size() < eb.size();
}

std::vector<MorphId> fprime_orbit(const FusionSystem& f, MorphId d) {
  const SubgroupLattice& L = f.lattice();
  const FiniteGroup& g = L.group();
  const std::size_t p = f.source(d);
  const Subgroup& src = L[p];
  const Morphism& phi = f.morphism(d);
  std::vector<MorphId> out;
  for (MorphId psi : f.from(p)) {
    const Morphism& ps = f.morphism(psi);
    const std::size_t tgt = f.image(psi);
    const Subgroup& t = L[tgt];
    for (Elem s = 0; s < g.order(); ++s) {
      Morphism m{tgt, std::vector<Elem>(t.order())};
      for (std::size_t k = 0; k < src.order(); ++k) m.images[t.position(ps.images[k])] = g.conj(s, phi.images[k]);
      out.push_back(f.id_of(m));
    }
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  std::sort(out.begin(), out.end(), [&](MorphId a, MorphId b) { return delta_less(f, a, b); });
  return out;
}

std::vector<MorphId> inner_morphisms(const FusionSystem& f, std::size_t p) {
  std::vector<MorphId> out;
  for (Elem s = 0; s < f.group().order(); ++s) out.push_back(f.id_of(conjugation(f.lattice(), p, s)));
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

}  // namespace automizer
