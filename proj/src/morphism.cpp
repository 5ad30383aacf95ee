#include "automizer/morphism.hpp"

#include <algorithm>
#include <functional>

#include "automizer/errors.hpp"

namespace automizer {

std::size_t MorphismHash::operator()(const Morphism& m) const noexcept {
  uint64_t h = 1469598103934665603ULL ^ m.source;
  for (Elem x : m.images) {
    h ^= x;
    h *= 1099511628211ULL;
  }
  return static_cast<std::size_t>(h);
}

Elem apply(const SubgroupLattice& lat, const Morphism& phi, Elem x) {
  return phi.images[lat[phi.source].position(x)];
}

std::size_t image_id(const SubgroupLattice& lat, const Morphism& phi) {
  Subgroup img(lat.group(), phi.images, {});
  return lat.id_of(img);
}

Morphism identity_morphism(const SubgroupLattice& lat, std::size_t source) {
  return Morphism{source, lat[source].elements()};
}

Morphism conjugation(const SubgroupLattice& lat, std::size_t source, Elem s) {
  Morphism m{source, {}};
  m.images.reserve(lat[source].order());
  for (Elem x : lat[source].elements()) m.images.push_back(lat.group().conj(s, x));
  return m;
}

Morphism compose(const SubgroupLattice& lat, const Morphism& psi, const Morphism& phi) {
  const Subgroup& mid = lat[psi.source];
  Morphism m{phi.source, {}};
  m.images.reserve(phi.images.size());
  for (Elem y : phi.images) {
    if (!mid.contains(y)) throw DomainError("composition: image not inside the next source");
    m.images.push_back(psi.images[mid.position(y)]);
  }
  return m;
}

Morphism restrict(const SubgroupLattice& lat, const Morphism& phi, std::size_t sub) {
  const Subgroup& src = lat[phi.source];
  Morphism m{sub, {}};
  m.images.reserve(lat[sub].order());
  for (Elem x : lat[sub].elements()) {
    if (!src.contains(x)) throw DomainError("restriction to a non-subgroup of the source");
    m.images.push_back(phi.images[src.position(x)]);
  }
  return m;
}

Morphism inverse(const SubgroupLattice& lat, const Morphism& phi) {
  std::size_t img = image_id(lat, phi);
  const Subgroup& src = lat[phi.source];
  const Subgroup& tgt = lat[img];
  Morphism m{img, std::vector<Elem>(tgt.order())};
  for (std::size_t k = 0; k < src.order(); ++k) m.images[tgt.position(phi.images[k])] = src.elements()[k];
  return m;
}

std::optional<Morphism> from_generator_images(const SubgroupLattice& lat, std::size_t source,
                                              const std::vector<Elem>& gens,
                                              const std::vector<Elem>& images) {
  const FiniteGroup& g = lat.group();
  const Subgroup& src = lat[source];
  if (gens.size() != images.size()) return std::nullopt;
  constexpr Elem kUnset = ~Elem{0};
  std::vector<Elem> map(src.order(), kUnset);
  map[src.position(g.identity())] = g.identity();
  std::vector<Elem> queue{g.identity()};
  for (std::size_t k = 0; k < queue.size(); ++k) {
    Elem x = queue[k];
    Elem fx = map[src.position(x)];
    for (std::size_t i = 0; i < gens.size(); ++i) {
      if (!src.contains(gens[i])) return std::nullopt;
      Elem y = g.mul(x, gens[i]);
      Elem fy = g.mul(fx, images[i]);
      Elem& slot = map[src.position(y)];
      if (slot == kUnset) {
        slot = fy;
        queue.push_back(y);
      } else if (slot != fy) {
        return std::nullopt;
      }
    }
  }
  if (queue.size() != src.order()) return std::nullopt;
  Morphism m{source, std::move(map)};
  std::vector<Elem> sorted = m.images;
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) return std::nullopt;
  return m;
}

bool is_injective_homomorphism(const SubgroupLattice& lat, const Morphism& phi) {
  const FiniteGroup& g = lat.group();
  const Subgroup& src = lat[phi.source];
  if (phi.images.size() != src.order()) return false;
  std::vector<Elem> sorted = phi.images;
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) return false;
  for (Elem x : sorted)
    if (x >= g.order()) return false;
  const auto& el = src.elements();
  for (std::size_t i = 0; i < el.size(); ++i)
    for (Elem s : src.generators())
      if (phi.images[src.position(g.mul(el[i], s))] != g.mul(phi.images[i], apply(lat, phi, s)))
        return false;
  return true;
}

std::vector<Morphism> automorphisms_of(const SubgroupLattice& lat, std::size_t v) {
  const FiniteGroup& g = lat.group();
  const Subgroup& sub = lat[v];
  const std::vector<Elem>& gens = sub.generators();
  std::vector<std::vector<Elem>> candidates(gens.size());
  for (std::size_t i = 0; i < gens.size(); ++i)
    for (Elem y : sub.elements())
      if (g.element_order(y) == g.element_order(gens[i])) candidates[i].push_back(y);
  std::vector<Morphism> out;
  std::vector<Elem> pick(gens.size());
  std::function<void(std::size_t)> rec = [&](std::size_t i) {
    if (i == gens.size()) {
      auto m = from_generator_images(lat, v, gens, pick);
      if (m && image_id(lat, *m) == v) out.push_back(std::move(*m));
      return;
    }
    for (Elem y : candidates[i]) {
      pick[i] = y;
      rec(i + 1);
    }
  };
  rec(0);
  std::sort(out.begin(), out.end());
  auto id = identity_morphism(lat, v);
  auto it = std::find(out.begin(), out.end(), id);
  if (it != out.end()) std::rotate(out.begin(), it, it + 1);
  return out;
}

}  // namespace automizer
