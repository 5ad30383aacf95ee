#include "automizer/group.hpp"

#include <algorithm>
#include <numeric>

#include "automizer/errors.hpp"
#include "automizer/kernels.hpp"

namespace automizer {

FiniteGroup::FiniteGroup(std::size_t order, std::vector<uint32_t> mul, bool check_associativity)
    : order_(order), mul_(std::move(mul)) {
  if (order_ == 0) throw DomainError("group of order 0");
  if (mul_.size() != order_ * order_) throw DomainError("multiplication table has wrong size");
  for (uint32_t v : mul_)
    if (v >= order_) throw DomainError("multiplication table entry out of range");
  bool found = false;
  for (std::size_t e = 0; e < order_ && !found; ++e) {
    bool ok = true;
    for (std::size_t x = 0; x < order_ && ok; ++x)
      ok = mul_[e * order_ + x] == x && mul_[x * order_ + e] == x;
    if (ok) {
      identity_ = static_cast<Elem>(e);
      found = true;
    }
  }
  if (!found) throw DomainError("multiplication table has no identity");
  // Latin square rows/columns give unique inverses.
  inv_.assign(order_, static_cast<uint32_t>(order_));
  for (std::size_t x = 0; x < order_; ++x) {
    std::vector<char> row(order_, 0), col(order_, 0);
    for (std::size_t y = 0; y < order_; ++y) {
      if (row[mul_[x * order_ + y]]++ || col[mul_[y * order_ + x]]++)
        throw DomainError("multiplication table is not a Latin square");
      if (mul_[x * order_ + y] == identity_) inv_[x] = static_cast<uint32_t>(y);
    }
  }
  if (check_associativity) {
    for (std::size_t a = 0; a < order_; ++a)
      for (std::size_t b = 0; b < order_; ++b)
        for (std::size_t c = 0; c < order_; ++c)
          if (this->mul(this->mul(Elem(a), Elem(b)), Elem(c)) != this->mul(Elem(a), this->mul(Elem(b), Elem(c))))
            throw DomainError("multiplication table is not associative");
  }
  orders_.resize(order_);
  for (std::size_t x = 0; x < order_; ++x) {
    std::size_t k = 1;
    for (Elem y = Elem(x); y != identity_; y = this->mul(y, Elem(x))) ++k;
    orders_[x] = k;
  }
}

Elem FiniteGroup::pow(Elem x, long long k) const {
  std::size_t o = orders_[x];
  long long r = k % static_cast<long long>(o);
  if (r < 0) r += static_cast<long long>(o);
  Elem acc = identity_;
  for (long long i = 0; i < r; ++i) acc = mul(acc, x);
  return acc;
}

std::size_t FiniteGroup::exponent() const {
  std::size_t e = 1;
  for (std::size_t o : orders_) e = std::lcm(e, o);
  return e;
}

// ---------------------------------------------------------------------------

Subgroup::Subgroup(const FiniteGroup& g, std::vector<Elem> elements, std::vector<Elem> generators)
    : bits_(g.words(), 0), elements_(std::move(elements)), generators_(std::move(generators)) {
  std::sort(elements_.begin(), elements_.end());
  for (Elem x : elements_) bits_[x >> 6] |= uint64_t{1} << (x & 63);
}

std::size_t Subgroup::position(Elem x) const {
  auto it = std::lower_bound(elements_.begin(), elements_.end(), x);
  if (it == elements_.end() || *it != x) throw DomainError("element not in subgroup");
  return static_cast<std::size_t>(it - elements_.begin());
}

bool Subgroup::is_subgroup_of(const Subgroup& other) const {
  if (order() > other.order() || bits_.size() != other.bits_.size()) return false;
  return kernels::bits_subset(bits_, other.bits_);
}

bool canonical_less(const Subgroup& a, const Subgroup& b) {
  if (a.order() != b.order()) return a.order() < b.order();
  return a.elements() < b.elements();
}

namespace {

// Closes `elements` (already containing the identity) under right
// multiplication by gens.
std::vector<Elem> close_up(const FiniteGroup& g, std::vector<Elem> elements,
                           std::span<const Elem> gens) {
  std::vector<char> in(g.order(), 0);
  for (Elem x : elements) in[x] = 1;
  for (std::size_t k = 0; k < elements.size(); ++k)
    for (Elem s : gens) {
      Elem y = g.mul(elements[k], s);
      if (!in[y]) {
        in[y] = 1;
        elements.push_back(y);
      }
    }
  return elements;
}

}  // namespace

Subgroup closure(const FiniteGroup& g, std::span<const Elem> generators) {
  std::vector<Elem> kept;
  std::vector<Elem> elems{g.identity()};
  std::vector<char> in(g.order(), 0);
  in[g.identity()] = 1;
  for (Elem s : generators) {
    if (s >= g.order()) throw DomainError("generator out of range");
    if (in[s]) continue;
    kept.push_back(s);
    elems = close_up(g, std::move(elems), kept);
    for (Elem x : elems) in[x] = 1;
  }
  return Subgroup(g, std::move(elems), std::move(kept));
}

Subgroup trivial_subgroup(const FiniteGroup& g) { return Subgroup(g, {g.identity()}, {}); }

Subgroup whole_group(const FiniteGroup& g) {
  std::vector<Elem> all(g.order());
  std::iota(all.begin(), all.end(), 0u);
  std::vector<Elem> gens = small_generating_set(g, Subgroup(g, all, {}));
  return Subgroup(g, std::move(all), std::move(gens));
}

Subgroup join(const FiniteGroup& g, const Subgroup& a, const Subgroup& b) {
  if (b.is_subgroup_of(a)) return a;
  if (a.is_subgroup_of(b)) return b;
  std::vector<Elem> gens = a.generators();
  std::vector<Elem> extra;
  for (Elem x : b.generators())
    if (!a.contains(x)) extra.push_back(x);
  std::vector<Elem> all = gens;
  all.insert(all.end(), extra.begin(), extra.end());
  std::vector<Elem> elems = close_up(g, a.elements(), all);
  return Subgroup(g, std::move(elems), std::move(all));
}

Subgroup intersect(const FiniteGroup& g, const Subgroup& a, const Subgroup& b) {
  std::vector<uint64_t> w(a.bits().size());
  kernels::bits_and(a.bits(), b.bits(), w);
  std::vector<Elem> elems;
  for (Elem x : a.elements())
    if ((w[x >> 6] >> (x & 63)) & 1u) elems.push_back(x);
  return Subgroup(g, elems, small_generating_set(g, Subgroup(g, elems, {})));
}

Subgroup conjugate(const FiniteGroup& g, const Subgroup& h, Elem x) {
  std::vector<Elem> elems, gens;
  for (Elem y : h.elements()) elems.push_back(g.conj(x, y));
  for (Elem y : h.generators()) gens.push_back(g.conj(x, y));
  return Subgroup(g, std::move(elems), std::move(gens));
}

Subgroup normalizer(const FiniteGroup& g, const Subgroup& h) {
  std::vector<Elem> elems;
  for (Elem x = 0; x < g.order(); ++x) {
    bool ok = true;
    for (Elem s : h.generators())
      if (!h.contains(g.conj(x, s))) {
        ok = false;
        break;
      }
    if (ok) elems.push_back(x);
  }
  return Subgroup(g, elems, small_generating_set(g, Subgroup(g, elems, {})));
}

Subgroup centralizer(const FiniteGroup& g, const Subgroup& h) {
  std::vector<Elem> elems;
  for (Elem x = 0; x < g.order(); ++x) {
    bool ok = true;
    for (Elem s : h.generators())
      if (g.mul(x, s) != g.mul(s, x)) {
        ok = false;
        break;
      }
    if (ok) elems.push_back(x);
  }
  return Subgroup(g, elems, small_generating_set(g, Subgroup(g, elems, {})));
}

Subgroup center(const FiniteGroup& g) { return centralizer(g, whole_group(g)); }

Subgroup commutator_subgroup(const FiniteGroup& g, const Subgroup& a, const Subgroup& b) {
  std::vector<Elem> comms;
  for (Elem x : a.elements())
    for (Elem y : b.elements()) comms.push_back(g.commutator(x, y));
  std::sort(comms.begin(), comms.end());
  comms.erase(std::unique(comms.begin(), comms.end()), comms.end());
  return closure(g, comms);
}

Subgroup derived_subgroup(const FiniteGroup& g) {
  Subgroup w = whole_group(g);
  return commutator_subgroup(g, w, w);
}

bool is_normal(const FiniteGroup& g, const Subgroup& h) {
  for (Elem x = 0; x < g.order(); ++x)
    for (Elem s : h.generators())
      if (!h.contains(g.conj(x, s))) return false;
  return true;
}

bool is_abelian(const FiniteGroup& g, const Subgroup& h) {
  const auto& gens = h.generators();
  for (std::size_t i = 0; i < gens.size(); ++i)
    for (std::size_t j = i + 1; j < gens.size(); ++j)
      if (g.mul(gens[i], gens[j]) != g.mul(gens[j], gens[i])) return false;
  return true;
}

std::size_t exponent(const FiniteGroup& g, const Subgroup& h) {
  std::size_t e = 1;
  for (Elem x : h.elements()) e = std::lcm(e, g.element_order(x));
  return e;
}

bool is_homocyclic_rank2(const FiniteGroup& g, const Subgroup& h, std::size_t e) {
  if (e < 2 || h.order() != e * e || !is_abelian(g, h) || exponent(g, h) != e) return false;
  std::size_t m = e;
  for (std::size_t p = 2; p <= m; ++p) {
    if (m % p) continue;
    while (m % p == 0) m /= p;
    std::size_t omega = 0;
    for (Elem x : h.elements())
      if (g.pow(x, static_cast<long long>(p)) == g.identity()) ++omega;
    if (omega != p * p) return false;
  }
  return true;
}

std::optional<std::pair<Elem, Elem>> generating_pair(const FiniteGroup& g, const Subgroup& h) {
  for (Elem x : h.elements())
    for (Elem y : h.elements()) {
      Elem pair[2] = {x, y};
      if (closure(g, pair).order() == h.order()) return std::make_pair(x, y);
    }
  return std::nullopt;
}

std::vector<Elem> small_generating_set(const FiniteGroup& g, const Subgroup& h) {
  std::vector<Elem> gens;
  std::vector<Elem> elems{g.identity()};
  std::vector<char> in(g.order(), 0);
  in[g.identity()] = 1;
  for (Elem x : h.elements()) {
    if (in[x]) continue;
    gens.push_back(x);
    elems = close_up(g, std::move(elems), gens);
    for (Elem y : elems) in[y] = 1;
    if (elems.size() == h.order()) break;
  }
  return gens;
}

// ---------------------------------------------------------------------------

SubgroupLattice::SubgroupLattice(std::shared_ptr<const FiniteGroup> gp, std::size_t max_subgroups)
    : group_(std::move(gp)) {
  const FiniteGroup& g = *group_;
  std::vector<Subgroup> found;
  std::map<std::vector<uint64_t>, std::size_t> seen;
  auto add = [&](Subgroup s) -> bool {
    if (seen.count(s.bits())) return false;
    if (found.size() >= max_subgroups)
      throw ScaleError("max_subgroups", "more than " + std::to_string(max_subgroups) + " subgroups");
    seen.emplace(s.bits(), found.size());
    found.push_back(std::move(s));
    return true;
  };
  add(trivial_subgroup(g));
  std::vector<Subgroup> cyclics;
  {
    std::map<std::vector<uint64_t>, std::size_t> cseen;
    for (Elem x = 0; x < g.order(); ++x) {
      if (x == g.identity()) continue;
      Elem gen[1] = {x};
      Subgroup c = closure(g, gen);
      if (cseen.emplace(c.bits(), cyclics.size()).second) cyclics.push_back(std::move(c));
    }
  }
  for (std::size_t k = 0; k < found.size(); ++k) {
    for (const auto& c : cyclics) {
      if (c.is_subgroup_of(found[k])) continue;
      Subgroup j = join(g, found[k], c);
      add(std::move(j));
    }
  }
  std::vector<std::size_t> order(found.size());
  std::iota(order.begin(), order.end(), 0u);
  std::sort(order.begin(), order.end(),
            [&](std::size_t a, std::size_t b) { return canonical_less(found[a], found[b]); });
  subs_.reserve(found.size());
  for (std::size_t id : order) {
    // Regenerate with canonical generators so results do not depend on the
    // discovery path.
    Subgroup& s = found[id];
    std::vector<Elem> gens = small_generating_set(g, s);
    subs_.emplace_back(g, s.elements(), std::move(gens));
  }
  for (std::size_t i = 0; i < subs_.size(); ++i) index_.emplace(subs_[i].bits(), i);
  cyclic_.assign(g.order(), 0);
  for (Elem x = 0; x < g.order(); ++x) {
    Elem gen[1] = {x};
    cyclic_[x] = index_.at(closure(g, gen).bits());
  }
  below_.resize(subs_.size());
  for (std::size_t i = 0; i < subs_.size(); ++i)
    for (std::size_t j = 0; j <= i; ++j)
      if (subs_[j].order() <= subs_[i].order() && subs_[i].order() % subs_[j].order() == 0 &&
          subs_[j].is_subgroup_of(subs_[i]))
        below_[i].push_back(j);
}

std::optional<std::size_t> SubgroupLattice::find(const Subgroup& h) const {
  auto it = index_.find(h.bits());
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

std::size_t SubgroupLattice::id_of(const Subgroup& h) const {
  auto id = find(h);
  if (!id) throw DomainError("not a subgroup of the ambient group");
  return *id;
}

}  // namespace automizer
