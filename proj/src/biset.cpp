#include "automizer/biset.hpp"

#include <algorithm>
#include <numeric>

#include "automizer/errors.hpp"

namespace automizer {

namespace {

// Counts (x, y) with x^-1 u x ∈ Q and γ(x^-1 u x) = y^-1 φ(u) y for u in the
// generators of P. Stops at the first hit when `any`.
std::uint64_t count_pairs(const SubgroupLattice& lat, const Morphism& orbit, const Morphism& d, bool any) {
  const FiniteGroup& g = lat.group();
  const Subgroup& q = lat[orbit.source];
  const Subgroup& p = lat[d.source];
  if (p.order() > q.order() || q.order() % p.order() != 0) return 0;
  const auto& gens = p.generators();
  std::vector<Elem> want(gens.size()), phi_u(gens.size());
  for (std::size_t k = 0; k < gens.size(); ++k) phi_u[k] = d.images[p.position(gens[k])];
  std::uint64_t count = 0;
  for (Elem x = 0; x < g.order(); ++x) {
    const Elem xi = g.inv(x);
    bool inside = true;
    for (std::size_t k = 0; k < gens.size() && inside; ++k) {
      const Elem w = g.conj(xi, gens[k]);
      if (!q.contains(w)) inside = false;
      else want[k] = orbit.images[q.position(w)];
    }
    if (!inside) continue;
    for (Elem y = 0; y < g.order(); ++y) {
      const Elem yi = g.inv(y);
      bool ok = true;
      for (std::size_t k = 0; k < gens.size() && ok; ++k) ok = g.conj(yi, phi_u[k]) == want[k];
      if (ok) {
        ++count;
        if (any) return count;
      }
    }
  }
  return count;
}

}  // namespace

std::uint64_t marks(const SubgroupLattice& lat, const Morphism& orbit, const Morphism& d) {
  const std::uint64_t pairs = count_pairs(lat, orbit, d, false);
  const std::uint64_t q = lat[orbit.source].order();
  if (pairs % q != 0) throw DomainError("marks: pair count not divisible by |Q|");
  return pairs / q;
}

DiagonalClasses diagonal_classes(const FusionSystem& f) {
  const SubgroupLattice& L = f.lattice();
  const FiniteGroup& g = L.group();
  constexpr std::size_t kNone = static_cast<std::size_t>(-1);
  std::vector<std::size_t> raw(f.size(), kNone);
  std::vector<std::vector<MorphId>> members;
  for (MorphId d = 0; d < f.size(); ++d) {
    if (raw[d] != kNone) continue;
    const std::size_t p = f.source(d);
    const Subgroup& src = L[p];
    const Morphism& phi = f.morphism(d);
    std::vector<MorphId> cls;
    for (Elem x = 0; x < g.order(); ++x) {
      const std::size_t xp = L.id_of(conjugate(g, src, x));
      const Subgroup& t = L[xp];
      for (Elem y = 0; y < g.order(); ++y) {
        Morphism m{xp, std::vector<Elem>(t.order())};
        for (std::size_t k = 0; k < src.order(); ++k)
          m.images[t.position(g.conj(x, src.elements()[k]))] = g.conj(y, phi.images[k]);
        cls.push_back(f.id_of(m));
      }
    }
    std::sort(cls.begin(), cls.end());
    cls.erase(std::unique(cls.begin(), cls.end()), cls.end());
    for (MorphId m : cls) raw[m] = members.size();
    std::sort(cls.begin(), cls.end(), [&](MorphId a, MorphId b) { return delta_less(f, a, b); });
    members.push_back(std::move(cls));
  }
  std::vector<std::size_t> order(members.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    const std::size_t oa = L[f.source(members[a][0])].order();
    const std::size_t ob = L[f.source(members[b][0])].order();
    if (oa != ob) return oa > ob;
    return delta_less(f, members[a][0], members[b][0]);
  });
  DiagonalClasses out;
  std::vector<std::size_t> rename(members.size());
  for (std::size_t k = 0; k < order.size(); ++k) {
    rename[order[k]] = k;
    out.members.push_back(std::move(members[order[k]]));
  }
  out.class_of.resize(f.size());
  for (MorphId d = 0; d < f.size(); ++d) out.class_of[d] = rename[raw[d]];
  return out;
}

MarksTable::MarksTable(const FusionSystem& f, const DiagonalClasses& c)
    : f_(f), c_(c), cache_(c.size(), std::vector<std::int64_t>(c.size(), -1)) {}

std::uint64_t MarksTable::operator()(std::size_t orbit_class, std::size_t d_class) {
  std::int64_t& v = cache_[orbit_class][d_class];
  if (v < 0)
    v = static_cast<std::int64_t>(
        marks(f_.lattice(), f_.morphism(c_.rep(orbit_class)), f_.morphism(c_.rep(d_class))));
  return static_cast<std::uint64_t>(v);
}

std::uint64_t biset_degree(const FusionSystem& f, const std::vector<BisetOrbit>& orbits) {
  const std::uint64_t s = f.group().order();
  std::uint64_t n = 0;
  for (const auto& o : orbits) n += o.multiplicity * (s / f.lattice()[o.q].order());
  return n;
}

std::vector<std::vector<std::size_t>> fprime_classes(const FusionSystem& f, const DiagonalClasses& c) {
  const SubgroupLattice& L = f.lattice();
  std::vector<char> seen(c.size(), 0);
  std::vector<std::pair<MorphId, std::vector<std::size_t>>> found;
  for (std::size_t k = 0; k < c.size(); ++k) {
    if (seen[k] || f.source(c.rep(k)) == L.whole()) continue;
    const auto orbit = fprime_orbit(f, c.rep(k));
    std::vector<std::size_t> classes;
    for (MorphId d : orbit) classes.push_back(c.class_of[d]);
    std::sort(classes.begin(), classes.end());
    classes.erase(std::unique(classes.begin(), classes.end()), classes.end());
    for (std::size_t x : classes) seen[x] = 1;
    found.emplace_back(orbit.front(), std::move(classes));
  }
  std::sort(found.begin(), found.end(), [&](const auto& a, const auto& b) {
    const std::size_t oa = L[f.source(a.first)].order();
    const std::size_t ob = L[f.source(b.first)].order();
    if (oa != ob) return oa > ob;
    return delta_less(f, a.first, b.first);
  });
  std::vector<std::vector<std::size_t>> out;
  for (auto& [rep, classes] : found) out.push_back(std::move(classes));
  return out;
}

Biset build_semicharacteristic(const FusionSystem& f, const DiagonalClasses& c, MarksTable& marks,
                               const BuildOptions& options) {
  const SubgroupLattice& L = f.lattice();
  std::vector<Rational> coef(c.size(), Rational(0));
  for (std::size_t k = 0; k < c.size(); ++k)
    if (f.source(c.rep(k)) == L.whole()) coef[k] = 1;

  auto mark_of = [&](std::size_t d) {
    Rational v = 0;
    for (std::size_t k = 0; k < c.size(); ++k)
      if (coef[k] != 0) v += coef[k] * marks(k, d);
    return v;
  };

  const auto classes = fprime_classes(f, c);
  std::vector<std::vector<std::size_t>> processed;
  for (const auto& cls : classes) {
    std::vector<Rational> current;
    Rational best = 0;
    for (std::size_t d : cls) {
      current.push_back(mark_of(d));
      if (current.back() > best) best = current.back();
    }
    for (std::size_t t = 0; t < cls.size(); ++t) {
      if (current[t] == best) continue;
      coef[cls[t]] += (best - current[t]) / Rational(marks.normalizer_index(cls[t]));
    }
    processed.push_back(cls);
    if (options.on_step) options.on_step(processed, coef);
  }

  using boost::multiprecision::cpp_int;
  cpp_int m = 1;
  for (const auto& r : coef)
    if (r != 0) m = boost::multiprecision::lcm(m, boost::multiprecision::denominator(r));
  Biset x;
  cpp_int n = 0;
  const std::uint64_t s = f.group().order();
  for (std::size_t k = 0; k < c.size(); ++k) {
    if (coef[k] == 0) continue;
    const Rational scaled = coef[k] * Rational(m);
    const cpp_int mult = boost::multiprecision::numerator(scaled);
    n += mult * (s / L[f.source(c.rep(k))].order());
    if (n > options.max_n)
      throw ScaleError("max_n", "biset degree exceeds " + std::to_string(options.max_n));
    x.orbits.push_back({f.source(c.rep(k)), c.rep(k), mult.convert_to<std::uint64_t>()});
  }
  x.m = m.convert_to<std::uint64_t>();
  x.n = n.convert_to<std::uint64_t>();
  return x;
}

Biset build_semicharacteristic(const FusionSystem& f, const BuildOptions& options) {
  const DiagonalClasses c = diagonal_classes(f);
  MarksTable marks(f, c);
  return build_semicharacteristic(f, c, marks, options);
}

std::vector<std::uint64_t> biset_marks(const Biset& x, const DiagonalClasses& c, MarksTable& marks) {
  std::vector<std::uint64_t> out(c.size(), 0);
  for (const auto& o : x.orbits) {
    const std::size_t oc = c.class_of[o.phi];
    for (std::size_t d = 0; d < c.size(); ++d) out[d] += o.multiplicity * marks(oc, d);
  }
  return out;
}

CheckReport verify_generated(const Biset& x, const FusionSystem& f) {
  const SubgroupLattice& L = f.lattice();
  CheckReport r;
  if (x.orbits.empty() || x.orbits[0].q != L.whole() || x.orbits[0].phi != f.identity(L.whole())) {
    r.ok = false;
    r.failure = "orbit 0 is not (S, id)";
    return r;
  }
  for (std::size_t i = 0; i < x.orbits.size(); ++i) {
    ++r.checked;
    const auto& o = x.orbits[i];
    if (o.phi >= f.size() || f.source(o.phi) != o.q || o.multiplicity == 0) {
      r.ok = false;
      r.failure = "orbit " + std::to_string(i) + " is not an F-orbit with positive multiplicity";
      return r;
    }
  }
  if (biset_degree(f, x.orbits) != x.n) {
    r.ok = false;
    r.failure = "recorded degree does not match the orbits";
  }
  return r;
}

std::vector<Morphism> injective_homomorphisms(const SubgroupLattice& lat, std::size_t p) {
  const FiniteGroup& g = lat.group();
  const auto& gens = lat[p].generators();
  std::vector<Morphism> out;
  std::vector<Elem> images(gens.size());
  auto rec = [&](auto&& self, std::size_t k) -> void {
    if (k == gens.size()) {
      if (auto m = from_generator_images(lat, p, gens, images)) out.push_back(std::move(*m));
      return;
    }
    for (Elem y = 0; y < g.order(); ++y) {
      if (g.element_order(y) != g.element_order(gens[k])) continue;
      images[k] = y;
      self(self, k + 1);
    }
  };
  rec(rec, 0);
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

CheckReport verify_stability(const Biset& x, const FusionSystem& f, const DiagonalClasses& c,
                             MarksTable& marks, bool exhaustive) {
  const SubgroupLattice& L = f.lattice();
  CheckReport r;
  const auto mx = biset_marks(x, c, marks);
  for (std::size_t p = 0; p < L.size() && r.ok; ++p) {
    const Subgroup& src = L[p];
    const auto homs = f.from(p);
    for (MorphId chi : homs) {
      for (MorphId phi : homs) {
        ++r.checked;
        const std::size_t tgt = f.image(phi);
        const Subgroup& t = L[tgt];
        Morphism m{tgt, std::vector<Elem>(t.order())};
        for (std::size_t k = 0; k < src.order(); ++k)
          m.images[t.position(f.morphism(phi).images[k])] = f.morphism(chi).images[k];
        const MorphId moved = f.id_of(m);
        if (mx[c.class_of[chi]] != mx[c.class_of[moved]]) {
          r.ok = false;
          r.failure = "marks differ on Delta(P, chi) and its image under phi: P = subgroup " +
                      std::to_string(p) + ", chi = morphism " + std::to_string(chi) +
                      ", phi = morphism " + std::to_string(phi);
          return r;
        }
      }
    }
  }
  if (!exhaustive) return r;
  for (std::size_t p = 0; p < L.size(); ++p) {
    for (const Morphism& chi : injective_homomorphisms(L, p)) {
      if (f.contains(chi)) continue;
      ++r.checked;
      for (const auto& o : x.orbits)
        if (count_pairs(L, f.morphism(o.phi), chi, true) != 0) {
          r.ok = false;
          r.failure = "a twisted diagonal outside F fixes a point: P = subgroup " + std::to_string(p);
          return r;
        }
    }
  }
  return r;
}

CheckReport check_orbit_predictions(const Biset& x, const FusionSystem& f, const DiagonalClasses& c) {
  const SubgroupLattice& L = f.lattice();
  const FiniteGroup& g = L.group();
  CheckReport r;
  std::vector<char> present(c.size(), 0);
  for (const auto& o : x.orbits) present[c.class_of[o.phi]] = 1;
  for (MorphId id = 0; id < f.size(); ++id) {
    if (!f.is_nonextendable(id)) continue;
    ++r.checked;
    if (!present[c.class_of[id]]) {
      r.ok = false;
      r.failure = "no orbit conjugate to the nonextendable morphism " + std::to_string(id);
      return r;
    }
  }
  Subgroup core = whole_group(g);
  for (const auto& o : x.orbits)
    for (Elem s = 0; s < g.order(); ++s) core = intersect(g, core, conjugate(g, L[o.q], s));
  const Subgroup& qf = L[compute_QF(f).subgroup];
  ++r.checked;
  if (!core.is_subgroup_of(qf)) {
    r.ok = false;
    r.failure = "intersection of orbit stabilizer conjugates is not contained in Q(F)";
  }
  return r;
}

Biset append_free_orbits(const Biset& x, const FusionSystem& f, std::uint64_t count) {
  if (count == 0) throw DomainError("append_free_orbits: count must be positive");
  const SubgroupLattice& L = f.lattice();
  const MorphId triv = f.identity(L.trivial());
  Biset out = x;
  auto it = std::find_if(out.orbits.begin(), out.orbits.end(), [&](const BisetOrbit& o) { return o.phi == triv; });
  if (it != out.orbits.end()) it->multiplicity += count;
  else out.orbits.push_back({L.trivial(), triv, count});
  out.n += count * f.group().order();
  return out;
}

}  // namespace automizer
