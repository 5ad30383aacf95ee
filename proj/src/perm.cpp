#include "automizer/perm.hpp"

#include <algorithm>
#include <cctype>
#include <mutex>
#include <numeric>
#include <random>
#include <sstream>

#include "automizer/errors.hpp"
#include "automizer/kernels.hpp"

namespace automizer {

Permutation::Permutation(std::size_t degree) : images_(degree) {
  std::iota(images_.begin(), images_.end(), 0u);
}

Permutation::Permutation(std::vector<uint32_t> images) : images_(std::move(images)) {
  std::vector<char> seen(images_.size(), 0);
  for (uint32_t x : images_) {
    if (x >= images_.size() || seen[x]) throw DomainError("permutation images are not a bijection");
    seen[x] = 1;
  }
}

Permutation Permutation::cycle(std::size_t degree, std::span<const uint32_t> points) {
  std::vector<uint32_t> img(degree);
  std::iota(img.begin(), img.end(), 0u);
  for (std::size_t i = 0; i < points.size(); ++i) {
    if (points[i] >= degree) throw DomainError("cycle point out of range");
    img[points[i]] = points[(i + 1) % points.size()];
  }
  return Permutation(std::move(img));
}

Permutation Permutation::from_cycles(std::string_view text, std::size_t degree) {
  Permutation result(degree);
  std::size_t i = 0;
  auto skip = [&] {
    while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
  };
  skip();
  if (i == text.size()) throw DomainError("empty permutation text");
  while (i < text.size()) {
    if (text[i] != '(') throw DomainError("expected '(' in cycle notation: " + std::string(text));
    ++i;
    std::vector<uint32_t> pts;
    for (;;) {
      skip();
      if (i >= text.size()) throw DomainError("unterminated cycle");
      if (text[i] == ')') {
        ++i;
        break;
      }
      if (text[i] == ',') {
        ++i;
        continue;
      }
      if (!std::isdigit(static_cast<unsigned char>(text[i])))
        throw DomainError("bad character in cycle notation: " + std::string(text));
      uint64_t v = 0;
      while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i])))
        v = v * 10 + static_cast<uint64_t>(text[i++] - '0');
      if (v >= degree) throw DomainError("cycle point " + std::to_string(v) + " >= degree");
      pts.push_back(static_cast<uint32_t>(v));
    }
    std::vector<uint32_t> sorted = pts;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
      throw DomainError("repeated point inside a cycle");
    if (pts.size() > 1) result = compose(result, cycle(degree, pts));
    skip();
  }
  return result;
}

bool Permutation::is_identity() const noexcept {
  for (std::size_t i = 0; i < images_.size(); ++i)
    if (images_[i] != i) return false;
  return true;
}

Permutation Permutation::inverse() const {
  std::vector<uint32_t> inv(images_.size());
  kernels::invert_permutation(images_, inv);
  return unchecked(std::move(inv));
}

std::vector<std::size_t> Permutation::cycle_lengths() const {
  std::vector<std::size_t> out;
  std::vector<char> seen(images_.size(), 0);
  for (std::size_t i = 0; i < images_.size(); ++i) {
    if (seen[i]) continue;
    std::size_t len = 0;
    for (std::size_t j = i; !seen[j]; j = images_[j]) {
      seen[j] = 1;
      ++len;
    }
    out.push_back(len);
  }
  return out;
}

bool Permutation::is_even() const {
  std::size_t transpositions = 0;
  for (std::size_t len : cycle_lengths()) transpositions += len - 1;
  return transpositions % 2 == 0;
}

std::size_t Permutation::smallest_moved_point() const {
  for (std::size_t i = 0; i < images_.size(); ++i)
    if (images_[i] != i) return i;
  return images_.size();
}

std::string Permutation::to_cycles() const {
  std::ostringstream os;
  std::vector<char> seen(images_.size(), 0);
  bool any = false;
  for (std::size_t i = 0; i < images_.size(); ++i) {
    if (seen[i] || images_[i] == i) continue;
    os << '(';
    for (std::size_t j = i; !seen[j]; j = images_[j]) {
      seen[j] = 1;
      if (j != i) os << ' ';
      os << j;
    }
    os << ')';
    any = true;
  }
  if (!any) return "()";
  return os.str();
}

Permutation compose(const Permutation& p, const Permutation& q) {
  if (p.degree() != q.degree()) throw DomainError("permutation degree mismatch");
  std::vector<uint32_t> out(p.degree());
  kernels::gather(p.images(), q.images(), out);
  return Permutation::unchecked(std::move(out));
}

Permutation power(const Permutation& p, long long k) {
  Permutation base = k < 0 ? p.inverse() : p;
  unsigned long long e = static_cast<unsigned long long>(k < 0 ? -k : k);
  Permutation acc(p.degree());
  while (e) {
    if (e & 1) acc = compose(acc, base);
    base = compose(base, base);
    e >>= 1;
  }
  return acc;
}

Permutation commutator(const Permutation& p, const Permutation& q) {
  return compose(compose(p, q), compose(p.inverse(), q.inverse()));
}

// ---------------------------------------------------------------------------
// Schreier-Sims

StabChain::StabChain(std::size_t degree, std::span<const Permutation> generators)
    : degree_(degree) {
  std::vector<Permutation> gens;
  for (const auto& g : generators) {
    if (g.degree() != degree) throw DomainError("generator degree mismatch");
    if (!g.is_identity() && std::find(gens.begin(), gens.end(), g) == gens.end())
      gens.push_back(g);
  }
  for (const auto& g : gens) {
    bool fixes_base = std::all_of(base_.begin(), base_.end(),
                                  [&](uint32_t b) { return g(b) == b; });
    if (fixes_base) extend_base(g);
  }
  for (const auto& g : gens) levels_[0].gens.push_back(g);
  run();
}

void StabChain::extend_base(const Permutation& h) {
  Level lv;
  lv.point = static_cast<uint32_t>(h.smallest_moved_point());
  base_.push_back(lv.point);
  levels_.push_back(std::move(lv));
}

void StabChain::recompute_orbit(std::size_t i) {
  Level& lv = levels_[i];
  lv.orbit.assign(1, lv.point);
  lv.where.assign(degree_, -1);
  lv.where[lv.point] = 0;
  lv.transversal.assign(1, Permutation(degree_));
  for (std::size_t k = 0; k < lv.orbit.size(); ++k) {
    uint32_t gamma = lv.orbit[k];
    for (const auto& s : lv.gens) {
      uint32_t delta = s(gamma);
      if (lv.where[delta] >= 0) continue;
      lv.where[delta] = static_cast<int32_t>(lv.orbit.size());
      lv.orbit.push_back(delta);
      lv.transversal.push_back(compose(s, lv.transversal[k]));
    }
  }
}

std::pair<Permutation, std::size_t> StabChain::strip(Permutation g, std::size_t from) const {
  for (std::size_t l = from; l < levels_.size(); ++l) {
    const Level& lv = levels_[l];
    int32_t w = lv.where[g(lv.point)];
    if (w < 0) return {std::move(g), l};
    g = compose(lv.transversal[static_cast<std::size_t>(w)].inverse(), g);
  }
  return {std::move(g), levels_.size()};
}

void StabChain::run() {
  if (levels_.empty()) return;
  for (std::size_t i = 0; i < levels_.size(); ++i) {
    if (i > 0) {
      for (const auto& g : levels_[i - 1].gens)
        if (g(levels_[i - 1].point) == levels_[i - 1].point &&
            std::find(levels_[i].gens.begin(), levels_[i].gens.end(), g) == levels_[i].gens.end())
          levels_[i].gens.push_back(g);
    }
    recompute_orbit(i);
  }
  std::ptrdiff_t i = static_cast<std::ptrdiff_t>(levels_.size()) - 1;
  while (i >= 0) {
    const auto ui = static_cast<std::size_t>(i);
    bool restart = false;
    // Copy: the level may grow while we sift.
    const std::vector<uint32_t> orbit = levels_[ui].orbit;
    const std::vector<Permutation> gens = levels_[ui].gens;
    for (std::size_t k = 0; k < orbit.size() && !restart; ++k) {
      const Permutation& ub = levels_[ui].transversal[k];
      for (const auto& s : gens) {
        uint32_t img = s(orbit[k]);
        const Permutation& us = levels_[ui].transversal[static_cast<std::size_t>(levels_[ui].where[img])];
        Permutation schreier = compose(us.inverse(), compose(s, ub));
        auto [h, j] = strip(std::move(schreier), ui + 1);
        if (j < levels_.size() || !h.is_identity()) {
          if (j == levels_.size()) extend_base(h);
          for (std::size_t l = ui + 1; l <= j; ++l) {
            levels_[l].gens.push_back(h);
            recompute_orbit(l);
          }
          i = static_cast<std::ptrdiff_t>(j);
          restart = true;
          break;
        }
      }
    }
    if (!restart) --i;
  }
}

BigInt StabChain::order() const {
  BigInt o = 1;
  for (const auto& lv : levels_) o *= lv.orbit.size();
  return o;
}

bool StabChain::contains(const Permutation& p) const {
  if (p.degree() != degree_) throw DomainError("permutation degree mismatch");
  auto [h, j] = strip(p, 0);
  return j == levels_.size() && h.is_identity();
}

// ---------------------------------------------------------------------------

struct PermGroup::Lazy {
  std::once_flag once;
  std::unique_ptr<StabChain> chain;
};

PermGroup::PermGroup(std::size_t degree, std::vector<Permutation> generators)
    : degree_(degree), gens_(std::move(generators)), lazy_(std::make_shared<Lazy>()) {
  if (degree == 0) throw DomainError("permutation group of degree 0");
  for (const auto& g : gens_)
    if (g.degree() != degree) throw DomainError("generator degree mismatch");
}

const StabChain& PermGroup::chain() const {
  std::call_once(lazy_->once, [&] { lazy_->chain = std::make_unique<StabChain>(degree_, gens_); });
  return *lazy_->chain;
}

bool PermGroup::contains(const Permutation& p) const { return chain().contains(p); }

bool PermGroup::is_transitive() const {
  std::vector<char> seen(degree_, 0);
  std::vector<uint32_t> queue{0};
  seen[0] = 1;
  for (std::size_t k = 0; k < queue.size(); ++k)
    for (const auto& g : gens_) {
      uint32_t y = g(queue[k]);
      if (!seen[y]) {
        seen[y] = 1;
        queue.push_back(y);
      }
    }
  return queue.size() == degree_;
}

PermGroup normal_closure(const PermGroup& g, std::span<const Permutation> seeds) {
  std::vector<Permutation> gens;
  for (const auto& s : seeds) {
    if (s.degree() != g.degree()) throw DomainError("seed degree mismatch");
    if (!s.is_identity()) gens.push_back(s);
  }
  auto chain = std::make_unique<StabChain>(g.degree(), gens);
  // Keep only generators that enlarge the group.
  std::vector<Permutation> kept;
  {
    auto partial = std::make_unique<StabChain>(g.degree(), kept);
    for (const auto& s : gens)
      if (!partial->contains(s)) {
        kept.push_back(s);
        partial = std::make_unique<StabChain>(g.degree(), kept);
      }
    chain = std::move(partial);
  }
  for (std::size_t k = 0; k < kept.size(); ++k) {
    for (const auto& h : g.generators()) {
      Permutation c = compose(compose(h, kept[k]), h.inverse());
      if (!chain->contains(c)) {
        kept.push_back(c);
        chain = std::make_unique<StabChain>(g.degree(), kept);
      }
    }
  }
  return PermGroup(g.degree(), kept);
}

PermGroup derived_subgroup(const PermGroup& g) {
  std::vector<Permutation> comms;
  const auto& gens = g.generators();
  for (std::size_t i = 0; i < gens.size(); ++i)
    for (std::size_t j = i + 1; j < gens.size(); ++j) comms.push_back(commutator(gens[i], gens[j]));
  return normal_closure(g, comms);
}

BigInt factorial(std::size_t n) {
  BigInt f = 1;
  for (std::size_t i = 2; i <= n; ++i) f *= i;
  return f;
}

std::vector<Permutation> symmetric_generators(std::size_t n) {
  std::vector<Permutation> out;
  if (n < 2) return out;
  std::vector<uint32_t> t{0, 1};
  out.push_back(Permutation::cycle(n, t));
  if (n > 2) {
    std::vector<uint32_t> c(n);
    std::iota(c.begin(), c.end(), 0u);
    out.push_back(Permutation::cycle(n, c));
  }
  return out;
}

std::vector<Permutation> alternating_generators(std::size_t n) {
  std::vector<Permutation> out;
  if (n < 3) return out;
  std::vector<uint32_t> t{0, 1, 2};
  out.push_back(Permutation::cycle(n, t));
  if (n > 3) {
    // An (n or n-1)-cycle of even parity.
    std::vector<uint32_t> c;
    for (std::size_t i = (n % 2 == 1 ? 0 : 1); i < n; ++i) c.push_back(static_cast<uint32_t>(i));
    out.push_back(Permutation::cycle(n, c));
  }
  return out;
}

namespace {

bool is_prime(std::size_t p) {
  if (p < 2) return false;
  for (std::size_t d = 2; d * d <= p; ++d)
    if (p % d == 0) return false;
  return true;
}

GiantKind by_parity(const PermGroup& g) {
  for (const auto& s : g.generators())
    if (!s.is_even()) return GiantKind::Symmetric;
  return GiantKind::Alternating;
}

// Prime length of a cycle that some power of x turns into a single p-cycle,
// with n/2 < p <= n-3; 0 if none.
std::size_t jordan_cycle(const Permutation& x) {
  const std::size_t n = x.degree();
  auto lens = x.cycle_lengths();
  for (std::size_t len : lens) {
    if (len * 2 <= n || len + 3 > n || !is_prime(len)) continue;
    std::size_t same = 0;
    bool coprime = true;
    for (std::size_t other : lens) {
      if (other == len) ++same;
      else if (other % len == 0) coprime = false;
    }
    if (same == 1 && coprime) return len;
  }
  return 0;
}

}  // namespace

GiantReport recognize_giant(const PermGroup& g) {
  const std::size_t n = g.degree();
  GiantReport rep;
  if (n <= 2) {
    rep.method = "order";
    BigInt o = g.order();
    rep.kind = (o == factorial(n)) ? GiantKind::Symmetric : GiantKind::Alternating;
    return rep;
  }
  if (!g.is_transitive()) {
    rep.method = "transitivity";
    return rep;
  }
  if (n > kExactGiantDegree) {
    // Product replacement with a fixed seed; the outcome is reproducible.
    std::mt19937_64 rng(0x5eedULL + n);
    std::vector<Permutation> slots = g.generators();
    while (slots.size() < 10) slots.push_back(slots[slots.size() % g.generators().size()]);
    Permutation acc(n);
    auto step = [&] {
      std::uniform_int_distribution<std::size_t> pick(0, slots.size() - 1);
      std::size_t a = pick(rng), b = pick(rng);
      while (b == a) b = pick(rng);
      slots[a] = (rng() & 1) ? compose(slots[a], slots[b]) : compose(slots[b], slots[a]);
      acc = compose(acc, slots[a]);
      return acc;
    };
    for (int k = 0; k < 60; ++k) step();
    for (int k = 0; k < 4000; ++k) {
      Permutation x = step();
      if (std::size_t p = jordan_cycle(x)) {
        rep.kind = by_parity(g);
        rep.method = "jordan";
        rep.prime_cycle = p;
        return rep;
      }
    }
    rep.method = "jordan-inconclusive";
    return rep;
  }
  rep.method = "order";
  BigInt o = g.order();
  BigInt f = factorial(n);
  if (o == f) rep.kind = GiantKind::Symmetric;
  else if (o * 2 == f) rep.kind = GiantKind::Alternating;
  return rep;
}

GiantReport alternating_closure_giant(std::size_t n, std::span<const Permutation> seeds) {
  std::vector<Permutation> gens;
  for (const auto& s : seeds) {
    if (s.degree() != n) throw DomainError("seed degree mismatch");
    if (!s.is_identity()) gens.push_back(s);
  }
  GiantReport rep;
  if (gens.empty() || n < 3) {
    rep.method = "trivial";
    return rep;
  }
  if (n <= kExactGiantDegree) return recognize_giant(normal_closure(PermGroup(n, alternating_generators(n)), gens));
  // Conjugates by even permutations stay inside the normal closure, so a
  // giant generated by seeds and conjugates certifies it.
  std::mt19937_64 rng(0xc105eULL + n);
  std::vector<uint32_t> img(n);
  const std::size_t nseeds = gens.size();
  for (int round = 0; round < 16; ++round) {
    std::iota(img.begin(), img.end(), 0u);
    std::shuffle(img.begin(), img.end(), rng);
    Permutation h = Permutation::unchecked(img);
    if (!h.is_even()) h = compose(h, Permutation::cycle(n, std::vector<uint32_t>{0, 1}));
    const Permutation hi = h.inverse();
    for (std::size_t k = 0; k < nseeds; ++k) gens.push_back(compose(compose(h, gens[k]), hi));
    PermGroup m(n, gens);
    if (!m.is_transitive()) continue;
    rep = recognize_giant(m);
    if (rep.kind != GiantKind::Other) return rep;
  }
  rep.kind = GiantKind::Other;
  if (rep.method.empty()) rep.method = "transitivity";
  return rep;
}

}  // namespace automizer
