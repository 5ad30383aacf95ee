#include "automizer/grouprep.hpp"

#include <algorithm>
#include <cctype>
#include <functional>
#include <map>
#include <numeric>
#include <sstream>

#include "automizer/errors.hpp"

namespace automizer {

std::string InputGroupA::table_hash() const {
  uint64_t h = 1469598103934665603ULL;
  auto mix = [&](uint64_t v) {
    for (int i = 0; i < 4; ++i) {
      h ^= (v >> (8 * i)) & 0xff;
      h *= 1099511628211ULL;
    }
  };
  mix(table->order());
  for (uint32_t v : table->table()) mix(v);
  std::ostringstream os;
  os << std::hex;
  os.width(16);
  os.fill('0');
  os << h;
  return os.str();
}

InputGroupA group_from_table(std::string name, std::size_t order, std::vector<uint32_t> mul) {
  InputGroupA a;
  a.name = std::move(name);
  a.table = std::make_shared<FiniteGroup>(order, std::move(mul), order <= 64);
  a.exponent = a.table->exponent();
  return a;
}

namespace {

std::vector<uint32_t> cyclic_table(std::size_t n) {
  std::vector<uint32_t> t(n * n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) t[i * n + j] = static_cast<uint32_t>((i + j) % n);
  return t;
}

std::vector<uint32_t> dihedral_table(std::size_t order) {
  const std::size_t n = order / 2;
  std::vector<uint32_t> t(order * order);
  for (std::size_t x = 0; x < order; ++x)
    for (std::size_t y = 0; y < order; ++y) {
      std::size_t i = x % n, j = x / n, k = y % n, l = y / n;
      std::size_t r = (j == 0 ? i + k : i + n - k) % n;
      t[x * order + y] = static_cast<uint32_t>(r + n * ((j + l) % 2));
    }
  return t;
}

std::vector<uint32_t> symmetric_table(std::size_t n) {
  std::vector<std::vector<uint32_t>> perms;
  std::vector<uint32_t> p(n);
  std::iota(p.begin(), p.end(), 0u);
  do perms.push_back(p);
  while (std::next_permutation(p.begin(), p.end()));
  std::map<std::vector<uint32_t>, uint32_t> index;
  for (std::size_t i = 0; i < perms.size(); ++i) index[perms[i]] = static_cast<uint32_t>(i);
  const std::size_t m = perms.size();
  std::vector<uint32_t> t(m * m);
  for (std::size_t a = 0; a < m; ++a)
    for (std::size_t b = 0; b < m; ++b) {
      std::vector<uint32_t> c(n);
      for (std::size_t x = 0; x < n; ++x) c[x] = perms[a][perms[b][x]];
      t[a * m + b] = index.at(c);
    }
  return t;
}

std::vector<uint32_t> quaternion_table() {
  // index = 2*unit + sign, unit in {1, i, j, k}, sign 1 means negative.
  static const int unit_mul[4][4] = {{0, 1, 2, 3}, {1, 0, 3, 2}, {2, 3, 0, 1}, {3, 2, 1, 0}};
  static const int unit_sign[4][4] = {{0, 0, 0, 0}, {0, 1, 0, 1}, {0, 1, 1, 0}, {0, 0, 1, 1}};
  std::vector<uint32_t> t(64);
  for (int x = 0; x < 8; ++x)
    for (int y = 0; y < 8; ++y) {
      int u = x / 2, v = y / 2;
      int sign = (x % 2) ^ (y % 2) ^ unit_sign[u][v];
      t[static_cast<std::size_t>(x * 8 + y)] = static_cast<uint32_t>(2 * unit_mul[u][v] + sign);
    }
  return t;
}

std::vector<uint32_t> direct_product(const FiniteGroup& a, const FiniteGroup& b) {
  const std::size_t na = a.order(), nb = b.order(), n = na * nb;
  std::vector<uint32_t> t(n * n);
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = 0; y < n; ++y)
      t[x * n + y] = static_cast<uint32_t>(a.mul(Elem(x / nb), Elem(y / nb)) * nb +
                                           b.mul(Elem(x % nb), Elem(y % nb)));
  return t;
}

std::size_t parse_count(std::string_view digits, std::string_view whole) {
  if (digits.empty() || digits.size() > 6) throw DomainError("bad catalog name: " + std::string(whole));
  std::size_t v = 0;
  for (char c : digits) {
    if (!std::isdigit(static_cast<unsigned char>(c))) throw DomainError("bad catalog name: " + std::string(whole));
    v = v * 10 + static_cast<std::size_t>(c - '0');
  }
  return v;
}

FiniteGroup factor(std::string_view tok) {
  if (tok == "1") return FiniteGroup(1, {0});
  if (tok == "Q8") return FiniteGroup(8, quaternion_table());
  if (tok.size() < 2) throw DomainError("bad catalog name: " + std::string(tok));
  std::size_t n = parse_count(tok.substr(1), tok);
  switch (tok[0]) {
    case 'C':
      if (n < 1) throw DomainError("C0 is not a group");
      return FiniteGroup(n, cyclic_table(n));
    case 'D':
      if (n < 2 || n % 2) throw DomainError("dihedral order must be even and >= 2: " + std::string(tok));
      return FiniteGroup(n, dihedral_table(n));
    case 'S':
      if (n < 1 || n > 4) throw DomainError("catalog symmetric groups are S1..S4");
      return FiniteGroup(n == 1 ? 1 : (n == 2 ? 2 : (n == 3 ? 6 : 24)), symmetric_table(n));
    default:
      throw DomainError("bad catalog name: " + std::string(tok));
  }
}

}  // namespace

InputGroupA catalog_group(std::string_view name) {
  if (name.empty()) throw DomainError("empty group name");
  std::shared_ptr<FiniteGroup> acc;
  std::size_t start = 0;
  while (start <= name.size()) {
    std::size_t x = name.find('x', start);
    std::string_view tok = name.substr(start, x == std::string_view::npos ? std::string_view::npos : x - start);
    FiniteGroup f = factor(tok);
    if (!acc) acc = std::make_shared<FiniteGroup>(std::move(f));
    else {
      std::size_t n = acc->order() * f.order();
      if (n > 4096) throw DomainError("catalog product too large");
      acc = std::make_shared<FiniteGroup>(n, direct_product(*acc, f));
    }
    if (x == std::string_view::npos) break;
    start = x + 1;
  }
  InputGroupA a;
  a.name = std::string(name);
  a.table = acc;
  a.exponent = acc->exponent();
  return a;
}

InputGroupA parse_table(std::string_view text, std::string name) {
  std::istringstream is{std::string(text)};
  long long order = 0;
  if (!(is >> order) || order < 1 || order > 4096) throw DomainError("table file: bad order line");
  const auto n = static_cast<std::size_t>(order);
  std::vector<uint32_t> mul;
  mul.reserve(n * n);
  long long v;
  while (is >> v) {
    if (v < 0 || v >= order) throw DomainError("table file: entry out of range");
    mul.push_back(static_cast<uint32_t>(v));
  }
  if (!is.eof()) throw DomainError("table file: non-numeric entry");
  if (mul.size() != n * n) throw DomainError("table file: expected order^2 entries");
  return group_from_table(std::move(name), n, std::move(mul));
}

InputGroupA group_from_permutations(std::string name, const PermGroup& g) {
  std::vector<Permutation> elems;
  g.chain().for_each_element([&](const Permutation& p) { elems.push_back(p); });
  std::sort(elems.begin(), elems.end());
  std::map<Permutation, uint32_t> index;
  for (std::size_t i = 0; i < elems.size(); ++i) index[elems[i]] = static_cast<uint32_t>(i);
  const std::size_t n = elems.size();
  std::vector<uint32_t> mul(n * n);
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) mul[a * n + b] = index.at(compose(elems[a], elems[b]));
  return group_from_table(std::move(name), n, std::move(mul));
}

std::optional<std::vector<Elem>> find_isomorphism(const FiniteGroup& g, const FiniteGroup& h) {
  if (g.order() != h.order()) return std::nullopt;
  std::vector<std::size_t> og, oh;
  for (Elem x = 0; x < g.order(); ++x) og.push_back(g.element_order(x));
  for (Elem x = 0; x < h.order(); ++x) oh.push_back(h.element_order(x));
  std::sort(og.begin(), og.end());
  std::sort(oh.begin(), oh.end());
  if (og != oh) return std::nullopt;
  std::vector<Elem> gens = small_generating_set(g, whole_group(g));
  std::vector<Elem> pick(gens.size());
  std::optional<std::vector<Elem>> found;
  auto attempt = [&]() -> bool {
    constexpr Elem kUnset = ~Elem{0};
    std::vector<Elem> map(g.order(), kUnset);
    std::vector<char> used(h.order(), 0);
    map[g.identity()] = h.identity();
    used[h.identity()] = 1;
    std::vector<Elem> queue{g.identity()};
    for (std::size_t k = 0; k < queue.size(); ++k)
      for (std::size_t i = 0; i < gens.size(); ++i) {
        Elem y = g.mul(queue[k], gens[i]);
        Elem fy = h.mul(map[queue[k]], pick[i]);
        if (map[y] == kUnset) {
          if (used[fy]) return false;
          used[fy] = 1;
          map[y] = fy;
          queue.push_back(y);
        } else if (map[y] != fy) {
          return false;
        }
      }
    if (queue.size() != g.order()) return false;
    found = std::move(map);
    return true;
  };
  std::function<bool(std::size_t)> rec = [&](std::size_t i) -> bool {
    if (i == gens.size()) return attempt();
    for (Elem y = 0; y < h.order(); ++y) {
      if (h.element_order(y) != g.element_order(gens[i])) continue;
      pick[i] = y;
      if (rec(i + 1)) return true;
    }
    return false;
  };
  rec(0);
  return found;
}

// ---------------------------------------------------------------------------

BigInt SGroup::predicted_order(const InputGroupA& a) {
  BigInt o = a.order();
  for (std::size_t i = 0; i < 2 * a.order(); ++i) o *= a.exponent;
  return o;
}

SGroup SGroup::build(const InputGroupA& a, std::size_t max_order) {
  BigInt predicted = predicted_order(a);
  if (predicted > max_order)
    throw ScaleError("max_subgroup_order",
                     "|S| = " + predicted.str() + " > " + std::to_string(max_order));
  SGroup s;
  s.a_ = a;
  s.e_ = a.exponent;
  const std::size_t na = a.order();
  const std::size_t r = 2 * na;
  s.u_size_ = 1;
  for (std::size_t i = 0; i < r; ++i) s.u_size_ *= s.e_;
  const std::size_t n = s.u_size_ * na;
  std::vector<std::vector<uint32_t>> digits(s.u_size_, std::vector<uint32_t>(r));
  for (std::size_t idx = 0; idx < s.u_size_; ++idx) {
    std::size_t v = idx;
    for (std::size_t k = r; k-- > 0;) {
      digits[idx][k] = static_cast<uint32_t>(v % s.e_);
      v /= s.e_;
    }
  }
  const FiniteGroup& at = *a.table;
  std::vector<uint32_t> mul(n * n);
  std::vector<uint32_t> w(r);
  for (std::size_t x = 0; x < n; ++x) {
    const auto& u = digits[x / na];
    const Elem ax = Elem(x % na);
    for (std::size_t y = 0; y < n; ++y) {
      const auto& v = digits[y / na];
      const Elem ay = Elem(y % na);
      // w = u + ax·v, where (ax·v)[c, ax*t] = v[c, t].
      for (std::size_t c = 0; c < 2; ++c)
        for (std::size_t t = 0; t < na; ++t) {
          std::size_t dst = c * na + at.mul(ax, Elem(t));
          w[dst] = static_cast<uint32_t>((u[dst] + v[c * na + t]) % s.e_);
        }
      std::size_t uidx = 0;
      for (std::size_t k = 0; k < r; ++k) uidx = uidx * s.e_ + w[k];
      mul[x * n + y] = static_cast<uint32_t>(uidx * na + at.mul(ax, ay));
    }
  }
  s.group_ = std::make_shared<FiniteGroup>(n, std::move(mul));
  return s;
}

Elem SGroup::encode(const std::vector<uint32_t>& u, std::size_t a) const {
  if (u.size() != rank() || a >= a_.order()) throw DomainError("SElement has wrong shape");
  std::size_t uidx = 0;
  for (uint32_t d : u) {
    if (d >= e_) throw DomainError("SElement coordinate out of range");
    uidx = uidx * e_ + d;
  }
  return static_cast<Elem>(uidx * a_.order() + a);
}

std::vector<uint32_t> SGroup::u_of(Elem x) const {
  std::size_t v = x / a_.order();
  std::vector<uint32_t> u(rank());
  for (std::size_t k = rank(); k-- > 0;) {
    u[k] = static_cast<uint32_t>(v % e_);
    v /= e_;
  }
  return u;
}

std::string SGroup::literal(Elem x) const {
  std::ostringstream os;
  os << '(';
  auto u = u_of(x);
  for (std::size_t k = 0; k < u.size(); ++k) os << (k ? " " : "") << u[k];
  os << "; " << a_of(x) << ')';
  return os.str();
}

Elem SGroup::parse_literal(std::string_view text) const {
  auto open = text.find('('), semi = text.find(';'), close = text.find(')');
  if (open == std::string_view::npos || semi == std::string_view::npos || close == std::string_view::npos ||
      !(open < semi && semi < close))
    throw DomainError("bad SElement literal: " + std::string(text));
  std::istringstream us{std::string(text.substr(open + 1, semi - open - 1))};
  std::istringstream as{std::string(text.substr(semi + 1, close - semi - 1))};
  std::vector<uint32_t> u;
  long long d;
  while (us >> d) {
    if (d < 0) throw DomainError("bad SElement literal: " + std::string(text));
    u.push_back(static_cast<uint32_t>(d));
  }
  if (!us.eof()) throw DomainError("bad SElement literal: " + std::string(text));
  long long a = -1;
  if (!(as >> a) || a < 0) throw DomainError("bad SElement literal: " + std::string(text));
  return encode(u, static_cast<std::size_t>(a));
}

Subgroup SGroup::U() const {
  std::vector<Elem> elems;
  const Elem one = a_.table->identity();
  for (std::size_t idx = 0; idx < u_size_; ++idx) elems.push_back(static_cast<Elem>(idx * a_.order() + one));
  return Subgroup(group(), elems, small_generating_set(group(), Subgroup(group(), elems, {})));
}

Subgroup SGroup::fixed_subgroup() const {
  std::vector<Elem> elems;
  const Elem one = a_.table->identity();
  const std::size_t na = a_.order();
  for (uint32_t c0 = 0; c0 < e_; ++c0)
    for (uint32_t c1 = 0; c1 < e_; ++c1) {
      std::vector<uint32_t> u(rank());
      std::fill(u.begin(), u.begin() + static_cast<std::ptrdiff_t>(na), c0);
      std::fill(u.begin() + static_cast<std::ptrdiff_t>(na), u.end(), c1);
      elems.push_back(encode(u, one));
    }
  std::sort(elems.begin(), elems.end());
  elems.erase(std::unique(elems.begin(), elems.end()), elems.end());
  return Subgroup(group(), elems, small_generating_set(group(), Subgroup(group(), elems, {})));
}

Subgroup SGroup::complement() const {
  std::vector<Elem> elems;
  for (std::size_t a = 0; a < a_.order(); ++a) elems.push_back(static_cast<Elem>(a));
  return Subgroup(group(), elems, small_generating_set(group(), Subgroup(group(), elems, {})));
}

BigInt subgroup_count_lower_bound(const SGroup& s) {
  std::size_t e = s.e();
  if (e < 2) return 1;
  std::size_t p = 2;
  while (e % p) ++p;
  const std::size_t r = s.rank();
  // Gaussian binomials [r, k]_p.
  BigInt total = 0;
  for (std::size_t k = 0; k <= r; ++k) {
    BigInt num = 1, den = 1;
    for (std::size_t i = 0; i < k; ++i) {
      BigInt pr = 1, pi = 1;
      for (std::size_t t = 0; t < r - i; ++t) pr *= p;
      for (std::size_t t = 0; t < i + 1; ++t) pi *= p;
      num *= pr - 1;
      den *= pi - 1;
    }
    total += num / den;
  }
  return total;
}

std::vector<std::size_t> homocyclic_rank2(const SGroup& s, const SubgroupLattice& lat) {
  std::vector<std::size_t> out;
  if (s.e() < 2) return out;
  for (std::size_t id = 0; id < lat.size(); ++id)
    if (lat[id].order() == s.e() * s.e() && is_homocyclic_rank2(lat.group(), lat[id], s.e()))
      out.push_back(id);
  return out;
}

}  // namespace automizer
