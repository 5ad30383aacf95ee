#include "automizer/testkit.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include "automizer/errors.hpp"

namespace automizer::testkit {

namespace {

std::string trim(std::string s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::vector<Permutation> parse_list(const std::string& text, std::size_t degree) {
  std::vector<Permutation> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ','))
    if (!trim(item).empty()) out.push_back(Permutation::from_cycles(trim(item), degree));
  return out;
}

}  // namespace

std::vector<SurrogatePair> parse_surrogates(std::string_view text) {
  std::vector<SurrogatePair> out;
  std::istringstream in{std::string(text)};
  std::string line;
  while (std::getline(in, line)) {
    line = trim(line);
    if (line.empty() || line[0] == '#') continue;
    const auto a = line.find('|');
    const auto b = line.find('|', a + 1);
    if (a == std::string::npos || b == std::string::npos) throw DomainError("bad surrogate line: " + line);
    std::istringstream head(line.substr(0, a));
    std::string name;
    std::size_t degree = 0;
    head >> name >> degree;
    out.push_back({name, PermGroup(degree, parse_list(line.substr(a + 1, b - a - 1), degree)),
                   parse_list(line.substr(b + 1), degree)});
  }
  return out;
}

std::vector<SurrogatePair> load_surrogates(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DomainError("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_surrogates(ss.str());
}

Elem SurrogateS::index(const Permutation& p) const {
  auto it = std::lower_bound(elements.begin(), elements.end(), p);
  if (it == elements.end() || *it != p) throw DomainError("permutation not in S0");
  return static_cast<Elem>(it - elements.begin());
}

SurrogateS surrogate_group(const SurrogatePair& pair, std::size_t max_subgroups) {
  SurrogateS s;
  PermGroup h(pair.g0.degree(), pair.s0);
  h.chain().for_each_element([&](const Permutation& p) { s.elements.push_back(p); });
  std::sort(s.elements.begin(), s.elements.end());
  const std::size_t n = s.elements.size();
  std::vector<uint32_t> mul(n * n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) mul[i * n + j] = s.index(compose(s.elements[i], s.elements[j]));
  auto g = std::make_shared<const FiniteGroup>(n, std::move(mul));
  s.lattice = std::make_shared<const SubgroupLattice>(g, max_subgroups);
  return s;
}

std::vector<Morphism> brute_fusion(const SurrogatePair& pair, const SurrogateS& s) {
  if (pair.g0.order() > 10'000) throw ScaleError("max_oracle_order", "|G0| exceeds 10^4");
  const SubgroupLattice& L = *s.lattice;
  std::set<Morphism> out;
  pair.g0.chain().for_each_element([&](const Permutation& g) {
    const Permutation gi = g.inverse();
    std::vector<int64_t> img(s.elements.size(), -1);
    for (std::size_t k = 0; k < s.elements.size(); ++k) {
      const Permutation c = compose(compose(g, s.elements[k]), gi);
      auto it = std::lower_bound(s.elements.begin(), s.elements.end(), c);
      if (it != s.elements.end() && *it == c) img[k] = it - s.elements.begin();
    }
    for (std::size_t p = 0; p < L.size(); ++p) {
      Morphism m{p, {}};
      bool inside = true;
      for (Elem x : L[p].elements()) {
        if (img[x] < 0) {
          inside = false;
          break;
        }
        m.images.push_back(static_cast<Elem>(img[x]));
      }
      if (inside) out.insert(std::move(m));
    }
  });
  return {out.begin(), out.end()};
}

std::vector<Morphism> conjugation_generators(const SurrogatePair& pair, const SurrogateS& s) {
  const SubgroupLattice& L = *s.lattice;
  std::set<Permutation> covered;
  std::vector<Morphism> out;
  pair.g0.chain().for_each_element([&](const Permutation& g) {
    if (covered.count(g)) return;
    for (const auto& a : s.elements)
      for (const auto& b : s.elements) covered.insert(compose(compose(a, g), b));
    const Permutation gi = g.inverse();
    std::vector<Elem> dom;
    for (std::size_t k = 0; k < s.elements.size(); ++k) {
      const Permutation c = compose(compose(g, s.elements[k]), gi);
      if (std::binary_search(s.elements.begin(), s.elements.end(), c)) dom.push_back(static_cast<Elem>(k));
    }
    const std::size_t p = L.id_of(closure(L.group(), dom));
    Morphism m{p, {}};
    for (Elem x : L[p].elements()) m.images.push_back(s.index(compose(compose(g, s.elements[x]), gi)));
    out.push_back(std::move(m));
  });
  return out;
}

FiniteGroup direct_square(const FiniteGroup& s) {
  const std::size_t n = s.order(), N = n * n;
  std::vector<uint32_t> mul(N * N);
  for (std::size_t x = 0; x < N; ++x)
    for (std::size_t y = 0; y < N; ++y)
      mul[x * N + y] = static_cast<uint32_t>(s.mul(Elem(x / n), Elem(y / n)) * n + s.mul(Elem(x % n), Elem(y % n)));
  return FiniteGroup(N, std::move(mul));
}

std::uint64_t brute_mark(const FiniteGroup& sxs, const SubgroupLattice& lat, const Biset& x,
                         const FusionSystem& f, const Subgroup& d) {
  const std::size_t n = lat.group().order();
  std::uint64_t total = 0;
  for (const auto& o : x.orbits) {
    const Subgroup& q = lat[o.q];
    const Morphism& phi = f.morphism(o.phi);
    std::vector<char> in_delta(sxs.order(), 0);
    for (std::size_t k = 0; k < q.order(); ++k) in_delta[q.elements()[k] * n + phi.images[k]] = 1;
    std::uint64_t fixed = 0;
    for (Elem g = 0; g < sxs.order(); ++g) {
      const Elem gi = sxs.inv(g);
      bool ok = true;
      for (Elem h : d.generators())
        if (!in_delta[sxs.mul(sxs.mul(gi, h), g)]) {
          ok = false;
          break;
        }
      if (ok) ++fixed;
    }
    total += o.multiplicity * (fixed / q.order());
  }
  return total;
}

CheckReport brute_stability(const Biset& x, const FusionSystem& f, std::size_t bound) {
  const SubgroupLattice& L = f.lattice();
  const std::size_t n = L.group().order();
  if (n * n > bound) throw ScaleError("max_oracle_order", "|S×S| exceeds the oracle bound");
  auto sxs = std::make_shared<const FiniteGroup>(direct_square(L.group()));
  const SubgroupLattice big(sxs, 1'000'000);
  std::vector<std::uint64_t> marks(big.size());
  for (std::size_t k = 0; k < big.size(); ++k) marks[k] = brute_mark(*sxs, L, x, f, big[k]);
  CheckReport r;
  for (std::size_t q = 0; q < L.size(); ++q) {
    for (MorphId phi : f.from(q)) {
      std::vector<Elem> phi_of(n, 0);
      for (std::size_t k = 0; k < L[q].order(); ++k) phi_of[L[q].elements()[k]] = f.morphism(phi).images[k];
      for (std::size_t k = 0; k < big.size(); ++k) {
        const Subgroup& d = big[k];
        bool inside = true;
        for (Elem e : d.elements())
          if (!L[q].contains(e / static_cast<Elem>(n))) {
            inside = false;
            break;
          }
        if (!inside) continue;
        ++r.checked;
        std::vector<Elem> moved;
        for (Elem e : d.elements()) moved.push_back(phi_of[e / n] * static_cast<Elem>(n) + e % n);
        const std::size_t k2 = big.id_of(closure(*sxs, moved));
        if (marks[k] != marks[k2]) {
          r.ok = false;
          r.failure = "marks differ for Q = " + std::to_string(q) + ", phi = " + std::to_string(phi) +
                      ", D = " + std::to_string(k);
          return r;
        }
      }
    }
  }
  return r;
}

std::vector<Mutation> mutation_suite(const nlohmann::json& cert) {
  std::vector<Mutation> out;
  auto add = [&](std::string name, auto&& edit) {
    nlohmann::json c = cert;
    edit(c);
    if (c != cert) out.push_back({std::move(name), std::move(c)});
  };
  // A literal different from `lit`, taken from the recorded generators of S.
  auto other_literal = [&](const std::string& lit) {
    for (const auto& g : cert.at("S").at("S_generators"))
      if (g.get<std::string>() != lit) return g.get<std::string>();
    return lit;
  };
  auto alter_wreath = [&](nlohmann::json& w) {
    auto& runs = w.at("base_runs");
    if (!runs.empty()) runs[0][2] = other_literal(runs[0][2].get<std::string>());
    else runs.push_back(nlohmann::json::array({0, 1, other_literal("")}));
  };

  // Orbit edits keep n consistent so that the structural checks, not the
  // degree sum, have to catch them.
  auto index_of = [&](std::size_t i) { return cert.at("embedding").at("orbits").at(i).at("index").get<std::uint64_t>(); };
  add("drop_orbit", [&](auto& c) {
    auto& orbits = c["biset"]["orbits"];
    const std::size_t last = orbits.size() - 1;
    c["biset"]["n"] = c["biset"]["n"].template get<std::uint64_t>() -
                      orbits[last]["multiplicity"].template get<std::uint64_t>() * index_of(last);
    orbits.erase(last);
  });
  add("change_multiplicity", [&](auto& c) {
    auto& m = c["biset"]["orbits"][1]["multiplicity"];
    m = m.template get<std::uint64_t>() + 1;
    c["biset"]["n"] = c["biset"]["n"].template get<std::uint64_t>() + index_of(1);
  });
  add("change_m", [](auto& c) { c["biset"]["m"] = c["biset"]["m"].template get<std::uint64_t>() * 2; });
  add("alter_witness", [&](auto& c) { alter_wreath(c["witnesses"][0]["element"]); });
  add("remove_witness", [](auto& c) { c["witnesses"].erase(c["witnesses"].size() - 1); });
  add("change_p", [](auto& c) { c["main"]["p"] = 5; });
  add("change_n", [](auto& c) { c["main"]["n"] = c["main"]["n"].template get<std::uint64_t>() + 1; });
  add("flip_flag", [](auto& c) { c["flags"]["witnesses_ok"] = false; });
  add("alter_iota", [&](auto& c) { alter_wreath(c["embedding"]["iota"][0]["image"]); });
  add("alter_fusion_generator", [](auto& c) {
    auto& imgs = c["fusion"]["generators"][0]["images"];
    std::swap(imgs[0], imgs[1]);
  });
  add("alter_coset_rep", [](auto& c) {
    for (auto& o : c["embedding"]["orbits"])
      if (o["coset_reps"].size() > 2) {
        std::swap(o["coset_reps"][1], o["coset_reps"][2]);
        break;
      }
  });
  add("alter_input_table", [](auto& c) { c["input"]["hash"] = "0000000000000000"; });
  return out;
}

}  // namespace automizer::testkit
