#include "automizer/certificate.hpp"

#include <algorithm>

#include "automizer/errors.hpp"

namespace automizer {

using nlohmann::json;

namespace {

const std::vector<std::string> kFlags = {
    "semidirect",        "exponent_matches",  "autF_U_is_autS_U", "autF_U_iso_A",
    "focal_is_S",        "QF_trivial",        "index_gt_2A",      "v1_generates_S",
    "v1_intersection_trivial", "biset_generated", "biset_stable", "orbit_predictions",
    "iota_injective_hom", "iota_base_trivial", "witnesses_ok",     "bertrand_prime",
    "iota_in_gamma_prime", "top_closure_is_An", "degree_ok"};

constexpr const char* kReverseInclusion =
    "F_iota(S)(G) contained in iota(F): follows from left F-stability of the biset by the embedding "
    "theorem for semicharacteristic bisets; not recomputed";

json policy_to_json(const VerificationPolicy& p) {
  return {{"level", p.name()},
          {"max_subgroup_order", p.max_subgroup_order},
          {"max_subgroups", p.max_subgroups},
          {"max_morphisms", p.max_morphisms},
          {"max_n", p.max_n},
          {"max_perm_degree", p.max_perm_degree}};
}

VerificationPolicy policy_from_json(const json& j) {
  VerificationPolicy p;
  p.full = j.at("level").get<std::string>() == "full";
  p.max_subgroup_order = j.at("max_subgroup_order").get<std::size_t>();
  p.max_subgroups = j.at("max_subgroups").get<std::size_t>();
  p.max_morphisms = j.at("max_morphisms").get<std::size_t>();
  p.max_n = j.at("max_n").get<std::uint64_t>();
  p.max_perm_degree = j.at("max_perm_degree").get<std::size_t>();
  return p;
}

json input_to_json(const InputGroupA& a) {
  const FiniteGroup& t = *a.table;
  json rows = json::array();
  for (std::size_t i = 0; i < t.order(); ++i) {
    json row = json::array();
    for (std::size_t k = 0; k < t.order(); ++k) row.push_back(t.mul(Elem(i), Elem(k)));
    rows.push_back(std::move(row));
  }
  return {{"name", a.name}, {"order", a.order()}, {"exponent", a.exponent}, {"table", rows}, {"hash", a.table_hash()}};
}

InputGroupA input_from_json(const json& j) {
  const auto order = j.at("order").get<std::size_t>();
  const auto& rows = j.at("table");
  if (rows.size() != order) throw DomainError("input table has wrong row count");
  std::vector<uint32_t> mul;
  for (const auto& row : rows) {
    if (row.size() != order) throw DomainError("input table has wrong row length");
    for (const auto& v : row) mul.push_back(v.get<uint32_t>());
  }
  InputGroupA a = group_from_table(j.at("name").get<std::string>(), order, std::move(mul));
  if (a.table_hash() != j.at("hash").get<std::string>()) throw DomainError("input table hash mismatch");
  if (a.exponent != j.at("exponent").get<std::size_t>()) throw DomainError("recorded exponent is wrong");
  return a;
}

json literals(const SGroup& s, const std::vector<Elem>& xs) {
  json out = json::array();
  for (Elem x : xs) out.push_back(s.literal(x));
  return out;
}

std::vector<Elem> parse_literals(const SGroup& s, const json& j) {
  std::vector<Elem> out;
  for (const auto& v : j) out.push_back(s.parse_literal(v.get<std::string>()));
  return out;
}

void set_flags(json& flags, const FusionReport& t) {
  flags["semidirect"] = t.semidirect;
  flags["exponent_matches"] = t.exponent_matches;
  flags["autF_U_is_autS_U"] = t.autF_U_is_autS_U;
  flags["autF_U_iso_A"] = t.autF_U_iso_A;
  flags["focal_is_S"] = t.focal_is_S;
  flags["QF_trivial"] = t.QF_trivial;
  flags["index_gt_2A"] = t.index_gt_2A;
  flags["v1_generates_S"] = t.v1_generates_S;
  flags["v1_intersection_trivial"] = t.v1_intersection_trivial;
}

json fusion_checks_json(const FusionReport& t) {
  return {{"autF_U_order", t.autF_U_order},
          {"QF_order", t.QF_order},
          {"max_family_index", t.max_family_index},
          {"v1_count", t.v1_count}};
}

json s_description(const SGroup& s, const SubgroupLattice* lat) {
  json j = {{"order", s.order()},
            {"rank", s.rank()},
            {"e", s.e()},
            {"element_format", "(u_0 ... u_{2|A|-1}; a)"},
            {"U_generators", literals(s, closure(s.group(), s.U().elements()).generators())},
            {"complement_generators", literals(s, s.complement().generators())}};
  if (lat) j["S_generators"] = literals(s, (*lat)[lat->whole()].generators());
  return j;
}

}  // namespace

json wreath_to_json(const SGroup& s, const WreathElement& w) {
  json runs = json::array();
  const Elem id = s.group().identity();
  for (std::size_t k = 0; k < w.base.size();) {
    std::size_t e = k + 1;
    while (e < w.base.size() && w.base[e] == w.base[k]) ++e;
    if (w.base[k] != id) runs.push_back(json::array({k, e - k, s.literal(w.base[k])}));
    k = e;
  }
  return {{"top", top_projection(w).to_cycles()}, {"base_runs", runs}};
}

WreathElement wreath_from_json(const SGroup& s, std::size_t n, const json& j) {
  WreathElement w = wreath_identity(s.group(), n);
  const Permutation top = Permutation::from_cycles(j.at("top").get<std::string>(), n);
  w.top.assign(top.images().begin(), top.images().end());
  for (const auto& run : j.at("base_runs")) {
    const auto start = run.at(0).get<std::size_t>();
    const auto len = run.at(1).get<std::size_t>();
    const Elem x = s.parse_literal(run.at(2).get<std::string>());
    if (start + len > n || len == 0) throw DomainError("base run out of range");
    std::fill(w.base.begin() + static_cast<std::ptrdiff_t>(start),
              w.base.begin() + static_cast<std::ptrdiff_t>(start + len), x);
  }
  return w;
}

json morphism_to_json(const SGroup& s, const SubgroupLattice& lat, const Morphism& m) {
  const auto& gens = lat[m.source].generators();
  std::vector<Elem> images;
  for (Elem x : gens) images.push_back(apply(lat, m, x));
  return {{"generators", literals(s, gens)}, {"images", literals(s, images)}};
}

Morphism morphism_from_json(const SGroup& s, const SubgroupLattice& lat, const json& j) {
  const auto gens = parse_literals(s, j.at("generators"));
  const auto images = parse_literals(s, j.at("images"));
  if (gens.size() != images.size()) throw DomainError("morphism generator and image counts differ");
  const std::size_t src = lat.id_of(closure(s.group(), gens));
  auto m = from_generator_images(lat, src, gens, images);
  if (!m) throw DomainError("recorded map is not an injective homomorphism");
  return *m;
}

PipelineResult run_pipeline(const InputGroupA& a, const VerificationPolicy& policy) {
  PipelineResult res;
  json& c = res.certificate;
  c["format"] = "automizer-certificate";
  c["tool_version"] = kToolVersion;
  c["policy"] = policy_to_json(policy);
  c["input"] = input_to_json(a);
  c["e"] = a.exponent;
  c["status"] = "rejected";
  c["failed_stage"] = "";
  c["message"] = "";
  json flags = json::object();

  auto fail = [&](const std::string& stage, const std::string& msg) {
    c["status"] = "rejected";
    c["failed_stage"] = stage;
    c["message"] = msg;
    c["flags"] = flags;
    res.exit_code = kCheckFailed;
    res.log.push_back("FAILED at " + stage + ": " + msg);
    return res;
  };
  auto scale = [&](const std::string& stage, const ScaleError& e) {
    c["status"] = "scale_rejected";
    c["failed_stage"] = stage;
    c["message"] = e.what();
    c["scale_bound"] = e.bound();
    c["flags"] = json::object();
    res.exit_code = kScaleRejected;
    res.log.push_back("scale rejection at " + stage + ": " + e.what());
    return res;
  };

  if (a.order() == 1) {
    // G = U = 1 realizes the trivial group.
    SGroup s = SGroup::build(a, policy.max_subgroup_order);
    c["trivial"] = true;
    c["S"] = s_description(s, nullptr);
    for (const auto& f : kFlags) flags[f] = true;
    c["flags"] = flags;
    c["status"] = "accepted";
    res.exit_code = kAccepted;
    res.log.push_back("A = 1: take G = U = 1");
    return res;
  }
  c["trivial"] = false;

  std::optional<FusionInput> in;
  try {
    in.emplace(build_fusion_for(a, policy));
  } catch (const ScaleError& e) {
    return scale("build_fusion", e);
  }
  const SGroup& s = in->s;
  const SubgroupLattice& L = *in->lattice;
  const FusionSystem& f = in->f;
  c["S"] = s_description(s, &L);
  json gens = json::array();
  for (const auto& m : in->generators) gens.push_back(morphism_to_json(s, L, m));
  c["fusion"] = {{"generators", gens},
                 {"store_size", f.size()},
                 {"subgroup_count", L.size()},
                 {"reverse_inclusion", kReverseInclusion}};
  res.log.push_back("S of order " + std::to_string(s.order()) + ", " + std::to_string(L.size()) +
                    " subgroups, " + std::to_string(f.size()) + " morphisms");

  const FusionReport t = verify_fusion_claims(*in);
  set_flags(flags, t);
  c["checks"] = fusion_checks_json(t);
  if (!t.ok()) return fail("fusion_checks", "a claim about F failed; see flags");
  res.log.push_back("fusion checks passed: |Aut_F(U)| = " + std::to_string(t.autF_U_order));

  const DiagonalClasses dc = diagonal_classes(f);
  MarksTable marks(f, dc);
  Biset x;
  try {
    BuildOptions opt;
    opt.max_n = policy.max_n;
    x = build_semicharacteristic(f, dc, marks, opt);
  } catch (const ScaleError& e) {
    return scale("biset", e);
  }
  json orbits = json::array();
  for (const auto& o : x.orbits) {
    const json m = morphism_to_json(s, L, f.morphism(o.phi));
    orbits.push_back({{"Q_generators", m["generators"]}, {"phi_images", m["images"]}, {"multiplicity", o.multiplicity}});
  }
  c["biset"] = {{"m", x.m}, {"n", x.n}, {"orbits", orbits}};
  const CheckReport gen = verify_generated(x, f);
  const CheckReport st = verify_stability(x, f, dc, marks, policy.full);
  const CheckReport pr = check_orbit_predictions(x, f, dc);
  flags["biset_generated"] = gen.ok;
  flags["biset_stable"] = st.ok;
  flags["orbit_predictions"] = pr.ok;
  c["checks"]["stability_checks"] = st.checked;
  if (!gen.ok) return fail("biset", gen.failure);
  if (!st.ok) return fail("stability", st.failure);
  if (!pr.ok) return fail("orbit_predictions", pr.failure);
  res.log.push_back("biset: " + std::to_string(x.orbits.size()) + " orbit classes, m = " + std::to_string(x.m) +
                    ", n = " + std::to_string(x.n));

  const BisetEmbedding pe = BisetEmbedding::decompose(f, x);
  const Subgroup& qf = L[compute_QF(f).subgroup];
  const EmbeddingReport er = verify_embedding(pe, qf);
  flags["iota_injective_hom"] = er.homomorphism && er.injective;
  flags["iota_base_trivial"] = er.trivial_top_in_QF && er.base_intersection_trivial;
  json emb_orbits = json::array();
  for (const auto& o : pe.orbits())
    emb_orbits.push_back({{"index", o.index()}, {"multiplicity", o.multiplicity}, {"coset_reps", literals(s, o.reps)}});
  json iota = json::array();
  for (Elem g : L[L.whole()].generators())
    iota.push_back({{"element", s.literal(g)}, {"image", wreath_to_json(s, pe.iota(g))}});
  c["embedding"] = {{"base_placement", "target"}, {"n", pe.degree()}, {"orbits", emb_orbits}, {"iota", iota}};
  if (!er.ok()) return fail("embedding", er.failure);

  json wit = json::array();
  bool wok = true;
  std::string wfail;
  try {
    for (std::size_t k = 0; k < in->generators.size() && wok; ++k) {
      const WreathElement w = pe.witness(in->generators[k]);
      if (!pe.verify_witness(in->generators[k], w)) {
        wok = false;
        wfail = "witness for generator " + std::to_string(k) + " does not conjugate correctly";
      }
      wit.push_back({{"generator", k}, {"element", wreath_to_json(s, w)}});
    }
    std::size_t checked = in->generators.size();
    if (policy.full)
      for (MorphId id = 0; id < f.size() && wok; ++id, ++checked)
        if (!pe.verify_witness(f.morphism(id), pe.witness(f.morphism(id)))) {
          wok = false;
          wfail = "witness for stored morphism " + std::to_string(id) + " does not conjugate correctly";
        }
    c["checks"]["witnesses_checked"] = checked;
  } catch (const DomainError& e) {
    wok = false;
    wfail = e.what();
  }
  flags["witnesses_ok"] = wok;
  c["witnesses"] = wit;
  if (!wok) return fail("witnesses", wfail);
  res.log.push_back("witnesses verified");

  const std::size_t p = bertrand_prime(a.order());
  const MainReport mr = verify_main(pe, *in, p, policy);
  flags["bertrand_prime"] = mr.prime_ok;
  flags["iota_in_gamma_prime"] = mr.iota_in_gamma_prime;
  flags["top_closure_is_An"] = mr.top_closure_is_An;
  flags["degree_ok"] = mr.degree_ok;
  c["main"] = {{"p", p},
               {"n", pe.degree()},
               {"top_closure_method", mr.top_closure_method},
               {"jordan_prime", mr.jordan_prime}};
  if (!mr.ok()) return fail("main", mr.failure);
  res.log.push_back("p = " + std::to_string(p) + ", top closure certified by " + mr.top_closure_method);

  c["flags"] = flags;
  c["status"] = "accepted";
  res.exit_code = kAccepted;
  return res;
}

std::string dump_certificate(const json& cert) { return cert.dump(1) + "\n"; }

VerifyResult verify_certificate(const json& cert) {
  VerifyResult r;
  auto reject = [&](const std::string& why) {
    r.failures.push_back(why);
    r.exit_code = kCheckFailed;
    return r;
  };
  try {
    if (cert.value("format", "") != "automizer-certificate") return reject("not an automizer certificate");
    const std::string status = cert.at("status").get<std::string>();
    if (status == "scale_rejected") {
      r.failures.push_back("certificate records a scale rejection: " + cert.value("message", ""));
      r.exit_code = kScaleRejected;
      return r;
    }
    if (status != "accepted") return reject("certificate is not marked accepted");
    for (const auto& f : kFlags)
      if (!cert.at("flags").contains(f) || !cert.at("flags").at(f).get<bool>()) return reject("flag " + f + " is not set");
    if (cert.at("flags").size() != kFlags.size()) return reject("unexpected flag set");

    const InputGroupA a = input_from_json(cert.at("input"));
    try {
      const InputGroupA named = catalog_group(a.name);
      if (named.table_hash() != a.table_hash()) return reject("input table does not match the named group");
    } catch (const DomainError&) {
      // Custom groups carry only their table.
    }
    const VerificationPolicy policy = policy_from_json(cert.at("policy"));
    if (cert.at("e").get<std::size_t>() != a.exponent) return reject("recorded e differs from the exponent of A");

    if (a.order() == 1) {
      if (!cert.at("trivial").get<bool>()) return reject("trivial input not marked trivial");
      r.log.push_back("A = 1: G = U = 1");
    } else {
      std::optional<FusionInput> in;
      try {
        in.emplace(build_fusion_for(a, policy));
      } catch (const ScaleError& e) {
        r.failures.push_back(e.what());
        r.exit_code = kScaleRejected;
        return r;
      }
      const SGroup& s = in->s;
      const SubgroupLattice& L = *in->lattice;
      if (cert.at("S").at("order").get<std::size_t>() != s.order()) return reject("recorded |S| is wrong");

      // Fusion system from the recorded generators.
      std::vector<Morphism> gens;
      for (const auto& j : cert.at("fusion").at("generators")) gens.push_back(morphism_from_json(s, L, j));
      if (gens != in->generators) return reject("fusion generators differ from the canonical reduced set");
      const FusionSystem f = FusionSystem::generate(in->lattice, gens, policy.max_morphisms);
      if (f.size() != in->f.size() || cert.at("fusion").at("store_size").get<std::size_t>() != f.size())
        return reject("fusion store size mismatch");
      for (MorphId id = 0; id < f.size(); ++id)
        if (!in->f.contains(f.morphism(id))) return reject("recorded generators give a different fusion system");
      const FusionReport t = verify_fusion_claims(*in);
      if (!t.ok()) return reject("fusion system claims fail on recomputation");
      const json recomputed = fusion_checks_json(t);
      for (const auto& [k, v] : recomputed.items())
        if (cert.at("checks").at(k) != v) return reject("recorded " + k + " differs from recomputation");
      r.log.push_back("fusion system recomputed: " + std::to_string(f.size()) + " morphisms");

      // Biset.
      Biset x;
      for (const auto& o : cert.at("biset").at("orbits")) {
        const Morphism m = morphism_from_json(s, L, {{"generators", o.at("Q_generators")}, {"images", o.at("phi_images")}});
        const auto id = f.find(m);
        if (!id) return reject("biset orbit map is not in F");
        x.orbits.push_back({m.source, *id, o.at("multiplicity").get<std::uint64_t>()});
      }
      x.m = cert.at("biset").at("m").get<std::uint64_t>();
      x.n = cert.at("biset").at("n").get<std::uint64_t>();
      const CheckReport gen = verify_generated(x, f);
      if (!gen.ok) return reject("biset: " + gen.failure);
      const DiagonalClasses dc = diagonal_classes(f);
      MarksTable marks(f, dc);
      BuildOptions opt;
      opt.max_n = policy.max_n;
      if (build_semicharacteristic(f, dc, marks, opt) != x) return reject("biset differs from the deterministic construction");
      const CheckReport st = verify_stability(x, f, dc, marks, policy.full);
      if (!st.ok) return reject("stability: " + st.failure);
      const CheckReport pr = check_orbit_predictions(x, f, dc);
      if (!pr.ok) return reject("orbit predictions: " + pr.failure);
      r.log.push_back("biset stable (" + std::to_string(st.checked) + " checks)");

      // Embedding.
      const BisetEmbedding pe = BisetEmbedding::decompose(f, x);
      const json& emb = cert.at("embedding");
      if (emb.at("base_placement") != "target") return reject("unsupported base placement");
      if (emb.at("n").get<std::size_t>() != pe.degree()) return reject("embedding degree mismatch");
      if (emb.at("orbits").size() != pe.orbits().size()) return reject("embedding orbit count mismatch");
      for (std::size_t i = 0; i < pe.orbits().size(); ++i) {
        const auto& o = pe.orbits()[i];
        const json& jo = emb.at("orbits").at(i);
        if (jo.at("index").get<std::size_t>() != o.index() || jo.at("multiplicity").get<std::uint64_t>() != o.multiplicity ||
            parse_literals(s, jo.at("coset_reps")) != o.reps)
          return reject("coset representatives of orbit " + std::to_string(i) + " differ");
      }
      const auto& sgens = L[L.whole()].generators();
      if (emb.at("iota").size() != sgens.size()) return reject("iota images missing");
      for (std::size_t k = 0; k < sgens.size(); ++k) {
        const json& ji = emb.at("iota").at(k);
        if (s.parse_literal(ji.at("element").get<std::string>()) != sgens[k]) return reject("iota element mismatch");
        if (wreath_from_json(s, pe.degree(), ji.at("image")) != pe.iota(sgens[k]))
          return reject("iota image of generator " + std::to_string(k) + " is wrong");
      }
      const EmbeddingReport er = verify_embedding(pe, L[compute_QF(f).subgroup]);
      if (!er.ok()) return reject("embedding: " + er.failure);

      // Witnesses.
      const json& wit = cert.at("witnesses");
      if (wit.size() != gens.size()) return reject("a fusion generator has no witness");
      for (std::size_t k = 0; k < wit.size(); ++k) {
        if (wit.at(k).at("generator").get<std::size_t>() != k) return reject("witness list out of order");
        const WreathElement w = wreath_from_json(s, pe.degree(), wit.at(k).at("element"));
        if (!pe.verify_witness(gens[k], w)) return reject("witness for generator " + std::to_string(k) + " fails");
      }
      if (policy.full)
        for (MorphId id = 0; id < f.size(); ++id)
          if (!pe.verify_witness(f.morphism(id), pe.witness(f.morphism(id))))
            return reject("no witness for stored morphism " + std::to_string(id));
      r.log.push_back("witnesses verified");

      // Main checks.
      const std::size_t p = bertrand_prime(a.order());
      const json& jm = cert.at("main");
      if (jm.at("p").get<std::size_t>() != p) return reject("recorded prime is not the least prime in (|A|, 2|A|)");
      if (jm.at("n").get<std::size_t>() != pe.degree()) return reject("recorded n is wrong");
      const MainReport mr = verify_main(pe, *in, p, policy);
      if (!mr.ok()) return reject("main: " + mr.failure);
      r.log.push_back("p = " + std::to_string(p) + ", top closure: " + mr.top_closure_method);
    }

    const PipelineResult again = run_pipeline(a, policy);
    if (again.certificate != cert) return reject("certificate differs from a deterministic rebuild");
    r.exit_code = kAccepted;
    r.log.push_back("certificate matches a deterministic rebuild");
  } catch (const ScaleError& e) {
    r.failures.push_back(e.what());
    r.exit_code = kScaleRejected;
  } catch (const std::exception& e) {
    return reject(std::string("malformed certificate: ") + e.what());
  }
  return r;
}

}  // namespace automizer
