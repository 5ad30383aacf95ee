// Command line front end: realize, verify, oracle.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "automizer/certificate.hpp"
#include "automizer/errors.hpp"

namespace fs = std::filesystem;
using namespace automizer;

namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

InputGroupA load_group(const std::string& spec) {
  if (fs::is_regular_file(spec)) return parse_table(read_file(spec), "custom");
  return catalog_group(spec);
}

// Degree on the first line, then one generator per line in cycle notation.
PermGroup load_perm_group(const std::string& path) {
  std::istringstream in(read_file(path));
  std::string line;
  std::size_t degree = 0;
  std::vector<Permutation> gens;
  while (std::getline(in, line)) {
    if (line.find_first_not_of(" \t\r") == std::string::npos || line[0] == '#') continue;
    if (degree == 0) degree = std::stoul(line);
    else gens.push_back(Permutation::from_cycles(line, degree));
  }
  if (degree == 0) throw DomainError("group file has no degree line");
  return PermGroup(degree, gens);
}

std::vector<Permutation> parse_generators(const std::string& text, std::size_t degree) {
  std::vector<Permutation> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ','))
    if (item.find('(') != std::string::npos) out.push_back(Permutation::from_cycles(item, degree));
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Realize finite groups as automizers and verify the resulting certificates"};
  app.require_subcommand(1);

  std::string group, policy_name = "full", out, cert_path, group_file, subgroup;
  std::uint64_t max_n = 0;
  std::size_t max_subgroups = 0;

  auto* realize = app.add_subcommand("realize", "Run the construction and write a certificate");
  realize->add_option("--group", group, "Catalog name (1, C<n>, D<2n>, S<n>, Q8, products with x) or table file")
      ->required();
  realize->add_option("--policy", policy_name, "fast or full")->check(CLI::IsMember({"fast", "full"}));
  realize->add_option("--max-n", max_n, "Bound on the biset degree");
  realize->add_option("--max-subgroups", max_subgroups, "Bound on the subgroup count of S");
  realize->add_option("--out", out, "Certificate path")->required();

  auto* verify = app.add_subcommand("verify", "Recheck every claim of a certificate");
  verify->add_option("--cert", cert_path, "Certificate path")->required();

  auto* oracle = app.add_subcommand("oracle", "Brute-force N(U)/C(U) in a permutation group");
  oracle->add_option("--group-file", group_file, "Degree line, then generators in cycle notation")->required();
  oracle->add_option("--subgroup", subgroup, "Comma-separated generators in cycle notation")->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (*realize) {
      VerificationPolicy policy = policy_name == "fast" ? VerificationPolicy::fast() : VerificationPolicy::full_policy();
      if (max_n) policy.max_n = max_n;
      if (max_subgroups) policy.max_subgroups = max_subgroups;
      const InputGroupA a = load_group(group);
      const PipelineResult res = run_pipeline(a, policy);
      std::ofstream(out) << dump_certificate(res.certificate);
      for (const auto& line : res.log) std::cout << line << "\n";
      std::cout << "status: " << res.certificate["status"].get<std::string>() << " (" << out << ")\n";
      return res.exit_code;
    }
    if (*verify) {
      const auto cert = nlohmann::json::parse(read_file(cert_path));
      const VerifyResult res = verify_certificate(cert);
      for (const auto& line : res.log) std::cout << line << "\n";
      for (const auto& f : res.failures) std::cout << "FAIL: " << f << "\n";
      std::cout << (res.accepted() ? "certificate accepted\n" : "certificate rejected\n");
      return res.exit_code;
    }
    if (*oracle) {
      const PermGroup g0 = load_perm_group(group_file);
      const InputGroupA aut = automizer_oracle(g0, parse_generators(subgroup, g0.degree()));
      std::cout << "order " << aut.order() << "\n";
      if (auto name = identify_small_group(*aut.table)) std::cout << "isomorphic to " << *name << "\n";
      std::cout << aut.order() << "\n";
      for (Elem x = 0; x < aut.order(); ++x) {
        for (Elem y = 0; y < aut.order(); ++y) std::cout << (y ? " " : "") << aut.table->mul(x, y);
        std::cout << "\n";
      }
      return kAccepted;
    }
  } catch (const ScaleError& e) {
    std::cerr << e.what() << "\n";
    return kScaleRejected;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kCheckFailed;
  }
  return kCheckFailed;
}
