#pragma once

// Certificate assembly, serialization and independent verification.

#include <string>
#include <vector>

#include <json.hpp>

#include "automizer/realize.hpp"

namespace automizer {

inline constexpr const char* kToolVersion = "1.0.0";

enum ExitCode : int { kAccepted = 0, kCheckFailed = 1, kScaleRejected = 2 };

struct PipelineResult {
  nlohmann::json certificate;
  int exit_code = kCheckFailed;
  std::vector<std::string> log;  // one line per stage
};

/// Runs every stage and records the outcome. A certificate is marked
/// "accepted" only when every flag holds; scale rejections are recorded with
/// the violated bound and no flag is set.
PipelineResult run_pipeline(const InputGroupA& a, const VerificationPolicy& policy = {});

struct VerifyResult {
  int exit_code = kCheckFailed;
  std::vector<std::string> failures;
  std::vector<std::string> log;
  bool accepted() const { return exit_code == kAccepted; }
};

/// Recomputes every claim from the certificate data and checks it agrees
/// with a deterministic rebuild from the recorded input.
VerifyResult verify_certificate(const nlohmann::json& cert);

std::string dump_certificate(const nlohmann::json& cert);

// Text forms shared with the CLI.
nlohmann::json wreath_to_json(const SGroup& s, const WreathElement& w);
WreathElement wreath_from_json(const SGroup& s, std::size_t n, const nlohmann::json& j);
nlohmann::json morphism_to_json(const SGroup& s, const SubgroupLattice& lat, const Morphism& m);
Morphism morphism_from_json(const SGroup& s, const SubgroupLattice& lat, const nlohmann::json& j);

}  // namespace automizer
