#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>

#include "json.hpp"

#include "sacontrol/backward_induction.hpp"
#include "sacontrol/stage_reward.hpp"

namespace sacontrol {

struct PolicyHeader {
  std::size_t n_states = 0;
  std::uint64_t divisions = 0;  // grid resolution is 1 / divisions
  std::size_t horizon = 0;
  std::size_t n_controls = 0;
  RewardKind reward_kind = RewardKind::kSmoothingAverse;
  nlohmann::json quadrature;  // MeasurementQuadrature::spec()
  double gamma = 0.0;
};

struct PolicyArtifact {
  PolicyHeader header;
  ValueTable values;
  GridPolicy policy;
};

nlohmann::json artifact_to_json(const PolicyArtifact& artifact);
PolicyArtifact artifact_from_json(const nlohmann::json& doc);

void write_artifact(const std::filesystem::path& path, const PolicyArtifact& artifact);
PolicyArtifact read_artifact(const std::filesystem::path& path);

// Throws ConfigError naming the first field where the artifact disagrees
// with what the scenario requires. The reward kind is not compared.
void check_header_matches(const PolicyHeader& artifact, const PolicyHeader& expected);

}  // namespace sacontrol
