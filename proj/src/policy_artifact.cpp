#include "sacontrol/policy_artifact.hpp"

#include <fstream>
#include <sstream>

#include "sacontrol/errors.hpp"
#include "sacontrol/model_io.hpp"
#include "sacontrol/simplex_grid.hpp"

namespace sacontrol {

using nlohmann::json;

json artifact_to_json(const PolicyArtifact& a) {
  const auto& h = a.header;
  json doc;
  doc["header"] = {{"n_states", h.n_states},
                   {"divisions", h.divisions},
                   {"resolution", 1.0 / static_cast<double>(h.divisions)},
                   {"horizon", h.horizon},
                   {"n_controls", h.n_controls},
                   {"reward_kind", to_string(h.reward_kind)},
                   {"quadrature", h.quadrature},
                   {"gamma", h.gamma}};
  doc["values"] = a.values.values;
  doc["policy"] = a.policy.controls;
  return doc;
}

PolicyArtifact artifact_from_json(const json& doc) {
  try {
    PolicyArtifact a;
    const auto& h = doc.at("header");
    a.header.n_states = h.at("n_states").get<std::size_t>();
    a.header.divisions = h.at("divisions").get<std::uint64_t>();
    a.header.horizon = h.at("horizon").get<std::size_t>();
    a.header.n_controls = h.at("n_controls").get<std::size_t>();
    a.header.reward_kind = reward_kind_from_string(h.at("reward_kind").get<std::string>());
    a.header.quadrature = h.at("quadrature");
    a.header.gamma = h.at("gamma").get<double>();

    a.values.horizon = a.header.horizon;
    a.values.values = doc.at("values").get<std::vector<std::vector<double>>>();
    a.policy.n_controls = a.header.n_controls;
    a.policy.controls = doc.at("policy").get<std::vector<std::vector<std::size_t>>>();

    const auto points = SimplexGrid::count_points(a.header.n_states, a.header.divisions);
    if (a.values.values.size() != a.header.horizon + 1 || a.policy.controls.size() != a.header.horizon) {
      throw ConfigError("policy artifact tables do not match its horizon");
    }
    for (const auto& row : a.values.values) {
      if (row.size() != points) throw ConfigError("policy artifact value table does not match its grid");
    }
    for (const auto& row : a.policy.controls) {
      if (row.size() != points) throw ConfigError("policy artifact control table does not match its grid");
      for (auto u : row) {
        if (u >= a.header.n_controls) throw ConfigError("policy artifact holds an out-of-range control");
      }
    }
    return a;
  } catch (const json::exception& e) {
    throw ConfigError(std::string("malformed policy artifact: ") + e.what());
  }
}

void write_artifact(const std::filesystem::path& path, const PolicyArtifact& artifact) {
  std::ofstream out(path);
  if (!out) throw ConfigError("cannot write " + path.string());
  out << artifact_to_json(artifact).dump() << '\n';
}

PolicyArtifact read_artifact(const std::filesystem::path& path) { return artifact_from_json(read_json_file(path)); }

void check_header_matches(const PolicyHeader& artifact, const PolicyHeader& expected) {
  auto mismatch = [](const char* field, const auto& got, const auto& want) {
    std::ostringstream os;
    os << "policy artifact header mismatch: " << field << " is " << got << ", scenario requires " << want;
    throw ConfigError(os.str());
  };
  if (artifact.n_states != expected.n_states) mismatch("n_states", artifact.n_states, expected.n_states);
  if (artifact.n_controls != expected.n_controls) mismatch("n_controls", artifact.n_controls, expected.n_controls);
  if (artifact.horizon != expected.horizon) mismatch("horizon", artifact.horizon, expected.horizon);
  if (artifact.gamma != expected.gamma) mismatch("gamma", artifact.gamma, expected.gamma);
  if (artifact.quadrature.at("kind") != expected.quadrature.at("kind")) {
    mismatch("quadrature.kind", artifact.quadrature.at("kind").dump(), expected.quadrature.at("kind").dump());
  }
}

}  // namespace sacontrol
