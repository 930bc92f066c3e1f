#pragma once

#include <filesystem>

#include "json.hpp"

#include "sacontrol/controlled_hmm.hpp"

namespace sacontrol {

// {n_states, n_controls, transitions: [control][row][col], emissions: {type, params}, initial: [...]}
// with emissions.type one of "discrete" (params.likelihood: [state][symbol]) or
// "gaussian" (params.means, params.std_dev).
nlohmann::json hmm_to_json(const ControlledHmm& hmm);

// Throws ConfigError naming the first violated constraint.
ControlledHmm hmm_from_json(const nlohmann::json& doc);

nlohmann::json read_json_file(const std::filesystem::path& path);
void write_json_file(const std::filesystem::path& path, const nlohmann::json& doc);

}  // namespace sacontrol
