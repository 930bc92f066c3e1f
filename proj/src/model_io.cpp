#include "sacontrol/model_io.hpp"

#include <fstream>
#include <optional>
#include <sstream>

#include "sacontrol/errors.hpp"

namespace sacontrol {

namespace {

using nlohmann::json;

const json& require(const json& doc, const char* key) {
  if (!doc.is_object() || !doc.contains(key)) {
    throw ConfigError(std::string("model document is missing '") + key + "'");
  }
  return doc.at(key);
}

Eigen::MatrixXd matrix_from_json(const json& rows, const std::string& what) {
  if (!rows.is_array() || rows.empty() || !rows[0].is_array()) {
    throw ConfigError(what + " must be a non-empty array of rows");
  }
  const auto n_rows = rows.size();
  const auto n_cols = rows[0].size();
  Eigen::MatrixXd m(static_cast<Eigen::Index>(n_rows), static_cast<Eigen::Index>(n_cols));
  for (std::size_t i = 0; i < n_rows; ++i) {
    if (!rows[i].is_array() || rows[i].size() != n_cols) {
      std::ostringstream os;
      os << what << " row " << i << " has the wrong length";
      throw ConfigError(os.str());
    }
    for (std::size_t j = 0; j < n_cols; ++j) {
      if (!rows[i][j].is_number()) {
        std::ostringstream os;
        os << what << "[" << i << "][" << j << "] is not a number";
        throw ConfigError(os.str());
      }
      m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = rows[i][j].get<double>();
    }
  }
  return m;
}

json matrix_to_json(const Eigen::MatrixXd& m) {
  json rows = json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace

json hmm_to_json(const ControlledHmm& hmm) {
  json doc;
  doc["n_states"] = hmm.n_states();
  doc["n_controls"] = hmm.n_controls();
  json transitions = json::array();
  for (const auto& A : hmm.transitions()) transitions.push_back(matrix_to_json(A));
  doc["transitions"] = std::move(transitions);
  if (const auto* d = hmm.emissions().discrete()) {
    doc["emissions"] = {{"type", "discrete"}, {"params", {{"likelihood", matrix_to_json(d->likelihood)}}}};
  } else {
    const auto* g = hmm.emissions().gaussian();
    doc["emissions"] = {{"type", "gaussian"}, {"params", {{"means", g->means}, {"std_dev", g->std_dev}}}};
  }
  doc["initial"] = hmm.initial().to_vector();
  return doc;
}

ControlledHmm hmm_from_json(const json& doc) {
  try {
    const auto n_states = require(doc, "n_states").get<std::size_t>();
    const auto n_controls = require(doc, "n_controls").get<std::size_t>();
    const auto& trans = require(doc, "transitions");
    if (!trans.is_array() || trans.size() != n_controls) {
      throw ConfigError("'transitions' must hold one matrix per control (n_controls = " +
                        std::to_string(n_controls) + ")");
    }
    std::vector<Eigen::MatrixXd> transitions;
    for (std::size_t u = 0; u < n_controls; ++u) {
      transitions.push_back(matrix_from_json(trans[u], "transitions[" + std::to_string(u) + "]"));
    }

    const auto& em = require(doc, "emissions");
    const auto type = require(em, "type").get<std::string>();
    const auto& params = require(em, "params");
    std::optional<EmissionModel> emissions;
    if (type == "discrete") {
      emissions.emplace(DiscreteEmission{matrix_from_json(require(params, "likelihood"), "emissions.likelihood")});
    } else if (type == "gaussian") {
      emissions.emplace(GaussianEmission{require(params, "means").get<std::vector<double>>(),
                                         require(params, "std_dev").get<double>()});
    } else {
      throw ConfigError("unknown emission type '" + type + "'");
    }

    const auto initial = require(doc, "initial").get<std::vector<double>>();
    if (initial.size() != n_states) {
      throw ConfigError("'initial' has " + std::to_string(initial.size()) + " entries, expected " +
                        std::to_string(n_states));
    }
    return ControlledHmm(std::move(transitions), std::move(*emissions), Belief(std::span<const double>(initial)));
  } catch (const DomainError& e) {
    throw ConfigError(std::string("invalid model: ") + e.what());
  } catch (const json::exception& e) {
    throw ConfigError(std::string("malformed model document: ") + e.what());
  }
}

json read_json_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open " + path.string());
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw ConfigError(path.string() + ": " + e.what());
  }
}

void write_json_file(const std::filesystem::path& path, const json& doc) {
  std::ofstream out(path);
  if (!out) throw ConfigError("cannot write " + path.string());
  out << doc.dump(2) << '\n';
}

}  // namespace sacontrol
