#pragma once

#include <vector>

#include <Eigen/Core>

#include "sacontrol/cloud_sim.hpp"
#include "sacontrol/controlled_hmm.hpp"

#include "oracle_values.hpp"

namespace testmodels {

inline sacontrol::ControlledHmm paper_model() { return sacontrol::default_cloud_scenario().hmm; }

// Same dynamics with the Gaussian measurements binned at y < 2, 2 <= y < 4, y >= 4.
inline sacontrol::ControlledHmm three_symbol_model() {
  const auto base = paper_model();
  Eigen::MatrixXd like(3, 3);
  for (int i = 0; i < 3; ++i)
    for (int k = 0; k < 3; ++k) like(i, k) = oracle::three_symbol_table[static_cast<std::size_t>(3 * i + k)];
  return sacontrol::ControlledHmm(base.transitions(), sacontrol::EmissionModel(sacontrol::DiscreteEmission{like}),
                                  sacontrol::Belief::uniform(3));
}

inline sacontrol::ControlledHmm toy_model() {
  Eigen::MatrixXd a0(2, 2), a1(2, 2), like(2, 2);
  a0 << 0.9, 0.2, 0.1, 0.8;
  a1 << 0.3, 0.6, 0.7, 0.4;
  like << 0.8, 0.2, 0.3, 0.7;
  return sacontrol::ControlledHmm({a0, a1}, sacontrol::EmissionModel(sacontrol::DiscreteEmission{like}),
                                  sacontrol::Belief::uniform(2));
}

// n states, `controls` copies of A, every symbol equally likely.
inline sacontrol::ControlledHmm uninformative(const Eigen::MatrixXd& a, std::size_t controls = 1, std::size_t symbols = 2) {
  const auto n = a.rows();
  Eigen::MatrixXd like = Eigen::MatrixXd::Constant(n, static_cast<Eigen::Index>(symbols), 1.0 / static_cast<double>(symbols));
  return sacontrol::ControlledHmm(std::vector<Eigen::MatrixXd>(controls, a),
                                  sacontrol::EmissionModel(sacontrol::DiscreteEmission{like}),
                                  sacontrol::Belief::uniform(static_cast<std::size_t>(n)));
}

inline sacontrol::ControlledHmm perfect(const Eigen::MatrixXd& a) {
  const auto n = a.rows();
  return sacontrol::ControlledHmm({a}, sacontrol::EmissionModel(sacontrol::DiscreteEmission{Eigen::MatrixXd::Identity(n, n)}),
                                  sacontrol::Belief::uniform(static_cast<std::size_t>(n)));
}

}  // namespace testmodels
