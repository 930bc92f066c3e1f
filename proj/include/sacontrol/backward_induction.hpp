#pragma once

#include <cstddef>
#include <functional>
#include <vector>

#include "sacontrol/belief.hpp"
#include "sacontrol/controlled_hmm.hpp"
#include "sacontrol/quadrature.hpp"
#include "sacontrol/simplex_grid.hpp"

namespace sacontrol {

// J_t on the grid for t = 0..T; values[T] is identically zero.
struct ValueTable {
  std::size_t horizon = 0;
  std::vector<std::vector<double>> values;
};

// Control index per grid point for t = 0..T-1.
struct GridPolicy {
  std::size_t n_controls = 0;
  std::vector<std::vector<std::size_t>> controls;
};

struct DpSolution {
  ValueTable values;
  GridPolicy policy;
};

// Expected stage reward r(pi, u).
using RewardFunction = std::function<double(const Belief&, std::size_t)>;

// Finite-horizon, undiscounted dynamic programming on the grid Markov chain:
//   J_t(p) = max_u { reward(p, u) + sum_cells P(cell | p, u) J_{t+1}(project(filter(p, u, y_cell))) }.
// Control ties go to the lowest index. Grid points within a stage are
// processed on up to `threads` workers (0 = default).
DpSolution backward_induction(const ControlledHmm& hmm, const SimplexGrid& grid, const MeasurementQuadrature& quad,
                              std::size_t horizon, const RewardFunction& reward, std::size_t threads = 0);

// One Bellman backup at a grid point: the Q-value of every control given
// next-stage values.
std::vector<double> q_values(const ControlledHmm& hmm, const SimplexGrid& grid, const MeasurementQuadrature& quad,
                             std::size_t point, const std::vector<double>& next_values,
                             const std::vector<double>& rewards);

std::size_t policy_lookup(const GridPolicy& policy, const SimplexGrid& grid, const Belief& belief, std::size_t t);

}  // namespace sacontrol
