#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "sacontrol/belief.hpp"
#include "sacontrol/controlled_hmm.hpp"

namespace sacontrol {

// Fixed-interval smoother output for t = 0..T.
struct SmoothedPosteriors {
  std::vector<Belief> filtered;   // p(x_t | y^t, u^{t-1})
  std::vector<Belief> marginals;  // p(x_t | y^T, u^{T-1})
  // pairwise[t](i, j) = p(x_{t+1} = i, x_t = j | y^T, u^{T-1}), t = 0..T-1
  std::vector<JointTable> pairwise;
};

// Forward filter / backward smoother. `controls` has T entries and
// `observations` T + 1.
SmoothedPosteriors forward_backward_smoother(const ControlledHmm& hmm, std::span<const std::size_t> controls,
                                             std::span<const Observation> observations);

// Entropy of p(x^T | y^T, u^{T-1}) by the chain rule
// h(X_T | .) + sum_t h(X_t | X_{t+1}, .), evaluated from the pairwise tables.
double smoother_trajectory_entropy(const SmoothedPosteriors& smoothed);

// Fraction of t in [first, last) where the smoothed MAP state differs from
// the truth. Ties go to the lowest state index.
double map_error_rate(const SmoothedPosteriors& smoothed, std::span<const std::size_t> true_states,
                      std::size_t first, std::size_t last);

}  // namespace sacontrol
