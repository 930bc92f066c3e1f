#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "sacontrol/controlled_hmm.hpp"

namespace sacontrol {

// Brute-force references for the smoother entropy. They enumerate state (and
// observation) sequences directly from the model factors and share no code
// with the filter recursions.

inline constexpr std::uint64_t kEnumerationGuard = 10'000'000;

// Posterior p(x^T | y^T, u^{T-1}) for every state trajectory. Trajectory
// index = sum_t x_t n^t (x_0 is the least significant digit).
std::vector<double> trajectory_posterior_enumeration(const ControlledHmm& hmm, std::span<const std::size_t> controls,
                                                     std::span<const Observation> observations,
                                                     std::uint64_t guard = kEnumerationGuard);

// h(X^T | y^T, u^{T-1}) for one realisation, by enumerating trajectories.
double trajectory_entropy_enumeration(const ControlledHmm& hmm, std::span<const std::size_t> controls,
                                      std::span<const Observation> observations,
                                      std::uint64_t guard = kEnumerationGuard);

// h(X^T | Y^T, U^{T-1}) for a fixed open-loop control sequence: sum over all
// observation sequences of p(y^T) h(X^T | y^T). Discrete emissions only.
// Throws SizeGuardError when n_states^(T+1) * n_obs^(T+1) exceeds `guard`.
double exact_smoother_entropy_enumeration(const ControlledHmm& hmm, std::span<const std::size_t> controls,
                                          std::uint64_t guard = kEnumerationGuard);

// Expectation of additive_objective_realisation over all observation
// sequences, weighting each by the product of filter predictive
// likelihoods. Discrete emissions only.
double expected_additive_objective(const ControlledHmm& hmm, std::span<const std::size_t> controls,
                                   std::uint64_t guard = kEnumerationGuard);

}  // namespace sacontrol
