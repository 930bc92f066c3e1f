#pragma once

#include <cstddef>
#include <random>
#include <string>
#include <vector>

#include "sacontrol/controlled_hmm.hpp"

namespace sacontrol {

// Random discrete-emission model with strictly positive entries.
ControlledHmm random_discrete_hmm(std::size_t n_states, std::size_t n_obs, std::size_t n_controls,
                                  std::mt19937_64& rng);

struct VerifyCase {
  std::string name;
  double discrepancy = 0.0;
  double tolerance = 0.0;
  bool passed = false;
};

struct VerifyReport {
  std::vector<VerifyCase> cases;
  bool passed() const;
};

enum class FaultInjection {
  kNone,
  // The additive side of each identity runs on a model whose first-used
  // transition matrix has one column replaced. Instances with T >= 1 must
  // then fail; T = 0 instances do not touch transitions and still pass.
  kCorruptTransition,
};

// Built-in oracle identities on small fixed-seed instances:
//   additive/k    E[additive objective] vs enumerated smoother entropy (1e-9)
//   chain-rule/k  chain-rule trajectory entropy vs enumeration, one realisation (1e-9)
//   total-probability/k  sum_y p(y | pi, u) = 1 (1e-10)
//   gaussian-entropy-identity  h(N(0, I_3)) = 1.5 ln(2 pi e) (1e-12)
VerifyReport run_verify_suite(FaultInjection fault = FaultInjection::kNone);

}  // namespace sacontrol
