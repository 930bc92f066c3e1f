#pragma once

#include <cstddef>

#include "sacontrol/belief.hpp"
#include "sacontrol/controlled_hmm.hpp"

namespace sacontrol {

// joint(i, j) = A(u)(i, j) * belief[j], i.e. p(x_t = i, x_{t-1} = j | y^{t-1}, u^{t-1}).
JointTable predict_joint(const ControlledHmm& hmm, const Belief& belief, std::size_t u);

// Row sums of predict_joint.
Belief predict_marginal(const ControlledHmm& hmm, const Belief& belief, std::size_t u);

// Bayes correction of an already-predicted belief with observation y.
// Throws DegenerateMeasurementError if the normaliser is zero.
Belief measurement_update(const ControlledHmm& hmm, const Belief& predicted, Observation y);

// One step of the HMM filter: predict with u, then correct with y.
Belief filter_update(const ControlledHmm& hmm, const Belief& belief, std::size_t u, Observation y);

// p(y | belief, u): emission density integrated against the predicted belief.
double measurement_likelihood(const ControlledHmm& hmm, const Belief& belief, std::size_t u, Observation y);

// Shannon entropy in nats, with 0 ln 0 = 0.
double discrete_entropy(const Belief& belief);

// -sum joint(i,j) ln(joint(i,j) / prev[j]).
// Throws ConsistencyError if prev is not the column marginal of joint (1e-10).
double conditional_entropy_of_joint(const JointTable& joint, const Belief& prev);

}  // namespace sacontrol
