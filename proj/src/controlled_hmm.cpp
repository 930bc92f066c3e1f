#include "sacontrol/controlled_hmm.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "sacontrol/errors.hpp"

namespace sacontrol {

namespace {

double normal_pdf(double y, double mean, double sd) {
  const double z = (y - mean) / sd;
  return std::exp(-0.5 * z * z) / (sd * std::sqrt(2.0 * std::numbers::pi));
}

}  // namespace

EmissionModel::EmissionModel(DiscreteEmission d) {
  const auto& L = d.likelihood;
  if (L.rows() == 0 || L.cols() == 0) {
    throw DomainError("discrete emission table must be non-empty");
  }
  for (Eigen::Index i = 0; i < L.rows(); ++i) {
    for (Eigen::Index k = 0; k < L.cols(); ++k) {
      if (!std::isfinite(L(i, k)) || L(i, k) < 0.0) {
        std::ostringstream os;
        os << "emission likelihood[" << i << "][" << k << "] = " << L(i, k) << " is negative or non-finite";
        throw DomainError(os.str());
      }
    }
    const double row = L.row(i).sum();
    if (std::abs(row - 1.0) > kRowTolerance) {
      std::ostringstream os;
      os << "emission likelihood row " << i << " sums to " << row << ", expected 1";
      throw DomainError(os.str());
    }
  }
  model_ = std::move(d);
}

EmissionModel::EmissionModel(GaussianEmission g) {
  if (g.means.empty()) throw DomainError("gaussian emission needs at least one mean");
  if (!(g.std_dev > 0.0) || !std::isfinite(g.std_dev)) {
    throw DomainError("gaussian emission std_dev must be positive and finite");
  }
  for (std::size_t i = 0; i < g.means.size(); ++i) {
    if (!std::isfinite(g.means[i])) {
      std::ostringstream os;
      os << "gaussian emission mean " << i << " is not finite";
      throw DomainError(os.str());
    }
  }
  model_ = std::move(g);
}

std::size_t EmissionModel::n_states() const {
  if (const auto* d = discrete()) return static_cast<std::size_t>(d->likelihood.rows());
  return gaussian()->means.size();
}

std::size_t EmissionModel::n_observations() const {
  if (const auto* d = discrete()) return static_cast<std::size_t>(d->likelihood.cols());
  return 0;
}

std::size_t EmissionModel::symbol_index(Observation y) const {
  const auto n = n_observations();
  if (!(y >= 0.0) || y != std::floor(y) || y >= static_cast<double>(n)) {
    std::ostringstream os;
    os << "observation " << y << " is not a symbol index in [0, " << n << ")";
    throw DomainError(os.str());
  }
  return static_cast<std::size_t>(y);
}

double EmissionModel::likelihood(std::size_t state, Observation y) const {
  if (const auto* d = discrete()) {
    return d->likelihood(static_cast<Eigen::Index>(state), static_cast<Eigen::Index>(symbol_index(y)));
  }
  const auto* g = gaussian();
  if (!std::isfinite(y)) throw DomainError("observation must be finite");
  return normal_pdf(y, g->means.at(state), g->std_dev);
}

Eigen::VectorXd EmissionModel::likelihoods(Observation y) const {
  if (const auto* d = discrete()) {
    return d->likelihood.col(static_cast<Eigen::Index>(symbol_index(y)));
  }
  const auto* g = gaussian();
  if (!std::isfinite(y)) throw DomainError("observation must be finite");
  Eigen::VectorXd out(static_cast<Eigen::Index>(g->means.size()));
  for (std::size_t i = 0; i < g->means.size(); ++i) {
    out[static_cast<Eigen::Index>(i)] = normal_pdf(y, g->means[i], g->std_dev);
  }
  return out;
}

ControlledHmm::ControlledHmm(std::vector<Eigen::MatrixXd> transitions, EmissionModel emissions,
                             Belief initial)
    : n_states_(initial.size()),
      transitions_(std::move(transitions)),
      emissions_(std::move(emissions)),
      initial_(std::move(initial)) {
  if (transitions_.empty()) throw DomainError("model needs at least one control");
  const auto n = static_cast<Eigen::Index>(n_states_);
  for (std::size_t u = 0; u < transitions_.size(); ++u) {
    const auto& A = transitions_[u];
    if (A.rows() != n || A.cols() != n) {
      std::ostringstream os;
      os << "transitions[" << u << "] is " << A.rows() << "x" << A.cols() << ", expected " << n << "x" << n;
      throw DomainError(os.str());
    }
    for (Eigen::Index j = 0; j < n; ++j) {
      for (Eigen::Index i = 0; i < n; ++i) {
        if (!std::isfinite(A(i, j)) || A(i, j) < 0.0) {
          std::ostringstream os;
          os << "transitions[" << u << "][" << i << "][" << j << "] = " << A(i, j)
             << " is negative or non-finite";
          throw DomainError(os.str());
        }
      }
      const double col = A.col(j).sum();
      if (std::abs(col - 1.0) > kColumnTolerance) {
        std::ostringstream os;
        os << "transitions[" << u << "] column " << j << " sums to " << col << ", expected 1";
        throw DomainError(os.str());
      }
    }
  }
  if (emissions_.n_states() != n_states_) {
    std::ostringstream os;
    os << "emission model covers " << emissions_.n_states() << " states, expected " << n_states_;
    throw DomainError(os.str());
  }
}

const Eigen::MatrixXd& ControlledHmm::transition(std::size_t u) const {
  check_control(u);
  return transitions_[u];
}

void ControlledHmm::check_control(std::size_t u) const {
  if (u >= transitions_.size()) {
    std::ostringstream os;
    os << "control index " << u << " out of range [0, " << transitions_.size() << ")";
    throw DomainError(os.str());
  }
}

}  // namespace sacontrol
