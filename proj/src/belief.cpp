#include "sacontrol/belief.hpp"

#include <cmath>
#include <sstream>

#include "sacontrol/errors.hpp"

namespace sacontrol {

namespace {

void check_entries(const Eigen::VectorXd& v) {
  if (v.size() == 0) {
    throw DomainError("belief must have at least one state");
  }
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    if (!std::isfinite(v[i]) || v[i] < 0.0) {
      std::ostringstream os;
      os << "belief entry " << i << " is " << v[i] << " (must be finite and >= 0)";
      throw DomainError(os.str());
    }
  }
}

}  // namespace

Belief::Belief(Eigen::VectorXd probs) {
  check_entries(probs);
  const double total = probs.sum();
  if (std::abs(total - 1.0) > kInputTolerance) {
    std::ostringstream os;
    os << "belief entries sum to " << total << ", expected 1";
    throw DomainError(os.str());
  }
  probs_ = probs / total;
}

Belief::Belief(std::span<const double> probs)
    : Belief(Eigen::VectorXd(Eigen::Map<const Eigen::VectorXd>(
          probs.data(), static_cast<Eigen::Index>(probs.size())))) {}

Belief::Belief(Eigen::VectorXd probs, Trusted) : probs_(std::move(probs)) {}

Belief Belief::from_weights(Eigen::VectorXd weights) {
  check_entries(weights);
  const double total = weights.sum();
  if (!(total > 0.0)) {
    throw DomainError("cannot normalise a weight vector with zero total mass");
  }
  weights /= total;
  return Belief(std::move(weights), Trusted{});
}

Belief Belief::uniform(std::size_t n) {
  if (n == 0) throw DomainError("belief must have at least one state");
  return Belief(Eigen::VectorXd::Constant(static_cast<Eigen::Index>(n), 1.0 / static_cast<double>(n)),
                Trusted{});
}

Belief Belief::point_mass(std::size_t n, std::size_t state) {
  if (state >= n) throw DomainError("point mass state index out of range");
  Eigen::VectorXd p = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(n));
  p[static_cast<Eigen::Index>(state)] = 1.0;
  return Belief(std::move(p), Trusted{});
}

std::vector<double> Belief::to_vector() const {
  return {probs_.data(), probs_.data() + probs_.size()};
}

std::size_t Belief::argmax() const {
  std::size_t best = 0;
  for (std::size_t i = 1; i < size(); ++i) {
    if ((*this)[i] > (*this)[best]) best = i;
  }
  return best;
}

}  // namespace sacontrol
