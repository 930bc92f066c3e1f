#pragma once

#include <cstddef>
#include <vector>

#include <Eigen/Core>

#include "json.hpp"

#include "sacontrol/belief.hpp"
#include "sacontrol/controlled_hmm.hpp"

namespace sacontrol {

struct QuadratureCell {
  Observation value;         // representative observation
  Eigen::VectorXd state_prob;  // P(Y in cell | X = i)
};

// Partition of the measurement space used to take expectations over the
// next observation.
//
// Discrete emissions get one exact cell per symbol. Gaussian emissions get
// `interior_cells` equal cells over [min mean - 4 sd, max mean + 4 sd] plus
// one tail cell on each side; interior cells are represented by their
// midpoints and tails by min mean - 4.5 sd / max mean + 4.5 sd.
class MeasurementQuadrature {
 public:
  static constexpr std::size_t kDefaultGaussianCells = 60;

  static MeasurementQuadrature for_model(const EmissionModel& emissions,
                                         std::size_t gaussian_cells = kDefaultGaussianCells);

  bool exact() const { return exact_; }
  std::size_t n_states() const { return n_states_; }
  std::size_t interior_cells() const { return interior_cells_; }
  const std::vector<QuadratureCell>& cells() const { return cells_; }

  // Throws ConfigError if this quadrature was not built for `emissions`.
  void check_matches(const EmissionModel& emissions) const;

  // {kind: "discrete" | "gaussian", cells: K}
  nlohmann::json spec() const;

 private:
  MeasurementQuadrature() = default;

  bool exact_ = false;
  std::size_t n_states_ = 0;
  std::size_t interior_cells_ = 0;
  std::vector<QuadratureCell> cells_;
  // Parameters the quadrature was built from, for mismatch detection.
  Eigen::MatrixXd discrete_table_;
  std::vector<double> means_;
  double std_dev_ = 0.0;
};

// One branch of the measurement expectation: cell probability under the
// predicted belief and the filtered belief at the representative value.
struct MeasurementOutcome {
  double probability;
  Observation value;
  Belief posterior;
};

// Outcomes with nonzero probability, in cell order.
std::vector<MeasurementOutcome> measurement_outcomes(const ControlledHmm& hmm, const Belief& belief,
                                                     std::size_t u, const MeasurementQuadrature& quad);

}  // namespace sacontrol
