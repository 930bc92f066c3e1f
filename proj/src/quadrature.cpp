#include "sacontrol/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "sacontrol/errors.hpp"
#include "sacontrol/hmm_filter.hpp"

namespace sacontrol {

namespace {

double normal_cdf(double x, double mean, double sd) {
  return 0.5 * std::erfc(-(x - mean) / (sd * std::numbers::sqrt2));
}

double normal_sf(double x, double mean, double sd) {
  return 0.5 * std::erfc((x - mean) / (sd * std::numbers::sqrt2));
}

}  // namespace

MeasurementQuadrature MeasurementQuadrature::for_model(const EmissionModel& emissions,
                                                       std::size_t gaussian_cells) {
  MeasurementQuadrature q;
  q.n_states_ = emissions.n_states();
  const auto n = static_cast<Eigen::Index>(q.n_states_);

  if (const auto* d = emissions.discrete()) {
    q.exact_ = true;
    q.discrete_table_ = d->likelihood;
    q.interior_cells_ = static_cast<std::size_t>(d->likelihood.cols());
    for (Eigen::Index k = 0; k < d->likelihood.cols(); ++k) {
      q.cells_.push_back({static_cast<double>(k), d->likelihood.col(k)});
    }
    return q;
  }

  if (gaussian_cells == 0) throw ConfigError("gaussian quadrature needs at least one interior cell");
  const auto* g = emissions.gaussian();
  q.means_ = g->means;
  q.std_dev_ = g->std_dev;
  q.interior_cells_ = gaussian_cells;

  const double sd = g->std_dev;
  const auto [mn, mx] = std::minmax_element(g->means.begin(), g->means.end());
  const double lo = *mn - 4.0 * sd;
  const double hi = *mx + 4.0 * sd;
  const double width = (hi - lo) / static_cast<double>(gaussian_cells);

  auto cell = [&](Observation value, auto&& prob_of) {
    Eigen::VectorXd p(n);
    for (Eigen::Index i = 0; i < n; ++i) p[i] = prob_of(g->means[static_cast<std::size_t>(i)]);
    q.cells_.push_back({value, std::move(p)});
  };

  cell(*mn - 4.5 * sd, [&](double mu) { return normal_cdf(lo, mu, sd); });
  for (std::size_t k = 0; k < gaussian_cells; ++k) {
    const double a = lo + width * static_cast<double>(k);
    const double b = (k + 1 == gaussian_cells) ? hi : lo + width * static_cast<double>(k + 1);
    cell(0.5 * (a + b), [&](double mu) {
      // Difference of survival functions is more accurate above the mean.
      return a >= mu ? normal_sf(a, mu, sd) - normal_sf(b, mu, sd) : normal_cdf(b, mu, sd) - normal_cdf(a, mu, sd);
    });
  }
  cell(*mx + 4.5 * sd, [&](double mu) { return normal_sf(hi, mu, sd); });
  return q;
}

void MeasurementQuadrature::check_matches(const EmissionModel& emissions) const {
  if (emissions.n_states() != n_states_) {
    throw ConfigError("quadrature was built for a different number of states");
  }
  if (const auto* d = emissions.discrete()) {
    if (!exact_ || d->likelihood.rows() != discrete_table_.rows() || d->likelihood.cols() != discrete_table_.cols() ||
        d->likelihood != discrete_table_) {
      throw ConfigError("quadrature does not match the discrete emission table");
    }
    return;
  }
  const auto* g = emissions.gaussian();
  if (exact_ || g->means != means_ || g->std_dev != std_dev_) {
    throw ConfigError("quadrature does not match the gaussian emission model");
  }
}

nlohmann::json MeasurementQuadrature::spec() const {
  return {{"kind", exact_ ? "discrete" : "gaussian"}, {"cells", interior_cells_}};
}

std::vector<MeasurementOutcome> measurement_outcomes(const ControlledHmm& hmm, const Belief& belief,
                                                     std::size_t u, const MeasurementQuadrature& quad) {
  quad.check_matches(hmm.emissions());
  const Belief pred = predict_marginal(hmm, belief, u);
  std::vector<MeasurementOutcome> out;
  out.reserve(quad.cells().size());
  for (const auto& c : quad.cells()) {
    const double p = c.state_prob.dot(pred.probs());
    if (!(p > 0.0)) continue;
    out.push_back({p, c.value, measurement_update(hmm, pred, c.value)});
  }
  return out;
}

}  // namespace sacontrol
