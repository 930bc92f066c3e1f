#include "sacontrol/simplex_grid.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include "sacontrol/errors.hpp"

namespace sacontrol {

namespace {

// C(a, b) for small b; exact while the result fits.
std::uint64_t binomial(std::uint64_t a, std::uint64_t b) {
  if (b > a) return 0;
  b = std::min(b, a - b);
  std::uint64_t c = 1;
  for (std::uint64_t i = 1; i <= b; ++i) {
    const std::uint64_t num = a - b + i;
    if (c > std::numeric_limits<std::uint64_t>::max() / num) return std::numeric_limits<std::uint64_t>::max();
    c = c * num / i;
  }
  return c;
}

void enumerate(std::size_t pos, std::uint64_t remaining, std::uint64_t divisions, std::vector<std::uint64_t>& comp,
               std::vector<Belief>& out) {
  const std::size_t n = comp.size();
  if (pos + 1 == n) {
    comp[pos] = remaining;
    Eigen::VectorXd p(static_cast<Eigen::Index>(n));
    for (std::size_t i = 0; i < n; ++i) {
      p[static_cast<Eigen::Index>(i)] = static_cast<double>(comp[i]) / static_cast<double>(divisions);
    }
    out.push_back(Belief::from_weights(std::move(p)));
    return;
  }
  for (std::uint64_t v = remaining + 1; v-- > 0;) {
    comp[pos] = v;
    enumerate(pos + 1, remaining - v, divisions, comp, out);
  }
}

}  // namespace

std::uint64_t SimplexGrid::count_points(std::size_t n_states, std::uint64_t divisions) {
  if (n_states == 0) return 0;
  return binomial(divisions + n_states - 1, n_states - 1);
}

std::uint64_t SimplexGrid::divisions_for(double resolution) {
  if (!(resolution > 0.0) || resolution > 1.0 || !std::isfinite(resolution)) {
    throw ConfigError("grid resolution must lie in (0, 1]");
  }
  const double inv = 1.0 / resolution;
  const double m = std::round(inv);
  if (std::abs(m - inv) > 1e-9 * std::max(1.0, m)) {
    throw ConfigError("grid resolution " + std::to_string(resolution) + " is not 1/m for an integer m");
  }
  return static_cast<std::uint64_t>(m);
}

SimplexGrid::SimplexGrid(std::size_t n_states, std::uint64_t divisions)
    : n_states_(n_states), divisions_(divisions) {}

SimplexGrid SimplexGrid::build(std::size_t n_states, double resolution, std::uint64_t max_points) {
  if (n_states == 0) throw ConfigError("grid needs at least one state");
  const auto m = divisions_for(resolution);
  const auto count = count_points(n_states, m);
  if (count > max_points) {
    throw SizeGuardError("simplex grid with " + std::to_string(n_states) + " states at resolution 1/" +
                         std::to_string(m) + " has " + std::to_string(count) + " points, guard is " +
                         std::to_string(max_points));
  }
  SimplexGrid grid(n_states, m);
  grid.points_.reserve(count);
  std::vector<std::uint64_t> comp(n_states, 0);
  enumerate(0, m, m, comp, grid.points_);
  return grid;
}

std::size_t SimplexGrid::index_of(std::span<const std::uint64_t> composition) const {
  if (composition.size() != n_states_) throw DomainError("composition has the wrong number of parts");
  std::uint64_t remaining = divisions_;
  std::uint64_t rank = 0;
  for (std::size_t i = 0; i + 1 < n_states_; ++i) {
    const std::uint64_t k = composition[i];
    if (k > remaining) throw DomainError("composition does not sum to the grid divisions");
    const std::uint64_t parts = n_states_ - i - 1;
    // Points that agree on the prefix but have a larger value here come first.
    if (remaining > k) rank += binomial(remaining - k - 1 + parts, parts);
    remaining -= k;
  }
  if (composition[n_states_ - 1] != remaining) throw DomainError("composition does not sum to the grid divisions");
  return static_cast<std::size_t>(rank);
}

std::size_t SimplexGrid::project(const Belief& belief) const {
  if (belief.size() != n_states_) throw DomainError("belief dimension does not match the grid");
  const double m = static_cast<double>(divisions_);
  std::vector<std::uint64_t> comp(n_states_);
  std::vector<double> frac(n_states_);
  std::int64_t assigned = 0;
  for (std::size_t i = 0; i < n_states_; ++i) {
    const double x = belief[i] * m;
    const double f = std::floor(x);
    comp[i] = static_cast<std::uint64_t>(f);
    frac[i] = x - f;
    assigned += static_cast<std::int64_t>(comp[i]);
  }
  // Nearest lattice point with the right total: round up the coordinates with
  // the largest fractional parts. Ties prefer earlier coordinates, which gives
  // the lexicographically largest (lowest-index) candidate.
  std::int64_t deficit = static_cast<std::int64_t>(divisions_) - assigned;
  std::vector<std::size_t> order(n_states_);
  std::iota(order.begin(), order.end(), 0);
  if (deficit > 0) {
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return frac[a] > frac[b]; });
    for (std::size_t k = 0; deficit > 0; k = (k + 1) % n_states_, --deficit) ++comp[order[k]];
  } else if (deficit < 0) {
    // Only reachable through rounding in the belief entries.
    std::reverse(order.begin(), order.end());
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return frac[a] < frac[b]; });
    for (std::size_t k = 0; deficit < 0; k = (k + 1) % n_states_) {
      if (comp[order[k]] > 0) {
        --comp[order[k]];
        ++deficit;
      }
    }
  }
  return index_of(comp);
}

}  // namespace sacontrol
