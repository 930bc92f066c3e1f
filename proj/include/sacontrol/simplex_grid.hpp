#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "sacontrol/belief.hpp"

namespace sacontrol {

// Lattice points of the probability simplex whose coordinates are multiples
// of 1/divisions, ordered lexicographically from [1, 0, ..., 0] down to
// [0, ..., 0, 1] (descending in the first coordinate, then the second, ...).
class SimplexGrid {
 public:
  static constexpr std::uint64_t kDefaultMaxPoints = 5'000'000;

  // `resolution` must be 1/m for a positive integer m.
  static SimplexGrid build(std::size_t n_states, double resolution, std::uint64_t max_points = kDefaultMaxPoints);

  // C(m + n - 1, n - 1), saturating at UINT64_MAX.
  static std::uint64_t count_points(std::size_t n_states, std::uint64_t divisions);
  static std::uint64_t divisions_for(double resolution);

  std::size_t n_states() const { return n_states_; }
  std::uint64_t divisions() const { return divisions_; }
  double resolution() const { return 1.0 / static_cast<double>(divisions_); }
  std::size_t size() const { return points_.size(); }
  const Belief& point(std::size_t index) const { return points_[index]; }
  const std::vector<Belief>& points() const { return points_; }

  // Grid index of an integer composition of `divisions`.
  std::size_t index_of(std::span<const std::uint64_t> composition) const;

  // Nearest grid point in Euclidean distance; ties go to the lowest index.
  std::size_t project(const Belief& belief) const;

 private:
  SimplexGrid(std::size_t n_states, std::uint64_t divisions);

  std::size_t n_states_;
  std::uint64_t divisions_;
  std::vector<Belief> points_;
};

}  // namespace sacontrol
