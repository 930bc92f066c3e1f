#pragma once

// Generated by tests/oracles/compute_oracles.py (numpy/scipy, independent of
// the library). Controls are zero-based.

#include <vector>

namespace oracle {

inline const std::vector<double> joint_a0_uniform = {0.26666666666666666, 0.26666666666666666, 0.03333333333333333, 0.03333333333333333, 0.03333333333333333, 0.26666666666666666, 0.03333333333333333, 0.03333333333333333, 0.03333333333333333};
inline const std::vector<double> two_state_posterior = {0.7864077669902912, 0.21359223300970875};
inline constexpr double mixture_density_u2_y3 = 0.1689747378092696;
inline constexpr double column_entropy_a2_e0 = 0.39439769144744274;
inline constexpr double r_tilde_u0_y3 = 0.328677226228936;
inline constexpr double expected_reward_u1 = 0.15402061774805093;
inline constexpr double min_info_gain_u2 = -0.619144485108135;
inline const std::vector<double> three_symbol_table = {0.8413447460685429, 0.15730535589982697, 0.0013498980316301035, 0.15865525393145707, 0.6826894921370859, 0.15865525393145707, 0.0013498980316300933, 0.15730535589982697, 0.8413447460685429};
inline constexpr double three_symbol_entropy_T2_c01 = 1.2168059716596833;
inline constexpr double gaussian_entropy_q = -4.396581551414883;
inline constexpr long long grid_points_3_100 = 5151;
inline constexpr long long project_074_index = 1;
inline constexpr double toy_dp_j0_m4 = 1.0246671746301588;

}  // namespace oracle
