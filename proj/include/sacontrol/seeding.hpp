#pragma once

#include <cstdint>

namespace sacontrol {

// SplitMix64 finaliser.
constexpr std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ull;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
  return x ^ (x >> 31);
}

// Seed of stream `index` under `master`:
//   splitmix64(master ^ splitmix64(index)).
// Episode i of a run uses derive_seed(master, i); sub-streams within an
// episode use derive_seed(episode_seed, k).
constexpr std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index) {
  return splitmix64(master ^ splitmix64(index));
}

}  // namespace sacontrol
