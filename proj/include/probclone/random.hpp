#pragma once

#include <cstdint>
#include <random>

namespace probclone {

using Rng = std::mt19937_64;

/// SplitMix64 finaliser over (base, stream). Used to give each worker block
/// its own generator so results do not depend on the thread count.
constexpr std::uint64_t derive_seed(std::uint64_t base, std::uint64_t stream) {
  std::uint64_t z = base + 0x9E3779B97F4A7C15ULL * (stream + 1);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

inline Rng make_rng(std::uint64_t base, std::uint64_t stream) { return Rng(derive_seed(base, stream)); }

}  // namespace probclone
