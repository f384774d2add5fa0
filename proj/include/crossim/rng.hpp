#pragma once

#include <cstdint>
#include <random>

namespace crossim {

using Rng = std::mt19937_64;

/// splitmix64 finalizer. Used to turn structured counters into well-mixed
/// 64-bit seeds.
inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

/// Derive the i-th child seed of a parent seed. Children with distinct
/// indices are decorrelated; the same (seed, i) pair always maps to the same
/// child, which is what makes campaigns reproducible.
inline std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t i) {
  return splitmix64(seed + (i + 1) * 0x9E3779B97F4A7C15ULL);
}

inline Rng make_rng(std::uint64_t seed) { return Rng(seed); }

inline double uniform01(Rng& rng) {
  return std::uniform_real_distribution<double>(0.0, 1.0)(rng);
}

inline double uniform_in(Rng& rng, double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(rng);
}

}  // namespace crossim
