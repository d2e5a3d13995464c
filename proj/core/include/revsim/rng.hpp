#pragma once

#include <cmath>
#include <cstdint>
#include <random>

namespace revsim {

using Rng = std::mt19937_64;

// SplitMix64 finalizer. Used to spread user seeds over the full 64-bit space
// and to derive independent child-run seeds inside sweeps:
//   child_seed(master, r) = mix64(master + (r+1) * 0x9E3779B97F4A7C15)
inline std::uint64_t mix64(std::uint64_t z) {
  z += 0x9E3779B97F4A7C15ull;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

inline std::uint64_t child_seed(std::uint64_t master_seed, std::uint64_t run_index) {
  return mix64(master_seed + (run_index + 1) * 0x9E3779B97F4A7C15ull);
}

inline Rng make_rng(std::uint64_t seed) { return Rng(mix64(seed)); }

inline double uniform01(Rng& rng) {
  return std::uniform_real_distribution<double>(0.0, 1.0)(rng);
}

inline bool bernoulli(Rng& rng, double p) {
  if (p <= 0.0) return false;
  if (p >= 1.0) return true;
  return uniform01(rng) < p;
}

// Index in [0, n).
inline std::size_t uniform_index(Rng& rng, std::size_t n) {
  return std::uniform_int_distribution<std::size_t>(0, n - 1)(rng);
}

// Exact binomial sample by CDF inversion. Intended for the small-n*p regime
// of sensing trials (expected count well below 1); cost is O(result).
inline int binomial_small(Rng& rng, std::int64_t n, double p) {
  if (n <= 0 || p <= 0.0) return 0;
  if (p >= 1.0) return static_cast<int>(n);
  const double u = uniform01(rng);
  const double odds = p / (1.0 - p);
  double pk = std::exp(static_cast<double>(n) * std::log1p(-p));  // P(X=0)
  double cdf = pk;
  int k = 0;
  while (u >= cdf && k < n) {
    ++k;
    pk *= odds * static_cast<double>(n - k + 1) / static_cast<double>(k);
    cdf += pk;
  }
  return k;
}

}  // namespace revsim
