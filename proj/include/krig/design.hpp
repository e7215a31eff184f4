// Copyright (c) 2026 The krig authors
// SPDX-License-Identifier: Apache-2.0
//
// Experimental designs and deterministic randomness. Everything here is a
// pure function of (parameters, seed): fixed seeds give identical streams
// across runs and platforms.

#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>
#include <numeric>
#include <vector>

#include <Eigen/Core>

#include "krig/errors.hpp"
#include "krig/types.hpp"

namespace krig {

struct Seed {
  std::uint64_t value = 0;
};

/// SplitMix64: a counter-based generator (Weyl sequence through an
/// avalanche mixer). Small state, no warm-up, platform independent.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}
  explicit SplitMix64(Seed seed) : state_(seed.value) {}

  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ull);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
  }

  /// Uniform double in [0, 1), 53 random bits.
  double next_double() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  /// Uniform double in (0, 1]; safe as a log() argument.
  double next_open() { return static_cast<double>((next() >> 11) + 1) * 0x1.0p-53; }

  /// Uniform integer in [0, bound) without modulo bias (rejection).
  std::uint64_t next_below(std::uint64_t bound) {
    const std::uint64_t limit = UINT64_MAX - UINT64_MAX % bound;
    std::uint64_t v;
    do {
      v = next();
    } while (v >= limit);
    return v % bound;
  }

 private:
  std::uint64_t state_;
};

/// Equally spaced grid i/n for i = 1..n on (0, 1].
inline Vector grid_1d(Index n) {
  if (n < 1) throw std::invalid_argument("grid_1d: n must be >= 1");
  Vector x(n);
  for (Index i = 0; i < n; ++i) x(i) = static_cast<double>(i + 1) / static_cast<double>(n);
  return x;
}

/// Base-2 radical inverse of i: the bit-reversal map into [0, 1).
inline double radical_inverse_base2(std::uint64_t i) {
  std::uint64_t v = i;
  v = ((v >> 1) & 0x5555555555555555ull) | ((v & 0x5555555555555555ull) << 1);
  v = ((v >> 2) & 0x3333333333333333ull) | ((v & 0x3333333333333333ull) << 2);
  v = ((v >> 4) & 0x0F0F0F0F0F0F0F0Full) | ((v & 0x0F0F0F0F0F0F0F0Full) << 4);
  v = ((v >> 8) & 0x00FF00FF00FF00FFull) | ((v & 0x00FF00FF00FF00FFull) << 8);
  v = ((v >> 16) & 0x0000FFFF0000FFFFull) | ((v & 0x0000FFFF0000FFFFull) << 16);
  v = (v >> 32) | (v << 32);
  return static_cast<double>(v) * 0x1.0p-64;
}

/// First n points of the 1-D Sobol sequence (the van der Corput base-2
/// sequence), starting at index 1 so every point lies in (0, 1).
inline Vector sobol_1d(Index n) {
  if (n < 1) throw std::invalid_argument("sobol_1d: n must be >= 1");
  Vector x(n);
  for (Index i = 0; i < n; ++i) x(i) = radical_inverse_base2(static_cast<std::uint64_t>(i) + 1);
  return x;
}

/// Latin hypercube sample: per dimension one point uniformly jittered in
/// each of n equal strata, stratum order permuted. Column j consumes the
/// stream after column j-1, so the result is a pure function of the seed.
inline Matrix latin_hypercube(Index n, Index d, Seed seed) {
  if (n < 1 || d < 1) throw std::invalid_argument("latin_hypercube: n and d must be >= 1");
  SplitMix64 rng(seed);
  Matrix x(n, d);
  std::vector<Index> strata(static_cast<std::size_t>(n));
  for (Index j = 0; j < d; ++j) {
    std::iota(strata.begin(), strata.end(), Index{0});
    for (Index i = n - 1; i > 0; --i) {
      const auto k = static_cast<Index>(rng.next_below(static_cast<std::uint64_t>(i) + 1));
      std::swap(strata[static_cast<std::size_t>(i)], strata[static_cast<std::size_t>(k)]);
    }
    for (Index i = 0; i < n; ++i)
      x(i, j) = (static_cast<double>(strata[static_cast<std::size_t>(i)]) + rng.next_double()) /
                static_cast<double>(n);
  }
  return x;
}

/// n i.i.d. N(0, sd^2) draws via the Box-Muller transform.
inline Vector gaussian_noise(Index n, double sd, Seed seed) {
  if (n < 0) throw std::invalid_argument("gaussian_noise: n must be >= 0");
  if (!(sd >= 0)) throw std::invalid_argument("gaussian_noise: sd must be >= 0");
  SplitMix64 rng(seed);
  Vector z(n);
  constexpr double two_pi = 2 * std::numbers::pi;
  for (Index i = 0; i < n; i += 2) {
    const double r = std::sqrt(-2.0 * std::log(rng.next_open()));
    const double angle = two_pi * rng.next_double();
    z(i) = sd * r * std::cos(angle);
    if (i + 1 < n) z(i + 1) = sd * r * std::sin(angle);
  }
  return z;
}

}  // namespace krig
