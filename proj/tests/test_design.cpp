// Copyright (c) 2026 The krig authors
// SPDX-License-Identifier: Apache-2.0

#include "krig/design.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <vector>

#include <doctest.h>

using namespace krig;

TEST_SUITE_BEGIN("design");

TEST_CASE("grid_1d spans (0, 1] with equal spacing") {
  CHECK(grid_1d(1)(0) == 1.0);
  const Vector g = grid_1d(4);
  CHECK(g(0) == 0.25);
  CHECK(g(1) == 0.5);
  CHECK(g(2) == 0.75);
  CHECK(g(3) == 1.0);

  const Vector big = grid_1d(150);
  for (Index i = 1; i < big.size(); ++i)
    CHECK(big(i) - big(i - 1) == doctest::Approx(1.0 / 150).epsilon(1e-14));
  CHECK_THROWS_AS(grid_1d(0), std::invalid_argument);
}

TEST_CASE("sobol_1d reproduces the radical-inverse prefix") {
  CHECK(sobol_1d(1)(0) == 0.5);
  const Vector s = sobol_1d(4);
  CHECK(s(0) == 0.5);
  CHECK(s(1) == 0.25);
  CHECK(s(2) == 0.75);
  CHECK(s(3) == 0.125);
}

TEST_CASE("sobol_1d points are distinct and inside (0,1)") {
  const Vector s = sobol_1d(200);
  std::set<double> seen;
  for (Index i = 0; i < s.size(); ++i) {
    CHECK(s(i) > 0.0);
    CHECK(s(i) < 1.0);
    seen.insert(s(i));
  }
  CHECK(seen.size() == 200);
}

TEST_CASE("sobol_1d(2^k) equals the dyadic set from a brute-force oracle") {
  // oracle: radical inverse by explicit bit loop
  const auto oracle = [](std::uint64_t i) {
    double x = 0.0, f = 0.5;
    while (i) {
      x += f * static_cast<double>(i & 1u);
      i >>= 1;
      f *= 0.5;
    }
    return x;
  };
  for (int k = 1; k <= 6; ++k) {
    const Index n = Index{1} << k;
    Vector s = sobol_1d(n);
    std::vector<double> got(s.begin(), s.end());
    std::vector<double> want;
    for (Index i = 1; i <= n; ++i) want.push_back(oracle(static_cast<std::uint64_t>(i)));
    std::sort(got.begin(), got.end());
    std::sort(want.begin(), want.end());
    CHECK(got == want);
  }
}

TEST_CASE("latin_hypercube stratifies each dimension") {
  for (std::uint64_t seed : {1ull, 99ull}) {
    const Index n = 23, d = 4;
    const Matrix x = latin_hypercube(n, d, Seed{seed});
    for (Index j = 0; j < d; ++j) {
      std::vector<bool> hit(static_cast<std::size_t>(n), false);
      for (Index i = 0; i < n; ++i) {
        const auto stratum = static_cast<std::size_t>(std::floor(x(i, j) * n));
        CHECK(stratum < static_cast<std::size_t>(n));
        CHECK_FALSE(hit[stratum]);
        hit[stratum] = true;
      }
    }
  }
  const Matrix single = latin_hypercube(1, 3, Seed{5});
  CHECK(single.minCoeff() >= 0.0);
  CHECK(single.maxCoeff() < 1.0);
}

TEST_CASE("latin_hypercube is deterministic in the seed") {
  const Matrix a = latin_hypercube(17, 3, Seed{123});
  const Matrix b = latin_hypercube(17, 3, Seed{123});
  const Matrix c = latin_hypercube(17, 3, Seed{124});
  CHECK(a == b);
  CHECK(a != c);
}

TEST_CASE("gaussian_noise basic contracts") {
  const Vector zero = gaussian_noise(50, 0.0, Seed{3});
  CHECK(zero.cwiseAbs().maxCoeff() == 0.0);

  const Vector a = gaussian_noise(101, 1.0, Seed{7});
  const Vector b = gaussian_noise(101, 1.0, Seed{7});
  CHECK(a == b);
  CHECK(a != gaussian_noise(101, 1.0, Seed{8}));
  CHECK_THROWS_AS(gaussian_noise(5, -1.0, Seed{1}), std::invalid_argument);
}

TEST_CASE("gaussian_noise sample moments at n = 1e5") {
  const Index n = 100000;
  const Vector z = gaussian_noise(n, 1.0, Seed{2024});
  const double mean = z.mean();
  const double sd = std::sqrt((z.array() - mean).square().sum() / static_cast<double>(n - 1));
  CHECK(std::abs(mean) < 0.02);
  CHECK(sd > 0.99);
  CHECK(sd < 1.01);
  // regression pin for this exact seed (values observed on first run)
  CHECK(mean == doctest::Approx(0.00013599831688768574).epsilon(1e-9));
  CHECK(sd == doctest::Approx(1.0020959466554014).epsilon(1e-9));
}

TEST_CASE("splitmix64 bounded draws are unbiased-by-construction and in range") {
  SplitMix64 rng(Seed{77});
  for (int i = 0; i < 1000; ++i) {
    const std::uint64_t v = rng.next_below(7);
    CHECK(v < 7);
  }
}

TEST_SUITE_END();
