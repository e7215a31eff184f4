// Copyright (c) 2026 The krig authors
// SPDX-License-Identifier: Apache-2.0

#include "krig/stats.hpp"

#include <cmath>
#include <vector>

#include <doctest.h>

#include "test_helpers.hpp"

using namespace krig;

namespace {

std::vector<ThetaStatus> all_ok(std::size_t n) {
  return std::vector<ThetaStatus>(n, ThetaStatus::ok);
}

}  // namespace

TEST_SUITE_BEGIN("stats");

TEST_CASE("rmse basics") {
  Vector a(3), b(3);
  a << 1, 2, 3;
  b << 1, 2, 3;
  CHECK(rmse(a, b) == 0.0);
  CHECK(rmse(Vector(a.array() + 1.0), b) == doctest::Approx(1.0).epsilon(1e-15));

  Vector p(2), t(2);
  p << 3, 4;
  t << 0, 0;
  CHECK(rmse(p, t) == doctest::Approx(std::sqrt(12.5)).epsilon(1e-15));
  CHECK_THROWS_AS(rmse(a, Vector(Vector::Ones(2))), LengthMismatch);
  CHECK_THROWS_AS(rmse(Vector(), Vector()), LengthMismatch);
}

TEST_CASE("rmse_extrema on a single theta collapses to one value") {
  std::vector<Matrix> h{Matrix::Identity(3, 3)};
  Vector y(3);
  y << 1, 2, 3;
  Vector truth(3);
  truth << 1, 2, 4;
  const auto ex = rmse_extrema(h, all_ok(1), y, Vector(), truth);
  CHECK(ex.min_rmse == ex.max_rmse);
  CHECK(ex.best_theta == 0);
}

TEST_CASE("rmse_extrema picks the exhaustive argmin and skips invalid cells") {
  const Index n = 6, m = 4;
  Vector y = test::random_matrix(n, 1, 1);
  Vector truth = test::random_matrix(m, 1, 2);
  std::vector<Matrix> h;
  for (std::uint64_t t = 0; t < 5; ++t) h.push_back(test::random_matrix(m, n, 10 + t));
  auto status = all_ok(5);
  status[2] = ThetaStatus::invalid;

  const auto ex = rmse_extrema(h, status, y, Vector(), truth);
  double best = std::numeric_limits<double>::infinity();
  double worst = -best;
  std::size_t best_at = 0;
  for (std::size_t t = 0; t < 5; ++t) {
    if (t == 2) continue;
    const double r = rmse(Vector(h[t] * y), truth);
    if (r < best) {
      best = r;
      best_at = t;
    }
    worst = std::max(worst, r);
  }
  CHECK(ex.min_rmse == doctest::Approx(best));
  CHECK(ex.max_rmse == doctest::Approx(worst));
  CHECK(ex.best_theta == best_at);

  std::vector<ThetaStatus> none(5, ThetaStatus::invalid);
  CHECK_THROWS_AS(rmse_extrema(h, none, y, Vector(), truth), AllThetaInvalid);
}

TEST_CASE("rmse_extrema adds the trend at the test points") {
  std::vector<Matrix> h{Matrix::Zero(2, 2)};
  Vector y(2), trend(2), truth(2);
  y << 5, 5;
  trend << 1, 2;
  truth << 1, 2;
  const auto ex = rmse_extrema(h, all_ok(1), y, trend, truth);
  CHECK(ex.min_rmse == 0.0);
}

TEST_CASE("weight_diff_stats against itself is identically zero") {
  const Matrix h = test::random_matrix(4, 6, 21);
  std::vector<Matrix> grid{test::random_matrix(4, 6, 22), h, test::random_matrix(4, 6, 23)};
  const auto stats = weight_diff_stats(h, grid, all_ok(3));
  CHECK(stats.theta_tilde == 1);
  CHECK(stats.maxdiff == 0.0);
  CHECK(stats.mindiff == 0.0);
  CHECK(stats.meandiff == 0.0);
  CHECK(stats.sddiff == 0.0);
}

TEST_CASE("weight_diff_stats picks the smaller max difference") {
  const Matrix h = Matrix::Zero(2, 2);
  std::vector<Matrix> grid{Matrix::Constant(2, 2, 0.3), Matrix::Constant(2, 2, 0.2)};
  const auto stats = weight_diff_stats(h, grid, all_ok(2));
  CHECK(stats.theta_tilde == 1);
  CHECK(stats.maxdiff == doctest::Approx(0.2));
}

TEST_CASE("weight_diff_stats arithmetic on a two-entry difference") {
  const Matrix h = Matrix::Zero(1, 2);
  Matrix other(1, 2);
  other << 0.1, -0.1;
  std::vector<Matrix> grid{other};
  const auto stats = weight_diff_stats(h, grid, all_ok(1));
  CHECK(stats.maxdiff == doctest::Approx(0.1).epsilon(1e-15));
  CHECK(stats.mindiff == doctest::Approx(0.1).epsilon(1e-15));
  CHECK(stats.meandiff == doctest::Approx(0.1).epsilon(1e-15));
  CHECK(stats.sddiff == doctest::Approx(0.0).epsilon(1e-15));
}

TEST_CASE("weight_diff_stats rejects mismatched shapes") {
  const Matrix h = Matrix::Zero(2, 2);
  std::vector<Matrix> grid{Matrix::Zero(3, 2)};
  CHECK_THROWS_AS(weight_diff_stats(h, grid, all_ok(1)), ShapeMismatch);
}

TEST_CASE("kw_spread_stats zeros for identical weights") {
  const Matrix h = test::random_matrix(3, 5, 31);
  std::vector<Matrix> grid{h, h, h};
  const auto stats = kw_spread_stats(grid, all_ok(3));
  CHECK(stats.maxkw == 0.0);
  CHECK(stats.minkw == 0.0);
  CHECK(stats.meankw == 0.0);
  CHECK(stats.sdkw == 0.0);
}

TEST_CASE("kw_spread_stats arithmetic for a constant offset pair") {
  const Matrix h = test::random_matrix(2, 3, 32);
  std::vector<Matrix> grid{h, Matrix(h.array() + 0.2)};
  const auto stats = kw_spread_stats(grid, all_ok(2));
  CHECK(stats.maxkw == doctest::Approx(0.1).epsilon(1e-12));
  CHECK(stats.minkw == doctest::Approx(0.1).epsilon(1e-12));
  CHECK(stats.meankw == doctest::Approx(0.1).epsilon(1e-12));
  CHECK(stats.sdkw == doctest::Approx(0.0).epsilon(1e-12));
}

TEST_CASE("kw_spread_stats needs at least two valid thetas") {
  std::vector<Matrix> grid{Matrix::Zero(2, 2), Matrix::Zero(2, 2)};
  std::vector<ThetaStatus> status{ThetaStatus::ok, ThetaStatus::invalid};
  CHECK_THROWS_AS(kw_spread_stats(grid, status), InsufficientThetas);
}

TEST_CASE("ordering invariants hold on random grids") {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    std::vector<Matrix> grid;
    for (std::uint64_t t = 0; t < 6; ++t) grid.push_back(test::random_matrix(3, 4, seed * 50 + t));
    const Matrix h_ref = test::random_matrix(3, 4, 4000 + seed);
    const auto diff = weight_diff_stats(h_ref, grid, all_ok(6));
    CHECK(diff.mindiff <= diff.meandiff);
    CHECK(diff.meandiff <= diff.maxdiff);
    const auto kw = kw_spread_stats(grid, all_ok(6));
    CHECK(kw.minkw <= kw.meankw);
    CHECK(kw.meankw <= kw.maxkw);
  }
}

TEST_CASE("statistics are invariant under a common training permutation") {
  const Index m = 3, n = 5;
  std::vector<Matrix> grid;
  for (std::uint64_t t = 0; t < 4; ++t) grid.push_back(test::random_matrix(m, n, 70 + t));
  const Matrix h_ref = grid[0];

  std::vector<Index> perm{4, 2, 0, 3, 1};
  const auto permute = [&](const Matrix& h) {
    Matrix out(m, n);
    for (Index j = 0; j < n; ++j) out.col(j) = h.col(perm[static_cast<std::size_t>(j)]);
    return out;
  };
  std::vector<Matrix> permuted;
  for (const auto& h : grid) permuted.push_back(permute(h));

  const auto a = weight_diff_stats(h_ref, grid, all_ok(4));
  const auto b = weight_diff_stats(permute(h_ref), permuted, all_ok(4));
  CHECK(a.maxdiff == b.maxdiff);
  CHECK(a.mindiff == b.mindiff);
  CHECK(a.meandiff == doctest::Approx(b.meandiff).epsilon(1e-15));
  CHECK(a.sddiff == doctest::Approx(b.sddiff).epsilon(1e-15));

  const auto ka = kw_spread_stats(grid, all_ok(4));
  const auto kb = kw_spread_stats(permuted, all_ok(4));
  CHECK(ka.maxkw == doctest::Approx(kb.maxkw).epsilon(1e-15));
  CHECK(ka.sdkw == doctest::Approx(kb.sdkw).epsilon(1e-15));
}

TEST_CASE("kw_spread_stats has set semantics over the grid order") {
  std::vector<Matrix> grid;
  for (std::uint64_t t = 0; t < 5; ++t) grid.push_back(test::random_matrix(2, 3, 90 + t));
  std::vector<Matrix> shuffled{grid[3], grid[0], grid[4], grid[1], grid[2]};
  const auto a = kw_spread_stats(grid, all_ok(5));
  const auto b = kw_spread_stats(shuffled, all_ok(5));
  CHECK(a.maxkw == doctest::Approx(b.maxkw).epsilon(1e-15));
  CHECK(a.minkw == doctest::Approx(b.minkw).epsilon(1e-15));
  CHECK(a.meankw == doctest::Approx(b.meankw).epsilon(1e-15));
  CHECK(a.sdkw == doctest::Approx(b.sdkw).epsilon(1e-15));
}

TEST_SUITE_END();
