// Copyright (c) 2026 The krig authors
// SPDX-License-Identifier: Apache-2.0

#include "krig/linalg.hpp"

#include <cmath>

#include <doctest.h>
#include <Eigen/Eigenvalues>

#include "test_helpers.hpp"

using namespace krig;

TEST_SUITE_BEGIN("linalg");

TEST_CASE("cholesky of the identity is the identity") {
  const Matrix identity = Matrix::Identity(3, 3);
  const auto factor = cholesky(identity);
  CHECK(factor.lower.isApprox(identity));
}

TEST_CASE("cholesky reproduces a hand-checked 2x2 factor") {
  Matrix a(2, 2);
  a << 4, 2, 2, 3;
  const auto factor = cholesky(a);
  CHECK(factor.lower(0, 0) == doctest::Approx(2.0).epsilon(1e-14));
  CHECK(factor.lower(1, 0) == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(factor.lower(1, 1) == doctest::Approx(std::sqrt(2.0)).epsilon(1e-14));
  CHECK(factor.lower(0, 1) == 0.0);
  const Matrix rebuilt = factor.lower * factor.lower.transpose();
  CHECK((rebuilt - a).norm() / a.norm() < 1e-10);
}

TEST_CASE("cholesky rejects an indefinite matrix with the failing pivot") {
  Matrix a(2, 2);
  a << 1, 2, 2, 1;  // eigenvalues 3 and -1
  try {
    cholesky(a);
    FAIL("expected NotPositiveDefinite");
  } catch (const NotPositiveDefinite& err) {
    CHECK(err.pivot_index == 1);
    CHECK(err.pivot_value <= 0.0);
  }
}

TEST_CASE("cholesky input validation") {
  CHECK_THROWS_AS(cholesky(Matrix::Ones(2, 3)), DimensionMismatch);
  Matrix asym(2, 2);
  asym << 1, 0.5, 0.2, 1;
  CHECK_THROWS_AS(cholesky(asym), std::invalid_argument);
}

TEST_CASE("solve against the identity and a residual oracle") {
  const auto eye = cholesky(Matrix(Matrix::Identity(2, 2)));
  Matrix b(2, 1);
  b << 3, 5;
  CHECK(solve(eye, b).isApprox(b));

  Matrix a(2, 2);
  a << 4, 2, 2, 3;
  Matrix rhs(2, 1);
  rhs << 1, 0;
  const Matrix x = solve(cholesky(a), rhs);
  CHECK((a * x - rhs).cwiseAbs().maxCoeff() < 1e-12);

  CHECK_THROWS_AS(solve(cholesky(a), Matrix(Matrix::Ones(3, 1))), DimensionMismatch);
}

TEST_CASE("factorization and solve hold on random SPD instances") {
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    const Index n = 2 + static_cast<Index>(seed % 17);
    const Matrix a = test::random_spd(n, 1000 + seed);
    const auto factor = cholesky(a);
    CHECK((factor.lower * factor.lower.transpose() - a).norm() / a.norm() < 1e-10);
    CHECK((factor.lower.diagonal().array() > 0).all());

    const Matrix b = test::random_matrix(n, 3, 2000 + seed);
    const Matrix x = solve(factor, b);
    CHECK((a * x - b).cwiseAbs().maxCoeff() < 1e-9);
  }
}

TEST_CASE("cholesky outcome agrees with an eigenvalue sign oracle") {
  int failures_seen = 0;
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    const Index n = 2 + static_cast<Index>(seed % 2);  // 2x2 and 3x3
    Matrix m = test::random_matrix(n, n, 3000 + seed);
    Matrix a = 0.5 * (m + m.transpose());
    const Eigen::SelfAdjointEigenSolver<Matrix> eig(a);
    const double min_eig = eig.eigenvalues().minCoeff();
    if (std::abs(min_eig) < 1e-10 * a.norm()) continue;  // skip borderline draws
    bool factored = true;
    try {
      cholesky(a);
    } catch (const NotPositiveDefinite&) {
      factored = false;
    }
    CHECK(factored == (min_eig > 0));
    if (!factored) ++failures_seen;
  }
  CHECK(failures_seen > 0);  // the oracle must have exercised both outcomes
}

TEST_CASE("min_offdiag_correlation_gap examples") {
  CHECK(min_offdiag_correlation_gap(Matrix(Matrix::Identity(2, 2))) == doctest::Approx(1.0));
  CHECK(min_offdiag_correlation_gap(Matrix(Matrix::Ones(2, 2))) == doctest::Approx(0.0));
  Matrix k(2, 2);
  k << 1, 0.94, 0.94, 1;
  CHECK(min_offdiag_correlation_gap(k) == doctest::Approx(0.06).epsilon(1e-12));
  // single entry: no off-diagonal pair
  CHECK(min_offdiag_correlation_gap(Matrix(Matrix::Identity(1, 1))) == 1.0);
}

TEST_CASE("min_offdiag_correlation_gap rejects a non-positive diagonal") {
  Matrix k(2, 2);
  k << 1, 0, 0, 0;
  CHECK_THROWS_AS(min_offdiag_correlation_gap(k), NonPositiveDiagonal);
}

TEST_SUITE_END();
