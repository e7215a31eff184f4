// Copyright (c) 2026 The krig authors
// SPDX-License-Identifier: Apache-2.0
//
// Dense symmetric linear algebra used throughout the library: Cholesky
// factorization with pivot diagnostics, triangular solves, and the
// flat-kernel diagnostic.

#pragma once

#include <cmath>
#include <utility>

#include <Eigen/Core>

#include "krig/errors.hpp"
#include "krig/types.hpp"

namespace krig {

/// Lower-triangular factor L of A = L * L^T.
template <typename Scalar>
struct CholeskyFactor {
  MatrixX<Scalar> lower;
  Index dim() const { return lower.rows(); }
};

/// Factor a symmetric positive definite matrix as A = L * L^T.
///
/// The input is symmetrized as (A + A^T)/2 before factoring so that
/// rounding in kernel evaluation order cannot flip the outcome; asymmetry
/// beyond `symmetry_tol` (relative to the largest entry) is rejected.
/// Throws NotPositiveDefinite with the zero-based pivot index when a
/// pivot <= 0 is encountered. No jitter is ever added here; regularization
/// is always the caller's explicit nugget.
template <typename Derived>
CholeskyFactor<typename Derived::Scalar> cholesky(
    const Eigen::MatrixBase<Derived>& a,
    typename Derived::Scalar symmetry_tol =
        static_cast<typename Derived::Scalar>(defaults::symmetry_tol)) {
  using Scalar = typename Derived::Scalar;
  const Index n = a.rows();
  if (a.cols() != n) throw DimensionMismatch("cholesky: matrix must be square");

  MatrixX<Scalar> m = a;
  if (n > 0) {
    const Scalar scale = std::max(Scalar(1), m.cwiseAbs().maxCoeff());
    if ((m - m.transpose()).cwiseAbs().maxCoeff() > symmetry_tol * scale)
      throw std::invalid_argument("cholesky: matrix is not symmetric");
  }

  MatrixX<Scalar> lower = ((m + m.transpose()) / Scalar(2))
                              .template triangularView<Eigen::Lower>();
  for (Index j = 0; j < n; ++j) {
    if (j > 0) {
      lower.col(j).tail(n - j).noalias() -=
          lower.block(j, 0, n - j, j) * lower.row(j).head(j).transpose();
    }
    const Scalar pivot = lower(j, j);
    if (!(pivot > Scalar(0)) || !std::isfinite(pivot))
      throw NotPositiveDefinite(j, static_cast<double>(pivot));
    const Scalar root = std::sqrt(pivot);
    lower(j, j) = root;
    if (j + 1 < n) lower.col(j).tail(n - j - 1) /= root;
  }
  return {std::move(lower)};
}

/// Solve (L * L^T) X = B by forward then back substitution.
template <typename Scalar, typename Derived>
MatrixX<Scalar> solve(const CholeskyFactor<Scalar>& factor,
                      const Eigen::MatrixBase<Derived>& b) {
  if (b.rows() != factor.dim())
    throw DimensionMismatch("solve: right-hand side has " + std::to_string(b.rows()) +
                            " rows, factor has dimension " + std::to_string(factor.dim()));
  MatrixX<Scalar> x = b;
  factor.lower.template triangularView<Eigen::Lower>().solveInPlace(x);
  factor.lower.transpose().template triangularView<Eigen::Upper>().solveInPlace(x);
  return x;
}

/// Smallest off-diagonal correlation gap min_{i != j} 1 - K_ij / sqrt(K_ii K_jj).
///
/// A result at or below eps_flat flags a degenerate ("flat") kernel whose
/// correlation is numerically 1 at non-zero distance. Matrices with fewer
/// than two rows have no off-diagonal pair and report 1 by convention.
template <typename Derived>
typename Derived::Scalar min_offdiag_correlation_gap(
    const Eigen::MatrixBase<Derived>& k) {
  using Scalar = typename Derived::Scalar;
  const Index n = k.rows();
  if (k.cols() != n)
    throw DimensionMismatch("min_offdiag_correlation_gap: matrix must be square");
  for (Index i = 0; i < n; ++i)
    if (!(k(i, i) > Scalar(0))) throw NonPositiveDiagonal(i);
  if (n < 2) return Scalar(1);

  VectorX<Scalar> inv_root =
      k.diagonal().cwiseSqrt().cwiseInverse();
  Scalar max_corr = std::numeric_limits<Scalar>::lowest();
  for (Index j = 0; j < n; ++j)
    for (Index i = j + 1; i < n; ++i)
      max_corr = std::max(max_corr, k(i, j) * inv_root(i) * inv_root(j));
  return Scalar(1) - max_corr;
}

}  // namespace krig
