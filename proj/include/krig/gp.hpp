// Copyright (c) 2026 The krig authors
// SPDX-License-Identifier: Apache-2.0
//
// Gaussian-process regression on top of the kernel modules: kriging
// weights, posterior mean/covariance, and ordinary-least-squares linear
// trend handling (residual kriging).

#pragma once

#include <string>
#include <utility>

#include <Eigen/Core>
#include <Eigen/QR>

#include "krig/errors.hpp"
#include "krig/kernels.hpp"
#include "krig/linalg.hpp"
#include "krig/types.hpp"

namespace krig {

enum class TrendKind { none, linear };

/// One regression configuration: kernel, nugget variance, trend.
template <typename Scalar>
struct GPConfig {
  KernelSpec<Scalar> kernel;
  Scalar nugget = Scalar(defaults::nugget);
  TrendKind trend = TrendKind::none;
};

/// Kriging weights H = K_sf (K_ff + nugget I)^{-1}, computed through a
/// Cholesky solve (never an explicit inverse). Rows map training responses
/// to one prediction each.
template <typename Scalar>
MatrixX<Scalar> kriging_weights(const MatrixX<Scalar>& kff, const MatrixX<Scalar>& ksf,
                                Scalar nugget) {
  const Index n = kff.rows();
  if (kff.cols() != n) throw DimensionMismatch("kriging_weights: K_ff must be square");
  if (ksf.cols() != n)
    throw ShapeMismatch("kriging_weights: K_sf has " + std::to_string(ksf.cols()) +
                        " columns, expected " + std::to_string(n));
  if (!(nugget >= Scalar(0)))
    throw std::invalid_argument("kriging_weights: nugget must be >= 0");
  MatrixX<Scalar> a = kff;
  a.diagonal().array() += nugget;
  CholeskyFactor<Scalar> factor = cholesky(a);
  return solve(factor, MatrixX<Scalar>(ksf.transpose())).transpose();
}

template <typename Scalar>
struct PosteriorSummary {
  VectorX<Scalar> mean;        // length m
  MatrixX<Scalar> covariance;  // m x m, symmetric
};

/// Posterior of the test response: mean H y and covariance
/// K_ss - K_sf (K_ff + nugget I)^{-1} K_fs. The covariance is symmetrized
/// after assembly; tiny negative diagonal entries are roundoff.
template <typename Scalar>
PosteriorSummary<Scalar> posterior(const MatrixX<Scalar>& kff, const MatrixX<Scalar>& ksf,
                                   const MatrixX<Scalar>& kss, const VectorX<Scalar>& y,
                                   Scalar nugget) {
  const Index n = kff.rows(), m = ksf.rows();
  if (kss.rows() != m || kss.cols() != m)
    throw ShapeMismatch("posterior: K_ss must be m x m");
  if (y.size() != n) throw LengthMismatch("posterior: y must have one entry per training row");
  MatrixX<Scalar> h = kriging_weights(kff, ksf, nugget);
  PosteriorSummary<Scalar> out;
  out.mean = h * y;
  MatrixX<Scalar> c = kss - h * ksf.transpose();
  out.covariance = ((c + c.transpose()) / Scalar(2)).eval();
  return out;
}

/// Linear trend beta0 + x . beta fitted by ordinary least squares.
template <typename Scalar>
struct TrendModel {
  VectorX<Scalar> beta;  // intercept first, then one coefficient per input column
};

template <typename Scalar>
struct TrendFit {
  TrendModel<Scalar> model;
  VectorX<Scalar> residuals;
};

/// OLS fit of y on [1, X]. The trend is subtracted before zero-mean GP
/// regression and re-added at prediction time, so the kriging weights stay
/// exactly K_sf (K_ff + nugget I)^{-1}. Uses the minimum-norm
/// least-squares solution, so a degenerate column (e.g. all zeros) simply
/// contributes nothing rather than failing the fit.
template <typename Scalar>
TrendFit<Scalar> fit_trend(const MatrixX<Scalar>& x, const VectorX<Scalar>& y) {
  const Index n = x.rows(), d = x.cols();
  if (y.size() != n) throw LengthMismatch("fit_trend: response length does not match rows");
  if (n <= d + 1)
    throw RankDeficientDesign("fit_trend: need more rows than coefficients");
  MatrixX<Scalar> design(n, d + 1);
  design.col(0).setOnes();
  design.rightCols(d) = x;
  Eigen::CompleteOrthogonalDecomposition<MatrixX<Scalar>> cod(design);
  TrendFit<Scalar> fit;
  fit.model.beta = cod.solve(y);
  fit.residuals = y - design * fit.model.beta;
  return fit;
}

template <typename Scalar>
VectorX<Scalar> trend_predict(const TrendModel<Scalar>& model, const MatrixX<Scalar>& x) {
  if (x.cols() + 1 != model.beta.size())
    throw DimensionMismatch("trend_predict: input dimension does not match coefficients");
  return (x * model.beta.tail(x.cols())).array() + model.beta(0);
}

}  // namespace krig
