// Copyright (c) 2026 The krig authors
// SPDX-License-Identifier: Apache-2.0
//
// Accuracy and kriging-weight comparison statistics over hyperparameter
// grids. The *diff statistics are entrywise sample statistics of
// |H_theta_tilde - H_ref|; the *kw statistics summarize, over the grid, the
// per-theta scalar max |H_theta - Hbar| where Hbar is the entrywise mean of
// the valid weights.

#pragma once

#include <cmath>
#include <cstddef>
#include <limits>
#include <vector>

#include <Eigen/Core>

#include "krig/errors.hpp"
#include "krig/types.hpp"

namespace krig {

enum class ThetaStatus : std::uint8_t { ok, invalid };

/// Root mean squared error between two equal-length vectors.
template <typename Scalar>
Scalar rmse(const VectorX<Scalar>& pred, const VectorX<Scalar>& truth) {
  if (pred.size() != truth.size())
    throw LengthMismatch("rmse: vectors have different lengths");
  if (pred.size() == 0) throw LengthMismatch("rmse: vectors are empty");
  return std::sqrt((pred - truth).squaredNorm() / static_cast<Scalar>(pred.size()));
}

template <typename Scalar>
struct RmseExtrema {
  Scalar min_rmse = std::numeric_limits<Scalar>::quiet_NaN();
  Scalar max_rmse = std::numeric_limits<Scalar>::quiet_NaN();
  std::size_t best_theta = 0;
  std::size_t worst_theta = 0;
};

/// Best and worst RMSE over the valid cells of one grid. Predictions are
/// H_theta * y_train (+ trend at the test points when supplied); invalid
/// cells are excluded from both extremes.
template <typename Scalar>
RmseExtrema<Scalar> rmse_extrema(const std::vector<MatrixX<Scalar>>& weights,
                                 const std::vector<ThetaStatus>& status,
                                 const VectorX<Scalar>& y_train,
                                 const VectorX<Scalar>& trend_test,
                                 const VectorX<Scalar>& truth_test) {
  if (weights.size() != status.size())
    throw ShapeMismatch("rmse_extrema: weights/status size mismatch");
  RmseExtrema<Scalar> out;
  bool any = false;
  for (std::size_t t = 0; t < weights.size(); ++t) {
    if (status[t] != ThetaStatus::ok) continue;
    VectorX<Scalar> pred = weights[t] * y_train;
    if (trend_test.size() > 0) pred += trend_test;
    const Scalar r = rmse(pred, truth_test);
    if (!any || r < out.min_rmse) {
      out.min_rmse = r;
      out.best_theta = t;
    }
    if (!any || r > out.max_rmse) {
      out.max_rmse = r;
      out.worst_theta = t;
    }
    any = true;
  }
  if (!any) throw AllThetaInvalid("rmse_extrema: no valid theta in the grid");
  return out;
}

template <typename Scalar>
struct WeightDiffStats {
  std::size_t theta_tilde = 0;
  Scalar maxdiff = 0, mindiff = 0, meandiff = 0, sddiff = 0;
};

/// theta_tilde minimizes max |H_theta - H_ref| over the valid cells; the
/// reported statistics are max, min, mean and sample standard deviation of
/// the n*m entrywise values |H_theta_tilde - H_ref|.
template <typename Scalar>
WeightDiffStats<Scalar> weight_diff_stats(const MatrixX<Scalar>& h_ref,
                                          const std::vector<MatrixX<Scalar>>& weights,
                                          const std::vector<ThetaStatus>& status) {
  if (weights.size() != status.size())
    throw ShapeMismatch("weight_diff_stats: weights/status size mismatch");
  bool any = false;
  std::size_t best = 0;
  Scalar best_max = std::numeric_limits<Scalar>::infinity();
  for (std::size_t t = 0; t < weights.size(); ++t) {
    if (status[t] != ThetaStatus::ok) continue;
    if (weights[t].rows() != h_ref.rows() || weights[t].cols() != h_ref.cols())
      throw ShapeMismatch("weight_diff_stats: weight matrix shape differs from reference");
    const Scalar m = (weights[t] - h_ref).cwiseAbs().maxCoeff();
    if (!any || m < best_max) {
      best_max = m;
      best = t;
    }
    any = true;
  }
  if (!any) throw AllThetaInvalid("weight_diff_stats: no valid theta in the grid");

  const MatrixX<Scalar> diff = (weights[best] - h_ref).cwiseAbs();
  const auto count = static_cast<Scalar>(diff.size());
  WeightDiffStats<Scalar> out;
  out.theta_tilde = best;
  out.maxdiff = diff.maxCoeff();
  out.mindiff = diff.minCoeff();
  out.meandiff = diff.mean();
  out.sddiff = diff.size() > 1
                   ? std::sqrt((diff.array() - out.meandiff).square().sum() / (count - 1))
                   : Scalar(0);
  return out;
}

template <typename Scalar>
struct KwSpreadStats {
  Scalar maxkw = 0, minkw = 0, meankw = 0, sdkw = 0;
};

/// Spread of the kriging weights over a grid: with Hbar the entrywise mean
/// of the valid weights and s_theta = max |H_theta - Hbar|, reports max,
/// min, mean and sample standard deviation of {s_theta}.
template <typename Scalar>
KwSpreadStats<Scalar> kw_spread_stats(const std::vector<MatrixX<Scalar>>& weights,
                                      const std::vector<ThetaStatus>& status) {
  if (weights.size() != status.size())
    throw ShapeMismatch("kw_spread_stats: weights/status size mismatch");
  std::vector<std::size_t> valid;
  for (std::size_t t = 0; t < weights.size(); ++t)
    if (status[t] == ThetaStatus::ok) valid.push_back(t);
  if (valid.size() < 2)
    throw InsufficientThetas("kw_spread_stats: need at least two valid thetas");

  // Hbar accumulated as base + mean of deviations: identical weights then
  // give exactly Hbar == H_theta and a spread of exactly zero.
  const MatrixX<Scalar>& base = weights[valid[0]];
  MatrixX<Scalar> delta = MatrixX<Scalar>::Zero(base.rows(), base.cols());
  for (std::size_t i = 1; i < valid.size(); ++i) {
    if (weights[valid[i]].rows() != base.rows() || weights[valid[i]].cols() != base.cols())
      throw ShapeMismatch("kw_spread_stats: weight matrices differ in shape");
    delta += weights[valid[i]] - base;
  }
  MatrixX<Scalar> mean_h = base + delta / static_cast<Scalar>(valid.size());

  std::vector<Scalar> spread;
  spread.reserve(valid.size());
  for (std::size_t t : valid)
    spread.push_back((weights[t] - mean_h).cwiseAbs().maxCoeff());

  KwSpreadStats<Scalar> out;
  out.maxkw = *std::max_element(spread.begin(), spread.end());
  out.minkw = *std::min_element(spread.begin(), spread.end());
  Scalar sum = 0;
  for (Scalar s : spread) sum += s;
  out.meankw = sum / static_cast<Scalar>(spread.size());
  Scalar ss = 0;
  for (Scalar s : spread) ss += (s - out.meankw) * (s - out.meankw);
  out.sdkw = std::sqrt(ss / static_cast<Scalar>(spread.size() - 1));
  return out;
}

/// The full statistics bundle for one kernel family on one benchmark.
struct ComparisonStats {
  double min_rmse = 0, max_rmse = 0;
  double maxdiff = 0, mindiff = 0, meandiff = 0, sddiff = 0;
  double maxkw = 0, minkw = 0, meankw = 0, sdkw = 0;
  std::size_t best_theta = 0;
  std::size_t theta_tilde = 0;
};

}  // namespace krig
