// Copyright (c) 2026 The krig authors
// SPDX-License-Identifier: Apache-2.0
//
// Unit-hypersphere embedding. Raw inputs are min-max scaled to [0,1] per
// column, each coordinate is doubled to [cos(pi x), sin(pi x)], and rows
// are normalized (their norm is exactly sqrt(d), each pair having unit
// norm). Rows, not columns, are normalized: points land on the sphere.

#pragma once

#include <cmath>
#include <numbers>
#include <utility>

#include <Eigen/Core>

#include "krig/errors.hpp"
#include "krig/types.hpp"

namespace krig {

template <typename Scalar>
struct ColumnBounds {
  VectorX<Scalar> lo;
  VectorX<Scalar> hi;
  Index dim() const { return lo.size(); }
};

/// Per-column [min, max] of a training matrix. A constant column cannot be
/// scaled and is rejected.
template <typename Derived>
ColumnBounds<typename Derived::Scalar> fit_minmax_bounds(
    const Eigen::MatrixBase<Derived>& x) {
  using Scalar = typename Derived::Scalar;
  ColumnBounds<Scalar> bounds{x.colwise().minCoeff().transpose(),
                              x.colwise().maxCoeff().transpose()};
  for (Index j = 0; j < bounds.dim(); ++j)
    if (!(bounds.hi(j) > bounds.lo(j))) throw DegenerateColumn(j);
  return bounds;
}

/// Affinely map each column onto [0,1] with the given bounds, clipping
/// anything outside (test data scaled with training bounds).
template <typename Derived>
MatrixX<typename Derived::Scalar> minmax_scale(
    const Eigen::MatrixBase<Derived>& x,
    const ColumnBounds<typename Derived::Scalar>& bounds) {
  using Scalar = typename Derived::Scalar;
  if (x.cols() != bounds.dim())
    throw DimensionMismatch("minmax_scale: bounds dimension does not match data");
  for (Index j = 0; j < bounds.dim(); ++j)
    if (!(bounds.hi(j) > bounds.lo(j))) throw DegenerateColumn(j);
  MatrixX<Scalar> scaled(x.rows(), x.cols());
  for (Index j = 0; j < x.cols(); ++j) {
    const Scalar span = bounds.hi(j) - bounds.lo(j);
    scaled.col(j) = ((x.col(j).array() - bounds.lo(j)) / span)
                        .cwiseMax(Scalar(0))
                        .cwiseMin(Scalar(1));
  }
  return scaled;
}

template <typename Scalar>
struct MinMaxScaled {
  MatrixX<Scalar> scaled;
  ColumnBounds<Scalar> bounds;
};

/// Fit bounds on `x` and scale it.
template <typename Derived>
MinMaxScaled<typename Derived::Scalar> minmax_scale(const Eigen::MatrixBase<Derived>& x) {
  auto bounds = fit_minmax_bounds(x);
  auto scaled = minmax_scale(x, bounds);
  return {std::move(scaled), std::move(bounds)};
}

/// Map n x d inputs in [0,1]^d onto the unit hypersphere in R^(2d):
/// coordinate x_j becomes the pair [cos(pi x_j), sin(pi x_j)] and the row
/// is divided by its norm.
template <typename Derived>
MatrixX<typename Derived::Scalar> hypersphere_embed(const Eigen::MatrixBase<Derived>& x) {
  using Scalar = typename Derived::Scalar;
  constexpr Scalar pi = std::numbers::pi_v<Scalar>;
  if (x.size() > 0 && (x.minCoeff() < Scalar(0) - Scalar(1e-9) ||
                       x.maxCoeff() > Scalar(1) + Scalar(1e-9)))
    throw std::invalid_argument("hypersphere_embed: inputs must lie in [0,1]");
  MatrixX<Scalar> e(x.rows(), 2 * x.cols());
  for (Index j = 0; j < x.cols(); ++j) {
    e.col(2 * j) = (pi * x.col(j).array()).cos();
    e.col(2 * j + 1) = (pi * x.col(j).array()).sin();
  }
  for (Index i = 0; i < e.rows(); ++i) e.row(i) /= e.row(i).norm();
  return e;
}

/// Inputs embedded on the unit hypersphere together with their responses.
template <typename Scalar>
struct EmbeddedDataset {
  MatrixX<Scalar> inputs;  // n x 2*source_dim, unit rows
  VectorX<Scalar> responses;
  Index source_dim = 0;
};

}  // namespace krig
