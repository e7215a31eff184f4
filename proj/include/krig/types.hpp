// Copyright (c) 2026 The krig authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <Eigen/Core>

namespace krig {

using Eigen::Index;

template <typename Scalar>
using MatrixX = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;

template <typename Scalar>
using VectorX = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

using Matrix = MatrixX<double>;
using Vector = VectorX<double>;

namespace defaults {
/// Nugget variance added to training kernels when nothing else is requested.
inline constexpr double nugget = 1e-8;
/// A kernel whose smallest off-diagonal correlation gap falls at or below
/// this value is treated as flat (degenerate).
inline constexpr double eps_flat = 1e-10;
/// Relative tolerance under which a matrix handed to cholesky() must be
/// symmetric.
inline constexpr double symmetry_tol = 1e-12;
}  // namespace defaults

}  // namespace krig
