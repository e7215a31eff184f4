// Copyright (c) 2026 The krig authors
// SPDX-License-Identifier: Apache-2.0
//
// Kernel evaluation: the Matern family in its half-integer closed forms
// (plus the RBF limit), the ReLU dual activation, the layer recursion that
// produces the deep-network kernel, and the hyperparameter validity scan.

#pragma once

#include <cmath>
#include <limits>
#include <numbers>
#include <optional>
#include <variant>
#include <vector>

#include <Eigen/Core>

#include "krig/errors.hpp"
#include "krig/linalg.hpp"
#include "krig/types.hpp"

namespace krig {

/// Matern kernel parameters. `nu` must be one of 0.5, 1.5, 2.5 or infinity
/// (the RBF limit); `rho` is the length scale and `sigma2` the marginal
/// variance.
template <typename Scalar>
struct MaternSpec {
  Scalar nu = Scalar(1.5);
  Scalar rho = Scalar(1);
  Scalar sigma2 = Scalar(1);
};

/// Parameters of the infinite-width deep-network kernel: number of layers,
/// weight/bias prior scales, and the expected input dimension.
template <typename Scalar>
struct NngpSpec {
  int depth = 2;
  Scalar sigma_a = Scalar(1);
  Scalar sigma_b = Scalar(0.5);
  Index input_dim = 1;
};

template <typename Scalar>
using KernelSpec = std::variant<MaternSpec<Scalar>, NngpSpec<Scalar>>;

template <typename Scalar>
void validate(const MaternSpec<Scalar>& spec) {
  if (!(spec.rho > Scalar(0))) throw std::invalid_argument("matern: rho must be > 0");
  if (!(spec.sigma2 > Scalar(0))) throw std::invalid_argument("matern: sigma2 must be > 0");
  const Scalar nu = spec.nu;
  if (!(nu == Scalar(0.5) || nu == Scalar(1.5) || nu == Scalar(2.5) || std::isinf(nu)))
    throw UnsupportedSmoothness(static_cast<double>(nu));
}

template <typename Scalar>
void validate(const NngpSpec<Scalar>& spec) {
  if (spec.depth < 1) throw std::invalid_argument("nngp: depth must be >= 1");
  if (!(spec.sigma_a > Scalar(0))) throw std::invalid_argument("nngp: sigma_a must be > 0");
  if (!(spec.sigma_b >= Scalar(0))) throw std::invalid_argument("nngp: sigma_b must be >= 0");
  if (spec.input_dim < 1) throw std::invalid_argument("nngp: input_dim must be >= 1");
}

/// Matern covariance at Euclidean distance `d`. Half-integer closed forms;
/// nu = inf is the RBF limit exp(-d^2 / (2 rho^2)).
template <typename Scalar>
Scalar matern(Scalar d, const MaternSpec<Scalar>& spec) {
  validate(spec);
  const Scalar nu = spec.nu;
  if (nu == Scalar(0.5)) {
    return spec.sigma2 * std::exp(-d / spec.rho);
  }
  if (nu == Scalar(1.5)) {
    const Scalar t = std::numbers::sqrt3_v<Scalar> * d / spec.rho;
    return spec.sigma2 * (Scalar(1) + t) * std::exp(-t);
  }
  if (nu == Scalar(2.5)) {
    const Scalar t = std::sqrt(Scalar(5)) * d / spec.rho;
    return spec.sigma2 * (Scalar(1) + t + t * t / Scalar(3)) * std::exp(-t);
  }
  // validate() has already restricted nu; only the RBF limit remains.
  return spec.sigma2 * std::exp(-d * d / (Scalar(2) * spec.rho * spec.rho));
}

/// Matern covariance between two points.
template <typename DerivedX, typename DerivedY>
typename DerivedX::Scalar matern(const Eigen::MatrixBase<DerivedX>& x,
                                 const Eigen::MatrixBase<DerivedY>& y,
                                 const MaternSpec<typename DerivedX::Scalar>& spec) {
  if (x.size() != y.size())
    throw DimensionMismatch("matern: points have different dimensions");
  return matern((x - y).norm(), spec);
}

/// ReLU dual activation: maps same-layer (co)variances to the next layer's
/// covariance. With c = arccos(kxy / sqrt(kxx kyy)),
///   V = sqrt(kxx kyy) / (2 pi) * (sin c + (pi - c) cos c).
/// The arccos argument is clamped to [-1, 1]; rounding in Gram assembly may
/// push it past the bound by ~1e-16. The expression below is grouped so
/// that V(k, k, k) == k/2 holds exactly.
template <typename Scalar>
Scalar relu_dual(Scalar kxx, Scalar kxy, Scalar kyy) {
  if (!(kxx > Scalar(0)) || !(kyy > Scalar(0)))
    throw NonPositiveVariance("relu_dual: kxx and kyy must be > 0");
  constexpr Scalar pi = std::numbers::pi_v<Scalar>;
  const Scalar root = std::sqrt(kxx * kyy);
  const Scalar ratio = std::clamp(kxy / root, Scalar(-1), Scalar(1));
  const Scalar c = std::acos(ratio);
  return Scalar(0.5) * root * ((std::sin(c) + (pi - c) * std::cos(c)) / pi);
}

/// Dual of the ReLU derivative, (pi - c) / (2 pi). Not consumed by the
/// layer recursion; exposed for completeness.
template <typename Scalar>
Scalar relu_dual_derivative(Scalar kxx, Scalar kxy, Scalar kyy) {
  if (!(kxx > Scalar(0)) || !(kyy > Scalar(0)))
    throw NonPositiveVariance("relu_dual_derivative: kxx and kyy must be > 0");
  constexpr Scalar pi = std::numbers::pi_v<Scalar>;
  const Scalar root = std::sqrt(kxx * kyy);
  const Scalar ratio = std::clamp(kxy / root, Scalar(-1), Scalar(1));
  return (pi - std::acos(ratio)) / (Scalar(2) * pi);
}

/// Matrix of pairwise Euclidean distances, entry (i, j) = |x_i - y_j|.
/// Points are rows.
template <typename DerivedX, typename DerivedY>
MatrixX<typename DerivedX::Scalar> pairwise_distances(
    const Eigen::MatrixBase<DerivedX>& x, const Eigen::MatrixBase<DerivedY>& y) {
  using Scalar = typename DerivedX::Scalar;
  if (x.cols() != y.cols())
    throw DimensionMismatch("pairwise_distances: point dimensions differ");
  MatrixX<Scalar> d(x.rows(), y.rows());
  for (Index j = 0; j < y.rows(); ++j)
    for (Index i = 0; i < x.rows(); ++i)
      d(i, j) = (x.row(i) - y.row(j)).norm();
  return d;
}

/// Apply the Matern kernel elementwise to a precomputed distance matrix.
template <typename Derived>
MatrixX<typename Derived::Scalar> matern_gram_from_distances(
    const Eigen::MatrixBase<Derived>& distances,
    const MaternSpec<typename Derived::Scalar>& spec) {
  using Scalar = typename Derived::Scalar;
  validate(spec);
  MatrixX<Scalar> k(distances.rows(), distances.cols());
  for (Index j = 0; j < distances.cols(); ++j)
    for (Index i = 0; i < distances.rows(); ++i)
      k(i, j) = matern(distances(i, j), spec);
  return k;
}

/// Cross-covariance matrix with entry (i, j) = k(x_i, y_j). With x == y the
/// result is exactly symmetric with constant diagonal sigma2.
template <typename DerivedX, typename DerivedY>
MatrixX<typename DerivedX::Scalar> matern_gram(
    const Eigen::MatrixBase<DerivedX>& x, const Eigen::MatrixBase<DerivedY>& y,
    const MaternSpec<typename DerivedX::Scalar>& spec) {
  return matern_gram_from_distances(pairwise_distances(x, y), spec);
}

template <typename Derived>
MatrixX<typename Derived::Scalar> matern_gram(
    const Eigen::MatrixBase<Derived>& x,
    const MaternSpec<typename Derived::Scalar>& spec) {
  return matern_gram(x, x, spec);
}

/// Deep-network kernel from a precomputed inner-product matrix
/// `inner` = X X^T. Layer 1 is (sigma_a^2 / n0) <x, x'> + sigma_b^2; each
/// further layer applies the ReLU dual to the previous layer jointly over
/// all points, which is why the full matrix (diagonal included) is carried
/// through every level.
template <typename Derived>
MatrixX<typename Derived::Scalar> nngp_gram_from_inner(
    const Eigen::MatrixBase<Derived>& inner,
    const NngpSpec<typename Derived::Scalar>& spec) {
  using Scalar = typename Derived::Scalar;
  validate(spec);
  if (inner.rows() != inner.cols())
    throw DimensionMismatch("nngp_gram_from_inner: inner-product matrix must be square");
  const Index p = inner.rows();
  const Scalar sa2 = spec.sigma_a * spec.sigma_a;
  const Scalar sb2 = spec.sigma_b * spec.sigma_b;

  MatrixX<Scalar> k = (sa2 / Scalar(spec.input_dim)) * inner;
  k.array() += sb2;
  VectorX<Scalar> diag(p);
  for (int level = 2; level <= spec.depth; ++level) {
    diag = k.diagonal();
    for (Index j = 0; j < p; ++j) {
      for (Index i = j; i < p; ++i) {
        const Scalar v = sa2 * relu_dual(diag(i), k(i, j), diag(j)) + sb2;
        k(i, j) = v;
        k(j, i) = v;
      }
    }
  }
  return k;
}

/// Deep-network kernel matrix over a point set (points are rows). The
/// cross covariance between two point sets is obtained by evaluating this
/// over their union and slicing, never by recursing on separate blocks.
template <typename Derived>
MatrixX<typename Derived::Scalar> nngp_gram(
    const Eigen::MatrixBase<Derived>& x,
    const NngpSpec<typename Derived::Scalar>& spec) {
  validate(spec);
  if (x.cols() != spec.input_dim)
    throw DimensionMismatch("nngp_gram: points have dimension " + std::to_string(x.cols()) +
                            ", spec expects " + std::to_string(spec.input_dim));
  MatrixX<typename Derived::Scalar> inner = x * x.transpose();
  return nngp_gram_from_inner(inner, spec);
}

/// Train/train, test/train and test/test kernel blocks for one kernel.
template <typename Scalar>
struct GramBlocks {
  MatrixX<Scalar> ff;  // n x n
  MatrixX<Scalar> sf;  // m x n
  MatrixX<Scalar> ss;  // m x m
};

template <typename Scalar>
GramBlocks<Scalar> gram_blocks(const MatrixX<Scalar>& train, const MatrixX<Scalar>& test,
                               const KernelSpec<Scalar>& spec) {
  const Index n = train.rows(), m = test.rows();
  if (train.cols() != test.cols())
    throw DimensionMismatch("gram_blocks: train/test dimensions differ");
  return std::visit(
      [&](const auto& s) -> GramBlocks<Scalar> {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, MaternSpec<Scalar>>) {
          return {matern_gram(train, s), matern_gram(test, train, s), matern_gram(test, s)};
        } else {
          MatrixX<Scalar> u(n + m, train.cols());
          u.topRows(n) = train;
          u.bottomRows(m) = test;
          MatrixX<Scalar> k = nngp_gram(u, s);
          return {k.topLeftCorner(n, n), k.bottomLeftCorner(m, n),
                  k.bottomRightCorner(m, m)};
        }
      },
      spec);
}

/// Outcome of checking one hyperparameter set.
template <typename Scalar>
struct ValidityReport {
  NngpSpec<Scalar> spec;
  bool is_positive_definite = false;
  bool is_flat = false;
  Scalar min_correlation_gap = Scalar(0);
  std::optional<Index> failure_pivot;
  bool valid() const { return is_positive_definite && !is_flat; }
};

/// Check every spec on the same point set: build its Gram, attempt a
/// Cholesky of Gram + nugget I, and measure the off-diagonal correlation
/// gap. Failures are recorded per cell, never thrown.
template <typename Scalar>
std::vector<ValidityReport<Scalar>> validity_scan(
    const std::vector<NngpSpec<Scalar>>& specs, const MatrixX<Scalar>& x,
    Scalar nugget = Scalar(defaults::nugget),
    Scalar eps_flat = Scalar(defaults::eps_flat)) {
  if (x.rows() == 0) throw std::invalid_argument("validity_scan: empty point set");
  std::vector<ValidityReport<Scalar>> reports;
  reports.reserve(specs.size());
  MatrixX<Scalar> inner = x * x.transpose();
  for (const auto& spec : specs) {
    if (spec.input_dim != x.cols())
      throw DimensionMismatch("validity_scan: spec input_dim does not match data");
    ValidityReport<Scalar> report;
    report.spec = spec;
    MatrixX<Scalar> k = nngp_gram_from_inner(inner, spec);
    try {
      report.min_correlation_gap = min_offdiag_correlation_gap(k);
    } catch (const NonPositiveDiagonal&) {
      report.min_correlation_gap = Scalar(0);
    }
    report.is_flat = report.min_correlation_gap <= eps_flat;
    k.diagonal().array() += nugget;
    try {
      cholesky(k);
      report.is_positive_definite = true;
    } catch (const NotPositiveDefinite& err) {
      report.is_positive_definite = false;
      report.failure_pivot = err.pivot_index;
    }
    reports.push_back(std::move(report));
  }
  return reports;
}

}  // namespace krig
