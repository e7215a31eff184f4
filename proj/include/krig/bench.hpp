// Copyright (c) 2026 The krig authors
// SPDX-License-Identifier: Apache-2.0
//
// Benchmark response surfaces, CSV ingestion and train/test assembly.

#pragma once

#include <array>
#include <cmath>
#include <numbers>
#include <string>

#include <Eigen/Core>

#include "krig/design.hpp"
#include "krig/errors.hpp"
#include "krig/types.hpp"

namespace krig {

/// Input matrix (points are rows) plus the response vector.
template <typename Scalar>
struct Dataset {
  MatrixX<Scalar> inputs;
  VectorX<Scalar> responses;
  Index n() const { return inputs.rows(); }
  Index dim() const { return inputs.cols(); }
};

/// Friedman surface on [0,1]^5:
///   10 sin(pi x1 x2) + 20 (x3 - 0.5)^2 + 10 x4 + 5 x5.
/// Noise is added separately by the caller.
inline double friedman(const Eigen::Ref<const Vector>& x) {
  if (x.size() != 5) throw DimensionMismatch("friedman: expected 5 coordinates");
  return 10.0 * std::sin(std::numbers::pi * x(0) * x(1)) +
         20.0 * (x(2) - 0.5) * (x(2) - 0.5) + 10.0 * x(3) + 5.0 * x(4);
}

inline Vector friedman_each(const Matrix& x) {
  Vector y(x.rows());
  for (Index i = 0; i < x.rows(); ++i) y(i) = friedman(Vector(x.row(i).transpose()));
  return y;
}

// Physical parameter ranges, in the order (r_w, r, T_u, H_u, T_l, H_l, L, K_w).
inline constexpr std::array<double, 8> kBoreholeLower{0.05, 100.0,  63070.0, 990.0,
                                                      63.1, 700.0,  1120.0,  9855.0};
inline constexpr std::array<double, 8> kBoreholeUpper{0.15, 5000.0, 115600.0, 1100.0,
                                                      116.0, 820.0, 1680.0,  12045.0};

/// Water flow through a borehole (natural logarithm):
///   2 pi T_u (H_u - H_l) / ( ln(r/r_w) [1 + 2 L T_u / (ln(r/r_w) r_w^2 K_w) + T_u/T_l] ).
inline double borehole(const Eigen::Ref<const Vector>& x) {
  if (x.size() != 8) throw DimensionMismatch("borehole: expected 8 parameters");
  const double rw = x(0), r = x(1), tu = x(2), hu = x(3);
  const double tl = x(4), hl = x(5), length = x(6), kw = x(7);
  const double lg = std::log(r / rw);
  return 2.0 * std::numbers::pi * tu * (hu - hl) /
         (lg * (1.0 + 2.0 * length * tu / (lg * rw * rw * kw) + tu / tl));
}

inline Vector borehole_each(const Matrix& x) {
  Vector y(x.rows());
  for (Index i = 0; i < x.rows(); ++i) y(i) = borehole(Vector(x.row(i).transpose()));
  return y;
}

/// Whether all 8 parameters lie inside the stated physical ranges. The
/// surface stays defined for positive inputs outside them; callers may warn.
inline bool borehole_in_range(const Eigen::Ref<const Vector>& x) {
  if (x.size() != 8) throw DimensionMismatch("borehole_in_range: expected 8 parameters");
  for (Index i = 0; i < 8; ++i)
    if (x(i) < kBoreholeLower[static_cast<std::size_t>(i)] ||
        x(i) > kBoreholeUpper[static_cast<std::size_t>(i)])
      return false;
  return true;
}

/// Coordinate-wise affine map from the unit cube onto the borehole ranges.
inline Vector unit_to_borehole(const Eigen::Ref<const Vector>& u) {
  if (u.size() != 8) throw DimensionMismatch("unit_to_borehole: expected 8 coordinates");
  Vector x(8);
  for (Index i = 0; i < 8; ++i) {
    const auto k = static_cast<std::size_t>(i);
    x(i) = kBoreholeLower[k] + u(i) * (kBoreholeUpper[k] - kBoreholeLower[k]);
  }
  return x;
}

inline Matrix unit_to_borehole_each(const Matrix& u) {
  Matrix x(u.rows(), 8);
  for (Index i = 0; i < u.rows(); ++i)
    x.row(i) = unit_to_borehole(Vector(u.row(i).transpose())).transpose();
  return x;
}

enum class CaseKind { friedman, borehole, csv };

/// One benchmark configuration. `noise_sd < 0` selects the per-case
/// default (1.0 for friedman, 0 otherwise).
struct BenchmarkCase {
  CaseKind kind = CaseKind::friedman;
  Index train_count = 500;
  Index test_count = 500;
  double noise_sd = -1.0;
  Seed seed{1};
  std::string csv_path;
};

inline double default_noise_sd(CaseKind kind) {
  return kind == CaseKind::friedman ? 1.0 : 0.0;
}

struct TrainTest {
  Dataset<double> train;
  Dataset<double> test;
};

/// Parse a CSV file with header x1,...,xd,y. Rows with any non-finite or
/// unparsable field are a hard error.
Dataset<double> load_csv(const std::string& path);

/// Assemble one train/test pair. Synthetic cases draw a Latin hypercube
/// design of n+m points: training responses are surface + noise, test
/// responses keep the noiseless surface for scoring. The csv case takes
/// disjoint seeded subsamples of sizes n and m. Borehole datasets carry the
/// unit-cube coordinates; the physical parameters only enter the response.
TrainTest make_case(const BenchmarkCase& spec);

}  // namespace krig
