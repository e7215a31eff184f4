// Copyright (c) 2026 The krig authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <cstdio>
#include <stdexcept>
#include <string>

#include "krig/types.hpp"

namespace krig {

/// Base class of every error thrown by this library.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

namespace detail {
inline std::string short_real(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.6g", v);
  return buf;
}
}  // namespace detail

struct DimensionMismatch : Error {
  using Error::Error;
};

/// A Cholesky pivot came out non-positive. Carries the zero-based pivot
/// index and the offending pivot value; `context` names the kernel or
/// configuration that produced the matrix when the caller knows it.
struct NotPositiveDefinite : Error {
  Index pivot_index;
  double pivot_value;
  NotPositiveDefinite(Index index, double value, const std::string& context = "")
      : Error("matrix is not positive definite: pivot " + std::to_string(index) +
              " has value " + detail::short_real(value) +
              (context.empty() ? "" : " (" + context + ")")),
        pivot_index(index),
        pivot_value(value) {}
};

struct NonPositiveDiagonal : Error {
  Index index;
  explicit NonPositiveDiagonal(Index i)
      : Error("matrix has a non-positive diagonal entry at index " + std::to_string(i)),
        index(i) {}
};

struct UnsupportedSmoothness : Error {
  double nu;
  explicit UnsupportedSmoothness(double nu_in)
      : Error("unsupported Matern smoothness nu=" + detail::short_real(nu_in) +
              " (supported: 0.5, 1.5, 2.5, inf)"),
        nu(nu_in) {}
};

struct NonPositiveVariance : Error {
  using Error::Error;
};

struct DegenerateColumn : Error {
  Index column;
  explicit DegenerateColumn(Index col)
      : Error("column " + std::to_string(col) + " is constant; cannot min-max scale"),
        column(col) {}
};

struct RankDeficientDesign : Error {
  using Error::Error;
};

struct LengthMismatch : Error {
  using Error::Error;
};

struct ShapeMismatch : Error {
  using Error::Error;
};

struct AllThetaInvalid : Error {
  using Error::Error;
};

struct InsufficientThetas : Error {
  using Error::Error;
};

struct FileNotFound : Error {
  std::string path;
  explicit FileNotFound(std::string p)
      : Error("file not found: " + p), path(std::move(p)) {}
};

struct ParseError : Error {
  std::size_t line;
  ParseError(std::size_t line_number, const std::string& what)
      : Error("parse error at line " + std::to_string(line_number) + ": " + what),
        line(line_number) {}
};

struct MissingColumn : Error {
  std::string column;
  explicit MissingColumn(std::string name)
      : Error("missing column: " + name), column(std::move(name)) {}
};

struct InsufficientRows : Error {
  using Error::Error;
};

}  // namespace krig
