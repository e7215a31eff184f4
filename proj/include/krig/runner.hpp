// Copyright (c) 2026 The krig authors
// SPDX-License-Identifier: Apache-2.0
//
// The study pipelines behind the CLI: hyperparameter validity scanning,
// the 1-D kriging-weight correspondence study, the three-arm benchmark,
// and direct prediction. Every run consumes a params struct with fully
// resolved defaults, so outputs are reproducible from the echoed config.

#pragma once

#include <array>
#include <iosfwd>
#include <limits>
#include <string>
#include <vector>

#include "krig/bench.hpp"
#include "krig/design.hpp"
#include "krig/kernels.hpp"
#include "krig/stats.hpp"
#include "krig/types.hpp"

namespace krig {

enum class DesignKind { grid, sobol };
enum class PredictAt { center, midpoints };

std::string to_string(DesignKind k);
std::string to_string(PredictAt p);
std::string to_string(CaseKind k);

// ---------------------------------------------------------------------------
// scan-validity

struct ScanParams {
  std::vector<int> depths{2, 5, 10, 20};
  int grid_res = 20;
  double sigma_min = 0.1;
  double sigma_max = 2.0;
  Index n = 50;  // size of the embedded 1-D grid the kernels are built on
  double nugget = defaults::nugget;
  double eps_flat = defaults::eps_flat;
  unsigned threads = 0;
};

struct ScanRow {
  int depth;
  double sigma_a, sigma_b;
  bool is_pd, is_flat;
  double min_gap;
};

std::vector<ScanRow> run_scan_validity(const ScanParams& params);

// ---------------------------------------------------------------------------
// compare-1d

struct RhoSearch {
  double rho_min = 0.05;
  double rho_max = 5.0;
  int count = 20;     // coarse log-spaced scan
  bool refine = true; // golden-section refinement around coarse local minima
};

struct CompareParams {
  std::vector<Index> n_list{25, 50, 100, 150};
  DesignKind design = DesignKind::grid;
  int depth = 2;
  double sigma_a = 1.0;
  double sigma_b = 0.5;
  double nugget = defaults::nugget;
  RhoSearch rho;
  PredictAt predict_at = PredictAt::center;
};

struct CompareRow {
  Index n;
  DesignKind design;
  double best_rho;
  double max_abs_diff;
};

std::vector<CompareRow> run_compare_1d(const CompareParams& params);

// ---------------------------------------------------------------------------
// benchmark

struct BenchmarkParams {
  CaseKind case_kind = CaseKind::friedman;
  std::string csv_path;
  Index train_count = 500;
  Index test_count = 500;
  double noise_sd = -1.0;  // <0: case default
  int iterations = 100;
  Seed seed{1};
  double nugget = defaults::nugget;
  // NNGP arm
  int depth = 2;
  int grid_res = 20;
  double sigma_min = 0.1;
  double sigma_max = 2.0;
  // fixed Matern arm
  double fixed_nu = 1.5;
  double fixed_rho = 1.0;
  // varied Matern arm
  std::vector<double> nus{0.5, 1.5, 2.5, std::numeric_limits<double>::infinity()};
  double rho_min = 0.05;
  double rho_max = 5.0;
  int rho_count = 20;
  unsigned threads = 0;
};

inline constexpr std::array<const char*, 3> kArmNames{"nngp", "matern32", "matern_varied"};

struct ArmIteration {
  ComparisonStats stats;
  double min_rmse_std = 0, max_rmse_std = 0;  // RMSE / sd(test truth)
  Index invalid_cells = 0;
  std::string best_theta_label;
  std::string theta_tilde_label;
};

struct BenchmarkIteration {
  bool ok = false;
  std::string error;
  std::uint64_t seed = 0;
  double truth_sd = 0;
  std::array<ArmIteration, 3> arms;
};

struct Aggregate {
  double mean = 0;
  double sd = 0;
};

struct ArmSummary {
  std::string name;
  Aggregate min_rmse, max_rmse, maxdiff, mindiff, meandiff, sddiff;
  Aggregate maxkw, minkw, meankw, sdkw;
  Aggregate min_rmse_std, max_rmse_std;
  Aggregate invalid_cells;
};

struct BenchmarkReport {
  BenchmarkParams params;
  std::vector<BenchmarkIteration> iterations;
  std::array<ArmSummary, 3> arms;
  int failed_iterations = 0;
};

BenchmarkReport run_benchmark(const BenchmarkParams& params);

// ---------------------------------------------------------------------------
// predict

struct PredictParams {
  std::string train_csv;
  std::string test_csv;
  KernelSpec<double> kernel = MaternSpec<double>{};
  double nugget = defaults::nugget;
};

struct PredictRow {
  double prediction;
  double posterior_sd;
};

std::vector<PredictRow> run_predict(const PredictParams& params);

// ---------------------------------------------------------------------------
// Output writers. CSV files start with "# key=value" lines echoing the
// resolved configuration; JSON embeds the same under "config". Identical
// configs produce byte-identical files.

void write_scan_output(std::ostream& out, const ScanParams& params,
                       const std::vector<ScanRow>& rows, bool as_json);
void write_compare_output(std::ostream& out, const CompareParams& params,
                          const std::vector<CompareRow>& rows, bool as_json);
void write_benchmark_json(std::ostream& out, const BenchmarkReport& report);
void write_benchmark_table(std::ostream& out, const BenchmarkReport& report);
void write_predict_output(std::ostream& out, const PredictParams& params,
                          const std::vector<PredictRow>& rows, bool as_json);

}  // namespace krig
