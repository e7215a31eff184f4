// Copyright (c) 2026 The krig authors
// SPDX-License-Identifier: Apache-2.0

#include "krig/runner.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <ostream>
#include <utility>

#include <json.hpp>

#include "krig/embed.hpp"
#include "krig/gp.hpp"
#include "krig/linalg.hpp"
#include "krig/parallel.hpp"

namespace krig {

namespace {

using nlohmann::json;

/// Shortest round-trip representation; deterministic and locale-free.
std::string fmt(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

std::string fmt_label(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.6g", v);
  return buf;
}

std::string join(const std::vector<int>& v) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + std::to_string(v[i]);
  return s;
}

std::string join_index(const std::vector<Index>& v) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + std::to_string(v[i]);
  return s;
}

std::string join_double(const std::vector<double>& v) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + fmt(v[i]);
  return s;
}

std::vector<double> log_spaced(double lo, double hi, int count) {
  if (!(lo > 0) || !(hi >= lo)) throw std::invalid_argument("log grid needs 0 < lo <= hi");
  if (count < 1) throw std::invalid_argument("log grid needs count >= 1");
  std::vector<double> v(static_cast<std::size_t>(count));
  if (count == 1) {
    v[0] = lo;
    return v;
  }
  const double la = std::log(lo), lb = std::log(hi);
  for (int i = 0; i < count; ++i)
    v[static_cast<std::size_t>(i)] =
        std::exp(la + (lb - la) * static_cast<double>(i) / static_cast<double>(count - 1));
  return v;
}

std::vector<double> lin_spaced(double lo, double hi, int count) {
  std::vector<double> v(static_cast<std::size_t>(count));
  for (int i = 0; i < count; ++i)
    v[static_cast<std::size_t>(i)] =
        lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(count - 1);
  return v;
}

/// Golden-section minimum of f(exp(t)) for t in [log lo, log hi].
template <typename F>
std::pair<double, double> golden_min_log(F&& f, double lo, double hi) {
  constexpr double gr = 0.6180339887498949;  // (sqrt(5) - 1) / 2
  double a = std::log(lo), b = std::log(hi);
  double c = b - gr * (b - a), d = a + gr * (b - a);
  double fc = f(std::exp(c)), fd = f(std::exp(d));
  int guard = 0;
  while (b - a > 1e-10 && guard++ < 120) {
    if (fc < fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - gr * (b - a);
      fc = f(std::exp(c));
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + gr * (b - a);
      fd = f(std::exp(d));
    }
  }
  const double mid = std::exp(0.5 * (a + b));
  return {mid, f(mid)};
}

double sample_sd(const std::vector<double>& v, double mean) {
  if (v.size() < 2) return 0.0;
  double ss = 0;
  for (double x : v) ss += (x - mean) * (x - mean);
  return std::sqrt(ss / static_cast<double>(v.size() - 1));
}

Aggregate aggregate(const std::vector<double>& v) {
  if (v.empty()) return {0.0, 0.0};
  double sum = 0;
  for (double x : v) sum += x;
  const double mean = sum / static_cast<double>(v.size());
  return {mean, sample_sd(v, mean)};
}

}  // namespace

std::string to_string(DesignKind k) { return k == DesignKind::grid ? "grid" : "sobol"; }
std::string to_string(PredictAt p) {
  return p == PredictAt::center ? "center" : "midpoints";
}
std::string to_string(CaseKind k) {
  switch (k) {
    case CaseKind::friedman: return "friedman";
    case CaseKind::borehole: return "borehole";
    default: return "csv";
  }
}

// ---------------------------------------------------------------------------
// scan-validity

std::vector<ScanRow> run_scan_validity(const ScanParams& params) {
  if (params.grid_res < 2) throw std::invalid_argument("scan-validity: grid_res must be >= 2");
  if (params.depths.empty()) throw std::invalid_argument("scan-validity: depths must be nonempty");
  if (params.n < 1) throw std::invalid_argument("scan-validity: n must be >= 1");
  if (!(params.sigma_max > params.sigma_min) || !(params.sigma_min > 0))
    throw std::invalid_argument("scan-validity: need 0 < sigma_min < sigma_max");

  const Matrix x = hypersphere_embed(Matrix(grid_1d(params.n)));
  const Matrix inner = x * x.transpose();
  const std::vector<double> sigmas = lin_spaced(params.sigma_min, params.sigma_max, params.grid_res);

  const Index per_depth = static_cast<Index>(params.grid_res) * params.grid_res;
  const Index total = per_depth * static_cast<Index>(params.depths.size());
  std::vector<ScanRow> rows(static_cast<std::size_t>(total));

  parallel_for(
      total,
      [&](Index cell) {
        const auto depth_idx = static_cast<std::size_t>(cell / per_depth);
        const Index in_depth = cell % per_depth;
        const auto ia = static_cast<std::size_t>(in_depth / params.grid_res);
        const auto ib = static_cast<std::size_t>(in_depth % params.grid_res);
        NngpSpec<double> spec{params.depths[depth_idx], sigmas[ia], sigmas[ib], x.cols()};

        ValidityReport<double> report;
        report.spec = spec;
        Matrix k = nngp_gram_from_inner(inner, spec);
        try {
          report.min_correlation_gap = min_offdiag_correlation_gap(k);
        } catch (const NonPositiveDiagonal&) {
          report.min_correlation_gap = 0.0;
        }
        report.is_flat = report.min_correlation_gap <= params.eps_flat;
        k.diagonal().array() += params.nugget;
        try {
          cholesky(k);
          report.is_positive_definite = true;
        } catch (const NotPositiveDefinite&) {
          report.is_positive_definite = false;
        }
        rows[static_cast<std::size_t>(cell)] =
            ScanRow{spec.depth, spec.sigma_a, spec.sigma_b, report.is_positive_definite,
                    report.is_flat, report.min_correlation_gap};
      },
      params.threads);
  return rows;
}

// ---------------------------------------------------------------------------
// compare-1d

std::vector<CompareRow> run_compare_1d(const CompareParams& params) {
  if (params.n_list.empty()) throw std::invalid_argument("compare-1d: n list must be nonempty");
  if (params.rho.count < 1) throw std::invalid_argument("compare-1d: rho count must be >= 1");
  const NngpSpec<double> base{params.depth, params.sigma_a, params.sigma_b, 2};
  validate(base);

  std::vector<CompareRow> rows;
  rows.reserve(params.n_list.size());
  for (const Index n : params.n_list) {
    if (n < 1) throw std::invalid_argument("compare-1d: n must be >= 1");
    Vector x = params.design == DesignKind::grid ? grid_1d(n) : sobol_1d(n);
    std::sort(x.begin(), x.end());

    // Prediction locations: adjacent midpoints, or just the one nearest the
    // domain center. A single-point design has no midpoint; predict at 0.5.
    Vector xs;
    if (n == 1) {
      xs = Vector::Constant(1, 0.5);
    } else if (params.predict_at == PredictAt::midpoints) {
      xs.resize(n - 1);
      for (Index i = 0; i + 1 < n; ++i) xs(i) = 0.5 * (x(i) + x(i + 1));
    } else {
      Index best = 0;
      double best_dist = std::numeric_limits<double>::infinity();
      for (Index i = 0; i + 1 < n; ++i) {
        const double mid = 0.5 * (x(i) + x(i + 1));
        if (std::abs(mid - 0.5) < best_dist) {
          best_dist = std::abs(mid - 0.5);
          best = i;
        }
      }
      xs = Vector::Constant(1, 0.5 * (x(best) + x(best + 1)));
    }

    // Both kernels see the same embedded geometry.
    const Matrix e_train = hypersphere_embed(Matrix(x));
    const Matrix e_test = hypersphere_embed(Matrix(xs));
    const Index m = xs.size();

    Matrix u(n + m, 2);
    u.topRows(n) = e_train;
    u.bottomRows(m) = e_test;
    const Matrix k = nngp_gram(u, base);
    const Matrix h_nngp = kriging_weights(Matrix(k.topLeftCorner(n, n)),
                                          Matrix(k.bottomLeftCorner(m, n)), params.nugget);

    const Matrix dff = pairwise_distances(e_train, e_train);
    const Matrix dsf = pairwise_distances(e_test, e_train);
    const auto diff_at = [&](double rho) {
      const MaternSpec<double> spec{1.5, rho, 1.0};
      const Matrix h = kriging_weights(matern_gram_from_distances(dff, spec),
                                       matern_gram_from_distances(dsf, spec), params.nugget);
      return (h - h_nngp).cwiseAbs().maxCoeff();
    };

    const std::vector<double> coarse = log_spaced(params.rho.rho_min, params.rho.rho_max,
                                                  params.rho.count);
    std::vector<double> errs(coarse.size());
    for (std::size_t i = 0; i < coarse.size(); ++i) errs[i] = diff_at(coarse[i]);

    double best_rho = coarse[0], best_err = errs[0];
    for (std::size_t i = 1; i < coarse.size(); ++i)
      if (errs[i] < best_err) {
        best_err = errs[i];
        best_rho = coarse[i];
      }

    // The objective is sharply V-shaped in rho; refine around every coarse
    // local minimum and keep the global best.
    if (params.rho.refine && coarse.size() > 1) {
      for (std::size_t i = 0; i < coarse.size(); ++i) {
        const double left = i > 0 ? errs[i - 1] : std::numeric_limits<double>::infinity();
        const double right =
            i + 1 < coarse.size() ? errs[i + 1] : std::numeric_limits<double>::infinity();
        if (errs[i] > left || errs[i] > right) continue;
        const double lo = coarse[i > 0 ? i - 1 : i];
        const double hi = coarse[std::min(i + 1, coarse.size() - 1)];
        const auto [rho, err] = golden_min_log(diff_at, lo, hi);
        if (err < best_err) {
          best_err = err;
          best_rho = rho;
        }
      }
    }
    rows.push_back(CompareRow{n, params.design, best_rho, best_err});
  }
  return rows;
}

// ---------------------------------------------------------------------------
// benchmark

namespace {

struct ArmGrid {
  std::vector<KernelSpec<double>> specs;
  std::vector<std::string> labels;
};

ArmGrid nngp_arm(const BenchmarkParams& p, Index embedded_dim) {
  ArmGrid arm;
  const std::vector<double> sigmas = lin_spaced(p.sigma_min, p.sigma_max, p.grid_res);
  for (double sa : sigmas)
    for (double sb : sigmas) {
      arm.specs.push_back(NngpSpec<double>{p.depth, sa, sb, embedded_dim});
      arm.labels.push_back("sigma_a=" + fmt_label(sa) + ",sigma_b=" + fmt_label(sb));
    }
  return arm;
}

ArmGrid fixed_matern_arm(const BenchmarkParams& p) {
  ArmGrid arm;
  arm.specs.push_back(MaternSpec<double>{p.fixed_nu, p.fixed_rho, 1.0});
  arm.labels.push_back("nu=" + fmt_label(p.fixed_nu) + ",rho=" + fmt_label(p.fixed_rho));
  return arm;
}

ArmGrid varied_matern_arm(const BenchmarkParams& p) {
  ArmGrid arm;
  const std::vector<double> rhos = log_spaced(p.rho_min, p.rho_max, p.rho_count);
  for (double nu : p.nus)
    for (double rho : rhos) {
      arm.specs.push_back(MaternSpec<double>{nu, rho, 1.0});
      arm.labels.push_back("nu=" + fmt_label(nu) + ",rho=" + fmt_label(rho));
    }
  return arm;
}

struct FittedArm {
  std::vector<Matrix> weights;
  std::vector<ThetaStatus> status;
  Index invalid_cells = 0;
};

/// Fit every cell of one arm: kriging weights through a Cholesky solve, a
/// failed factorization marks the cell invalid (recorded, not raised).
FittedArm fit_arm(const ArmGrid& arm, const Matrix& nngp_inner, const Matrix& dff,
                  const Matrix& dsf, Index n, Index m, double nugget, unsigned threads) {
  FittedArm fit;
  const auto cells = static_cast<Index>(arm.specs.size());
  fit.weights.resize(arm.specs.size());
  fit.status.assign(arm.specs.size(), ThetaStatus::invalid);
  parallel_for(
      cells,
      [&](Index c) {
        const auto idx = static_cast<std::size_t>(c);
        Matrix kff, ksf;
        if (const auto* nngp = std::get_if<NngpSpec<double>>(&arm.specs[idx])) {
          const Matrix k = nngp_gram_from_inner(nngp_inner, *nngp);
          kff = k.topLeftCorner(n, n);
          ksf = k.bottomLeftCorner(m, n);
        } else {
          const auto& spec = std::get<MaternSpec<double>>(arm.specs[idx]);
          kff = matern_gram_from_distances(dff, spec);
          ksf = matern_gram_from_distances(dsf, spec);
        }
        try {
          fit.weights[idx] = kriging_weights(kff, ksf, nugget);
          fit.status[idx] = ThetaStatus::ok;
        } catch (const NotPositiveDefinite&) {
          fit.status[idx] = ThetaStatus::invalid;
        }
      },
      threads);
  for (auto s : fit.status)
    if (s == ThetaStatus::invalid) ++fit.invalid_cells;
  return fit;
}

BenchmarkIteration run_iteration(const BenchmarkParams& p, std::uint64_t seed) {
  BenchmarkIteration iter;
  iter.seed = seed;

  BenchmarkCase spec;
  spec.kind = p.case_kind;
  spec.train_count = p.train_count;
  spec.test_count = p.test_count;
  spec.noise_sd = p.noise_sd;
  spec.seed = Seed{seed};
  spec.csv_path = p.csv_path;
  const TrainTest data = make_case(spec);

  const Index n = data.train.n(), m = data.test.n();
  const Vector& truth = data.test.responses;

  // Linear trend for the synthetic surfaces; csv residuals arrive detrended.
  Vector resid = data.train.responses;
  Vector trend_test = Vector::Zero(m);
  if (p.case_kind != CaseKind::csv) {
    const TrendFit<double> trend = fit_trend(data.train.inputs, data.train.responses);
    resid = trend.residuals;
    trend_test = trend_predict(trend.model, data.test.inputs);
  }

  // Matern arms work on min-max-scaled inputs; the NNGP arm on their
  // hypersphere embedding.
  const auto scaled = minmax_scale(data.train.inputs);
  const Matrix scaled_test = minmax_scale(data.test.inputs, scaled.bounds);
  const Matrix dff = pairwise_distances(scaled.scaled, scaled.scaled);
  const Matrix dsf = pairwise_distances(scaled_test, scaled.scaled);

  const Matrix e_train = hypersphere_embed(scaled.scaled);
  const Matrix e_test = hypersphere_embed(scaled_test);
  Matrix u(n + m, e_train.cols());
  u.topRows(n) = e_train;
  u.bottomRows(m) = e_test;
  const Matrix nngp_inner = u * u.transpose();

  const std::array<ArmGrid, 3> grids{nngp_arm(p, e_train.cols()), fixed_matern_arm(p),
                                     varied_matern_arm(p)};

  double truth_sd = 0;
  if (m > 1) {
    const double mean = truth.mean();
    truth_sd = std::sqrt((truth.array() - mean).square().sum() / static_cast<double>(m - 1));
  }
  iter.truth_sd = truth_sd;

  Matrix h_ref;  // weights of the best-RMSE NNGP cell
  for (std::size_t a = 0; a < grids.size(); ++a) {
    const FittedArm fit = fit_arm(grids[a], nngp_inner, dff, dsf, n, m, p.nugget, p.threads);
    ArmIteration& out = iter.arms[a];
    out.invalid_cells = fit.invalid_cells;

    const RmseExtrema<double> extrema =
        rmse_extrema(fit.weights, fit.status, resid, trend_test, truth);
    out.stats.min_rmse = extrema.min_rmse;
    out.stats.max_rmse = extrema.max_rmse;
    out.stats.best_theta = extrema.best_theta;
    out.best_theta_label = grids[a].labels[extrema.best_theta];
    out.min_rmse_std = truth_sd > 0 ? extrema.min_rmse / truth_sd : 0.0;
    out.max_rmse_std = truth_sd > 0 ? extrema.max_rmse / truth_sd : 0.0;
    if (a == 0) h_ref = fit.weights[extrema.best_theta];

    const WeightDiffStats<double> diff = weight_diff_stats(h_ref, fit.weights, fit.status);
    out.stats.theta_tilde = diff.theta_tilde;
    out.theta_tilde_label = grids[a].labels[diff.theta_tilde];
    out.stats.maxdiff = diff.maxdiff;
    out.stats.mindiff = diff.mindiff;
    out.stats.meandiff = diff.meandiff;
    out.stats.sddiff = diff.sddiff;

    Index valid = 0;
    for (auto s : fit.status)
      if (s == ThetaStatus::ok) ++valid;
    if (valid >= 2) {
      const KwSpreadStats<double> kw = kw_spread_stats(fit.weights, fit.status);
      out.stats.maxkw = kw.maxkw;
      out.stats.minkw = kw.minkw;
      out.stats.meankw = kw.meankw;
      out.stats.sdkw = kw.sdkw;
    }
    // A single-theta grid has no spread: Hbar equals its only H, so every
    // kw statistic is 0 (the value kw_spread_stats cannot report itself).
  }
  iter.ok = true;
  return iter;
}

}  // namespace

BenchmarkReport run_benchmark(const BenchmarkParams& p) {
  if (p.iterations < 1) throw std::invalid_argument("benchmark: iterations must be >= 1");
  if (p.grid_res < 2) throw std::invalid_argument("benchmark: grid_res must be >= 2");
  if (!(p.sigma_max > p.sigma_min) || !(p.sigma_min > 0))
    throw std::invalid_argument("benchmark: need 0 < sigma_min < sigma_max");
  if (p.rho_count < 1) throw std::invalid_argument("benchmark: rho_count must be >= 1");
  if (p.nus.empty()) throw std::invalid_argument("benchmark: nu list must be nonempty");
  if (p.case_kind == CaseKind::csv && p.csv_path.empty())
    throw std::invalid_argument("benchmark: csv case needs a data file");
  // Fail fast on unreadable csv input, before any fitting.
  if (p.case_kind == CaseKind::csv) load_csv(p.csv_path);

  BenchmarkReport report;
  report.params = p;
  report.iterations.reserve(static_cast<std::size_t>(p.iterations));

  SplitMix64 root(p.seed);
  for (int it = 0; it < p.iterations; ++it) {
    const std::uint64_t seed = root.next();
    try {
      report.iterations.push_back(run_iteration(p, seed));
    } catch (const Error& err) {
      BenchmarkIteration failed;
      failed.ok = false;
      failed.seed = seed;
      failed.error = err.what();
      report.iterations.push_back(std::move(failed));
      ++report.failed_iterations;
    }
  }

  for (std::size_t a = 0; a < kArmNames.size(); ++a) {
    ArmSummary& summary = report.arms[a];
    summary.name = kArmNames[a];
    const auto collect = [&](auto&& get) {
      std::vector<double> v;
      for (const auto& iter : report.iterations)
        if (iter.ok) v.push_back(get(iter.arms[a]));
      return aggregate(v);
    };
    summary.min_rmse = collect([](const ArmIteration& x) { return x.stats.min_rmse; });
    summary.max_rmse = collect([](const ArmIteration& x) { return x.stats.max_rmse; });
    summary.maxdiff = collect([](const ArmIteration& x) { return x.stats.maxdiff; });
    summary.mindiff = collect([](const ArmIteration& x) { return x.stats.mindiff; });
    summary.meandiff = collect([](const ArmIteration& x) { return x.stats.meandiff; });
    summary.sddiff = collect([](const ArmIteration& x) { return x.stats.sddiff; });
    summary.maxkw = collect([](const ArmIteration& x) { return x.stats.maxkw; });
    summary.minkw = collect([](const ArmIteration& x) { return x.stats.minkw; });
    summary.meankw = collect([](const ArmIteration& x) { return x.stats.meankw; });
    summary.sdkw = collect([](const ArmIteration& x) { return x.stats.sdkw; });
    summary.min_rmse_std = collect([](const ArmIteration& x) { return x.min_rmse_std; });
    summary.max_rmse_std = collect([](const ArmIteration& x) { return x.max_rmse_std; });
    summary.invalid_cells =
        collect([](const ArmIteration& x) { return static_cast<double>(x.invalid_cells); });
  }
  return report;
}

// ---------------------------------------------------------------------------
// predict

std::vector<PredictRow> run_predict(const PredictParams& params) {
  const Dataset<double> train = load_csv(params.train_csv);
  const Dataset<double> test = load_csv(params.test_csv);
  if (train.n() < 1) throw InsufficientRows("predict: training file has no data rows");
  if (test.dim() != train.dim())
    throw DimensionMismatch("predict: train and test dimensions differ");
  if (test.n() == 0) return {};

  GramBlocks<double> blocks;
  if (const auto* nngp = std::get_if<NngpSpec<double>>(&params.kernel)) {
    // The deep-network kernel is defined on the sphere: scale with
    // train-fitted bounds, then embed.
    const auto scaled = minmax_scale(train.inputs);
    const Matrix e_train = hypersphere_embed(scaled.scaled);
    const Matrix e_test = hypersphere_embed(minmax_scale(test.inputs, scaled.bounds));
    NngpSpec<double> spec = *nngp;
    spec.input_dim = e_train.cols();
    blocks = gram_blocks<double>(e_train, e_test, KernelSpec<double>{spec});
  } else {
    // Matern predicts in the raw coordinates; rho keeps the data's units.
    blocks = gram_blocks<double>(train.inputs, test.inputs, params.kernel);
  }

  PosteriorSummary<double> post;
  try {
    post = posterior(blocks.ff, blocks.sf, blocks.ss, train.responses, params.nugget);
  } catch (const NotPositiveDefinite& err) {
    if (const auto* nngp = std::get_if<NngpSpec<double>>(&params.kernel))
      throw NotPositiveDefinite(err.pivot_index, err.pivot_value,
                                "nngp kernel sigma_a=" + fmt(nngp->sigma_a) +
                                    " sigma_b=" + fmt(nngp->sigma_b) +
                                    " depth=" + std::to_string(nngp->depth));
    throw;
  }
  std::vector<PredictRow> rows(static_cast<std::size_t>(test.n()));
  for (Index i = 0; i < test.n(); ++i)
    rows[static_cast<std::size_t>(i)] =
        PredictRow{post.mean(i), std::sqrt(std::max(0.0, post.covariance(i, i)))};
  return rows;
}

// ---------------------------------------------------------------------------
// writers

namespace {

void write_config_comment(std::ostream& out,
                          const std::vector<std::pair<std::string, std::string>>& kv) {
  for (const auto& [k, v] : kv) out << "# " << k << "=" << v << "\n";
}

json config_json(const std::vector<std::pair<std::string, std::string>>& kv) {
  json j = json::object();
  for (const auto& [k, v] : kv) j[k] = v;
  return j;
}

std::vector<std::pair<std::string, std::string>> scan_config(const ScanParams& p) {
  return {{"command", "scan-validity"},
          {"depths", join(p.depths)},
          {"grid_res", std::to_string(p.grid_res)},
          {"sigma_min", fmt(p.sigma_min)},
          {"sigma_max", fmt(p.sigma_max)},
          {"n", std::to_string(p.n)},
          {"nugget", fmt(p.nugget)},
          {"eps_flat", fmt(p.eps_flat)}};
}

std::vector<std::pair<std::string, std::string>> compare_config(const CompareParams& p) {
  return {{"command", "compare-1d"},
          {"n_list", join_index(p.n_list)},
          {"design", to_string(p.design)},
          {"depth", std::to_string(p.depth)},
          {"sigma_a", fmt(p.sigma_a)},
          {"sigma_b", fmt(p.sigma_b)},
          {"nugget", fmt(p.nugget)},
          {"rho_min", fmt(p.rho.rho_min)},
          {"rho_max", fmt(p.rho.rho_max)},
          {"rho_count", std::to_string(p.rho.count)},
          {"refine", p.rho.refine ? "true" : "false"},
          {"predict_at", to_string(p.predict_at)}};
}

std::vector<std::pair<std::string, std::string>> benchmark_config(const BenchmarkParams& p) {
  return {{"command", "benchmark"},
          {"case", to_string(p.case_kind)},
          {"csv_path", p.csv_path},
          {"train_count", std::to_string(p.train_count)},
          {"test_count", std::to_string(p.test_count)},
          {"noise_sd", fmt(p.noise_sd < 0 ? default_noise_sd(p.case_kind) : p.noise_sd)},
          {"iterations", std::to_string(p.iterations)},
          {"seed", std::to_string(p.seed.value)},
          {"nugget", fmt(p.nugget)},
          {"depth", std::to_string(p.depth)},
          {"grid_res", std::to_string(p.grid_res)},
          {"sigma_min", fmt(p.sigma_min)},
          {"sigma_max", fmt(p.sigma_max)},
          {"fixed_nu", fmt(p.fixed_nu)},
          {"fixed_rho", fmt(p.fixed_rho)},
          {"nus", join_double(p.nus)},
          {"rho_min", fmt(p.rho_min)},
          {"rho_max", fmt(p.rho_max)},
          {"rho_count", std::to_string(p.rho_count)}};
}

std::vector<std::pair<std::string, std::string>> predict_config(const PredictParams& p) {
  std::vector<std::pair<std::string, std::string>> kv{{"command", "predict"},
                                                      {"train", p.train_csv},
                                                      {"test", p.test_csv},
                                                      {"nugget", fmt(p.nugget)}};
  if (const auto* m = std::get_if<MaternSpec<double>>(&p.kernel)) {
    kv.emplace_back("kernel", "matern");
    kv.emplace_back("nu", fmt(m->nu));
    kv.emplace_back("rho", fmt(m->rho));
  } else {
    const auto& s = std::get<NngpSpec<double>>(p.kernel);
    kv.emplace_back("kernel", "nngp");
    kv.emplace_back("depth", std::to_string(s.depth));
    kv.emplace_back("sigma_a", fmt(s.sigma_a));
    kv.emplace_back("sigma_b", fmt(s.sigma_b));
  }
  return kv;
}

}  // namespace

void write_scan_output(std::ostream& out, const ScanParams& params,
                       const std::vector<ScanRow>& rows, bool as_json) {
  const auto kv = scan_config(params);
  if (as_json) {
    json j;
    j["config"] = config_json(kv);
    j["rows"] = json::array();
    for (const auto& r : rows)
      j["rows"].push_back({{"depth", r.depth},
                           {"sigma_a", r.sigma_a},
                           {"sigma_b", r.sigma_b},
                           {"is_pd", r.is_pd},
                           {"is_flat", r.is_flat},
                           {"min_gap", r.min_gap}});
    out << j.dump(2) << "\n";
    return;
  }
  write_config_comment(out, kv);
  out << "depth,sigma_a,sigma_b,is_pd,is_flat,min_gap\n";
  for (const auto& r : rows)
    out << r.depth << "," << fmt(r.sigma_a) << "," << fmt(r.sigma_b) << "," << (r.is_pd ? 1 : 0)
        << "," << (r.is_flat ? 1 : 0) << "," << fmt(r.min_gap) << "\n";
}

void write_compare_output(std::ostream& out, const CompareParams& params,
                          const std::vector<CompareRow>& rows, bool as_json) {
  const auto kv = compare_config(params);
  if (as_json) {
    json j;
    j["config"] = config_json(kv);
    j["rows"] = json::array();
    for (const auto& r : rows)
      j["rows"].push_back({{"n", r.n},
                           {"design", to_string(r.design)},
                           {"best_rho", r.best_rho},
                           {"max_abs_diff", r.max_abs_diff}});
    out << j.dump(2) << "\n";
    return;
  }
  write_config_comment(out, kv);
  out << "n,design,best_rho,max_abs_diff\n";
  for (const auto& r : rows)
    out << r.n << "," << to_string(r.design) << "," << fmt(r.best_rho) << ","
        << fmt(r.max_abs_diff) << "\n";
}

namespace {

json aggregate_json(const Aggregate& a) { return {{"mean", a.mean}, {"sd", a.sd}}; }

}  // namespace

void write_benchmark_json(std::ostream& out, const BenchmarkReport& report) {
  json j;
  j["config"] = config_json(benchmark_config(report.params));
  j["failed_iterations"] = report.failed_iterations;
  j["arms"] = json::object();
  for (const auto& arm : report.arms) {
    json a;
    a["minRMSE"] = aggregate_json(arm.min_rmse);
    a["maxRMSE"] = aggregate_json(arm.max_rmse);
    a["maxdiff"] = aggregate_json(arm.maxdiff);
    a["mindiff"] = aggregate_json(arm.mindiff);
    a["meandiff"] = aggregate_json(arm.meandiff);
    a["sddiff"] = aggregate_json(arm.sddiff);
    a["maxkw"] = aggregate_json(arm.maxkw);
    a["minkw"] = aggregate_json(arm.minkw);
    a["meankw"] = aggregate_json(arm.meankw);
    a["sdkw"] = aggregate_json(arm.sdkw);
    a["minRMSE_std"] = aggregate_json(arm.min_rmse_std);
    a["maxRMSE_std"] = aggregate_json(arm.max_rmse_std);
    a["invalid_cells"] = aggregate_json(arm.invalid_cells);
    j["arms"][arm.name] = std::move(a);
  }
  j["iterations"] = json::array();
  for (const auto& iter : report.iterations) {
    json it;
    it["seed"] = iter.seed;
    it["ok"] = iter.ok;
    if (!iter.ok) {
      it["error"] = iter.error;
      j["iterations"].push_back(std::move(it));
      continue;
    }
    it["truth_sd"] = iter.truth_sd;
    it["arms"] = json::object();
    for (std::size_t a = 0; a < kArmNames.size(); ++a) {
      const ArmIteration& arm = iter.arms[a];
      it["arms"][kArmNames[a]] = {{"minRMSE", arm.stats.min_rmse},
                                  {"maxRMSE", arm.stats.max_rmse},
                                  {"maxdiff", arm.stats.maxdiff},
                                  {"mindiff", arm.stats.mindiff},
                                  {"meandiff", arm.stats.meandiff},
                                  {"sddiff", arm.stats.sddiff},
                                  {"maxkw", arm.stats.maxkw},
                                  {"minkw", arm.stats.minkw},
                                  {"meankw", arm.stats.meankw},
                                  {"sdkw", arm.stats.sdkw},
                                  {"minRMSE_std", arm.min_rmse_std},
                                  {"maxRMSE_std", arm.max_rmse_std},
                                  {"invalid_cells", arm.invalid_cells},
                                  {"best_theta", arm.best_theta_label},
                                  {"theta_tilde", arm.theta_tilde_label}};
    }
    j["iterations"].push_back(std::move(it));
  }
  out << j.dump(2) << "\n";
}

void write_benchmark_table(std::ostream& out, const BenchmarkReport& report) {
  write_config_comment(out, benchmark_config(report.params));
  out << "statistic,case";
  for (const auto& arm : report.arms) out << "," << arm.name << "_mean," << arm.name << "_sd";
  out << "\n";
  const std::string case_name = to_string(report.params.case_kind);
  const auto row = [&](const char* name, auto&& get) {
    out << name << "," << case_name;
    for (const auto& arm : report.arms) {
      const Aggregate& a = get(arm);
      out << "," << fmt(a.mean) << "," << fmt(a.sd);
    }
    out << "\n";
  };
  row("minRMSE", [](const ArmSummary& a) { return a.min_rmse; });
  row("maxRMSE", [](const ArmSummary& a) { return a.max_rmse; });
  row("maxdiff", [](const ArmSummary& a) { return a.maxdiff; });
  row("mindiff", [](const ArmSummary& a) { return a.mindiff; });
  row("meandiff", [](const ArmSummary& a) { return a.meandiff; });
  row("sddiff", [](const ArmSummary& a) { return a.sddiff; });
  row("maxkw", [](const ArmSummary& a) { return a.maxkw; });
  row("minkw", [](const ArmSummary& a) { return a.minkw; });
  row("meankw", [](const ArmSummary& a) { return a.meankw; });
  row("sdkw", [](const ArmSummary& a) { return a.sdkw; });
}

void write_predict_output(std::ostream& out, const PredictParams& params,
                          const std::vector<PredictRow>& rows, bool as_json) {
  const auto kv = predict_config(params);
  if (as_json) {
    json j;
    j["config"] = config_json(kv);
    j["rows"] = json::array();
    for (const auto& r : rows)
      j["rows"].push_back({{"prediction", r.prediction}, {"posterior_sd", r.posterior_sd}});
    out << j.dump(2) << "\n";
    return;
  }
  write_config_comment(out, kv);
  out << "prediction,posterior_sd\n";
  for (const auto& r : rows) out << fmt(r.prediction) << "," << fmt(r.posterior_sd) << "\n";
}

}  // namespace krig
