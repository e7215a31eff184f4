// Copyright (c) 2026 The krig authors
// SPDX-License-Identifier: Apache-2.0
//
// Command-line entry point. Four subcommands: scan-validity, compare-1d,
// benchmark, predict. Options may also come from a plain key=value config
// file (--config); command-line flags win. Every output file embeds the
// fully resolved configuration, so identical configs reproduce identical
// bytes. Exit status is nonzero only for hard errors; per-cell validity
// failures are data.

#include <algorithm>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "krig/errors.hpp"
#include "krig/runner.hpp"

namespace {

std::ofstream open_output(const std::string& path) {
  std::ofstream out(path);
  if (!out) throw krig::Error("cannot open output file: " + path);
  return out;
}

std::string trimmed(const std::string& s) {
  const auto begin = s.find_first_not_of(" \t");
  if (begin == std::string::npos) return "";
  const auto end = s.find_last_not_of(" \t\r");
  return s.substr(begin, end - begin + 1);
}

/// Expand `--config FILE` into ordinary options: each `key=value` line
/// becomes `--key=value`, appended only when the flag is absent from the
/// command line, so explicit flags always win.
std::vector<std::string> with_config_applied(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  std::string path;
  for (std::size_t i = 0; i < args.size(); ++i) {
    if (args[i] == "--config" && i + 1 < args.size()) path = args[i + 1];
    else if (args[i].rfind("--config=", 0) == 0) path = args[i].substr(9);
  }
  if (path.empty()) return args;

  std::ifstream in(path);
  if (!in) throw krig::FileNotFound(path);
  const auto already_given = [&](const std::string& flag) {
    return std::any_of(args.begin(), args.end(), [&](const std::string& a) {
      return a == flag || a.rfind(flag + "=", 0) == 0;
    });
  };
  std::string line;
  while (std::getline(in, line)) {
    line = trimmed(line);
    if (line.empty() || line[0] == '#' || line[0] == ';' || line[0] == '[') continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw krig::Error("config file: expected key=value, got '" + line + "'");
    const std::string key = trimmed(line.substr(0, eq));
    const std::string value = trimmed(line.substr(eq + 1));
    if (key.empty()) throw krig::Error("config file: empty key in '" + line + "'");
    if (!already_given("--" + key)) args.push_back("--" + key + "=" + value);
  }
  return args;
}

void emit(const std::string& path, const std::function<void(std::ostream&)>& write) {
  if (path.empty()) {
    write(std::cout);
    return;
  }
  std::ofstream out = open_output(path);
  write(out);
}

krig::DesignKind parse_design(const std::string& s) {
  if (s == "grid") return krig::DesignKind::grid;
  if (s == "sobol") return krig::DesignKind::sobol;
  throw krig::Error("unknown design: " + s);
}

krig::CaseKind parse_case(const std::string& s) {
  if (s == "friedman") return krig::CaseKind::friedman;
  if (s == "borehole") return krig::CaseKind::borehole;
  if (s == "csv") return krig::CaseKind::csv;
  throw krig::Error("unknown case: " + s);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Gaussian-process regression toolkit: deep-network (NNGP) and Matern kernels,\n"
               "kriging-weight studies, and benchmark harness",
               "krig"};
  app.require_subcommand(1);
  std::string config_path;  // read by with_config_applied before parsing

  // ---- scan-validity ----
  krig::ScanParams scan;
  std::string scan_out, scan_format = "csv";
  const auto add_config_option = [&](CLI::App* sub) {
    sub->add_option("--config", config_path,
                    "Plain key=value config file; command-line flags override");
  };

  auto* cmd_scan = app.add_subcommand(
      "scan-validity", "Scan an NNGP hyperparameter grid for positive definiteness and flatness");
  add_config_option(cmd_scan);
  cmd_scan->add_option("--depths", scan.depths, "Network depths to scan")
      ->delimiter(',')
      ->capture_default_str();
  cmd_scan->add_option("--grid-res", scan.grid_res, "Grid resolution per sigma axis")
      ->check(CLI::Range(2, 1000))
      ->capture_default_str();
  cmd_scan->add_option("--sigma-min", scan.sigma_min, "Smallest sigma_a/sigma_b")
      ->capture_default_str();
  cmd_scan->add_option("--sigma-max", scan.sigma_max, "Largest sigma_a/sigma_b")
      ->capture_default_str();
  cmd_scan->add_option("--n", scan.n, "Size of the embedded 1-D grid")->capture_default_str();
  cmd_scan->add_option("--nugget", scan.nugget, "Nugget variance")->capture_default_str();
  cmd_scan->add_option("--eps-flat", scan.eps_flat, "Flatness threshold on the correlation gap")
      ->capture_default_str();
  cmd_scan->add_option("--threads", scan.threads, "Worker threads (0 = hardware)")
      ->capture_default_str();
  cmd_scan->add_option("--out", scan_out, "Output file (default: stdout)");
  cmd_scan->add_option("--format", scan_format, "Output format")
      ->check(CLI::IsMember({"csv", "json"}))
      ->capture_default_str();

  // ---- compare-1d ----
  krig::CompareParams cmp;
  std::vector<krig::Index> cmp_n = cmp.n_list;
  std::string cmp_design = "grid", cmp_predict_at = "center";
  std::string cmp_out, cmp_format = "csv";
  bool cmp_no_refine = false;
  auto* cmd_cmp = app.add_subcommand(
      "compare-1d", "Kriging-weight correspondence of the NNGP and Matern 3/2 kernels in 1-D");
  add_config_option(cmd_cmp);
  cmd_cmp->add_option("--n", cmp_n, "Design sizes")->delimiter(',')->capture_default_str();
  cmd_cmp->add_option("--design", cmp_design, "1-D design: grid or sobol")
      ->check(CLI::IsMember({"grid", "sobol"}))
      ->capture_default_str();
  cmd_cmp->add_option("--depth", cmp.depth, "NNGP depth")->capture_default_str();
  cmd_cmp->add_option("--sigma-a", cmp.sigma_a, "NNGP weight-prior scale")->capture_default_str();
  cmd_cmp->add_option("--sigma-b", cmp.sigma_b, "NNGP bias-prior scale")->capture_default_str();
  cmd_cmp->add_option("--nugget", cmp.nugget, "Nugget variance")->capture_default_str();
  cmd_cmp->add_option("--rho-min", cmp.rho.rho_min, "Smallest Matern length scale")
      ->capture_default_str();
  cmd_cmp->add_option("--rho-max", cmp.rho.rho_max, "Largest Matern length scale")
      ->capture_default_str();
  cmd_cmp->add_option("--rho-count", cmp.rho.count, "Coarse length-scale grid size")
      ->capture_default_str();
  cmd_cmp->add_flag("--no-refine", cmp_no_refine,
                    "Skip golden-section refinement of the length-scale search");
  cmd_cmp->add_option("--predict-at", cmp_predict_at,
                      "Prediction locations: the midpoint nearest the domain center, or all "
                      "adjacent midpoints")
      ->check(CLI::IsMember({"center", "midpoints"}))
      ->capture_default_str();
  cmd_cmp->add_option("--out", cmp_out, "Output file (default: stdout)");
  cmd_cmp->add_option("--format", cmp_format, "Output format")
      ->check(CLI::IsMember({"csv", "json"}))
      ->capture_default_str();

  // ---- benchmark ----
  krig::BenchmarkParams bench;
  std::string bench_case = "friedman";
  std::string bench_out;
  std::uint64_t bench_seed = 1;
  auto* cmd_bench = app.add_subcommand(
      "benchmark", "Three-arm kernel comparison (NNGP grid, fixed Matern 3/2, varied Matern)");
  add_config_option(cmd_bench);
  cmd_bench->add_option("--case", bench_case, "Benchmark case")
      ->check(CLI::IsMember({"friedman", "borehole", "csv"}))
      ->capture_default_str();
  cmd_bench->add_option("--train", bench.csv_path, "Input CSV (x1,...,xd,y) for the csv case");
  cmd_bench->add_option("--train-count", bench.train_count, "Training points per iteration")
      ->capture_default_str();
  cmd_bench->add_option("--test-count", bench.test_count, "Test points per iteration")
      ->capture_default_str();
  cmd_bench->add_option("--noise-sd", bench.noise_sd,
                        "Observation noise sd (negative = case default: 1 for friedman, else 0)")
      ->capture_default_str();
  cmd_bench->add_option("--iterations", bench.iterations, "Random repetitions")
      ->capture_default_str();
  cmd_bench->add_option("--seed", bench_seed, "Root seed")->capture_default_str();
  cmd_bench->add_option("--nugget", bench.nugget, "Nugget variance")->capture_default_str();
  cmd_bench->add_option("--depth", bench.depth, "NNGP depth")->capture_default_str();
  cmd_bench->add_option("--grid-res", bench.grid_res, "NNGP sigma grid resolution per axis")
      ->check(CLI::Range(2, 1000))
      ->capture_default_str();
  cmd_bench->add_option("--sigma-min", bench.sigma_min, "Smallest sigma_a/sigma_b")
      ->capture_default_str();
  cmd_bench->add_option("--sigma-max", bench.sigma_max, "Largest sigma_a/sigma_b")
      ->capture_default_str();
  cmd_bench->add_option("--fixed-nu", bench.fixed_nu, "Fixed-arm smoothness")
      ->capture_default_str();
  cmd_bench->add_option("--fixed-rho", bench.fixed_rho, "Fixed-arm length scale")
      ->capture_default_str();
  cmd_bench->add_option("--nus", bench.nus, "Varied-arm smoothness values (inf = RBF limit)")
      ->delimiter(',')
      ->capture_default_str();
  cmd_bench->add_option("--rho-min", bench.rho_min, "Varied-arm smallest length scale")
      ->capture_default_str();
  cmd_bench->add_option("--rho-max", bench.rho_max, "Varied-arm largest length scale")
      ->capture_default_str();
  cmd_bench->add_option("--rho-count", bench.rho_count, "Varied-arm length-scale grid size")
      ->capture_default_str();
  cmd_bench->add_option("--threads", bench.threads, "Worker threads (0 = hardware)")
      ->capture_default_str();
  cmd_bench->add_option("--out", bench_out,
                        "Output prefix: writes <out>.json and <out>.csv (default: JSON to stdout)");

  // ---- predict ----
  krig::PredictParams pred;
  std::string pred_kernel = "matern";
  double pred_nu = 1.5, pred_rho = 1.0, pred_sigma_a = 1.0, pred_sigma_b = 0.5;
  int pred_depth = 2;
  std::string pred_out, pred_format = "csv";
  auto* cmd_pred = app.add_subcommand("predict", "Posterior mean and sd at test inputs");
  add_config_option(cmd_pred);
  cmd_pred->add_option("--train", pred.train_csv, "Training CSV (x1,...,xd,y)")->required();
  cmd_pred->add_option("--test", pred.test_csv, "Test CSV (x1,...,xd,y)")->required();
  cmd_pred->add_option("--kernel", pred_kernel, "Kernel family")
      ->check(CLI::IsMember({"matern", "nngp"}))
      ->capture_default_str();
  cmd_pred->add_option("--nu", pred_nu, "Matern smoothness (0.5, 1.5, 2.5 or inf)")
      ->capture_default_str();
  cmd_pred->add_option("--rho", pred_rho, "Matern length scale")->capture_default_str();
  cmd_pred->add_option("--sigma-a", pred_sigma_a, "NNGP weight-prior scale")
      ->capture_default_str();
  cmd_pred->add_option("--sigma-b", pred_sigma_b, "NNGP bias-prior scale")
      ->capture_default_str();
  cmd_pred->add_option("--depth", pred_depth, "NNGP depth")->capture_default_str();
  cmd_pred->add_option("--nugget", pred.nugget, "Nugget variance")->capture_default_str();
  cmd_pred->add_option("--out", pred_out, "Output file (default: stdout)");
  cmd_pred->add_option("--format", pred_format, "Output format")
      ->check(CLI::IsMember({"csv", "json"}))
      ->capture_default_str();

  try {
    std::vector<std::string> args = with_config_applied(argc, argv);
    std::reverse(args.begin(), args.end());  // CLI11 consumes from the back
    app.parse(std::move(args));
  } catch (const CLI::ParseError& err) {
    return app.exit(err);
  } catch (const std::exception& err) {
    std::cerr << "error: " << err.what() << "\n";
    return 1;
  }

  try {
    if (cmd_scan->parsed()) {
      const auto rows = krig::run_scan_validity(scan);
      emit(scan_out, [&](std::ostream& out) {
        krig::write_scan_output(out, scan, rows, scan_format == "json");
      });
      if (!scan_out.empty()) {
        std::size_t invalid = 0;
        for (const auto& r : rows)
          if (!r.is_pd || r.is_flat) ++invalid;
        std::cout << "wrote " << rows.size() << " cells (" << invalid << " invalid) to "
                  << scan_out << "\n";
      }
    } else if (cmd_cmp->parsed()) {
      cmp.n_list = cmp_n;
      cmp.design = parse_design(cmp_design);
      cmp.rho.refine = !cmp_no_refine;
      cmp.predict_at =
          cmp_predict_at == "center" ? krig::PredictAt::center : krig::PredictAt::midpoints;
      const auto rows = krig::run_compare_1d(cmp);
      emit(cmp_out, [&](std::ostream& out) {
        krig::write_compare_output(out, cmp, rows, cmp_format == "json");
      });
      if (!cmp_out.empty()) {
        std::cout << "wrote " << rows.size() << " rows to " << cmp_out << "\n";
        for (const auto& r : rows)
          std::cout << "  n=" << r.n << " max_abs_diff=" << r.max_abs_diff
                    << " (rho=" << r.best_rho << ")\n";
      }
    } else if (cmd_bench->parsed()) {
      bench.case_kind = parse_case(bench_case);
      bench.seed = krig::Seed{bench_seed};
      const auto report = krig::run_benchmark(bench);
      if (bench_out.empty()) {
        krig::write_benchmark_json(std::cout, report);
      } else {
        {
          auto out = open_output(bench_out + ".json");
          krig::write_benchmark_json(out, report);
        }
        {
          auto out = open_output(bench_out + ".csv");
          krig::write_benchmark_table(out, report);
        }
        std::cout << "wrote " << bench_out << ".json and " << bench_out << ".csv ("
                  << report.iterations.size() << " iterations, " << report.failed_iterations
                  << " failed)\n";
        for (const auto& arm : report.arms)
          std::cout << "  " << arm.name << ": minRMSE " << arm.min_rmse.mean << " ("
                    << arm.min_rmse.sd << ")\n";
      }
    } else if (cmd_pred->parsed()) {
      if (pred_kernel == "nngp") {
        pred.kernel = krig::NngpSpec<double>{pred_depth, pred_sigma_a, pred_sigma_b, 1};
      } else {
        pred.kernel = krig::MaternSpec<double>{pred_nu, pred_rho, 1.0};
      }
      const auto rows = krig::run_predict(pred);
      emit(pred_out, [&](std::ostream& out) {
        krig::write_predict_output(out, pred, rows, pred_format == "json");
      });
      if (!pred_out.empty())
        std::cout << "wrote " << rows.size() << " predictions to " << pred_out << "\n";
    }
  } catch (const std::exception& err) {
    std::cerr << "error: " << err.what() << "\n";
    return 1;
  }
  return 0;
}
