// Copyright (c) 2026 The krig authors
// SPDX-License-Identifier: Apache-2.0

#include "krig/bench.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <numeric>
#include <string>
#include <vector>

#include "krig/errors.hpp"

namespace krig {

namespace {

std::vector<std::string> split_fields(const std::string& line) {
  std::vector<std::string> fields;
  std::size_t start = 0;
  for (;;) {
    const std::size_t comma = line.find(',', start);
    if (comma == std::string::npos) {
      fields.push_back(line.substr(start));
      return fields;
    }
    fields.push_back(line.substr(start, comma - start));
    start = comma + 1;
  }
}

double parse_field(const std::string& field, std::size_t line_number) {
  double value = 0;
  const char* begin = field.data();
  const char* end = begin + field.size();
  const auto [ptr, ec] = std::from_chars(begin, end, value);
  if (ec != std::errc{} || ptr != end)
    throw ParseError(line_number, "cannot parse '" + field + "' as a number");
  if (!std::isfinite(value))
    throw ParseError(line_number, "non-finite value '" + field + "'");
  return value;
}

}  // namespace

Dataset<double> load_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw FileNotFound(path);

  std::string line;
  if (!std::getline(in, line)) throw ParseError(1, "missing header row");
  if (!line.empty() && line.back() == '\r') line.pop_back();

  const std::vector<std::string> header = split_fields(line);
  const std::size_t ncols = header.size();
  if (ncols < 2 || header.back() != "y") throw MissingColumn("y");
  for (std::size_t j = 0; j + 1 < ncols; ++j) {
    const std::string expected = "x" + std::to_string(j + 1);
    if (header[j] != expected) throw MissingColumn(expected);
  }
  const Index d = static_cast<Index>(ncols) - 1;

  std::vector<std::vector<double>> rows;
  std::size_t line_number = 1;
  while (std::getline(in, line)) {
    ++line_number;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const std::vector<std::string> fields = split_fields(line);
    if (fields.size() != ncols)
      throw ParseError(line_number, "expected " + std::to_string(ncols) + " fields, got " +
                                        std::to_string(fields.size()));
    std::vector<double> row(ncols);
    for (std::size_t j = 0; j < ncols; ++j) row[j] = parse_field(fields[j], line_number);
    rows.push_back(std::move(row));
  }

  Dataset<double> data;
  data.inputs.resize(static_cast<Index>(rows.size()), d);
  data.responses.resize(static_cast<Index>(rows.size()));
  for (std::size_t i = 0; i < rows.size(); ++i) {
    for (Index j = 0; j < d; ++j)
      data.inputs(static_cast<Index>(i), j) = rows[i][static_cast<std::size_t>(j)];
    data.responses(static_cast<Index>(i)) = rows[i][static_cast<std::size_t>(d)];
  }
  return data;
}

TrainTest make_case(const BenchmarkCase& spec) {
  if (spec.train_count < 1 || spec.test_count < 1)
    throw std::invalid_argument("make_case: counts must be >= 1");
  const double noise_sd = spec.noise_sd < 0 ? default_noise_sd(spec.kind) : spec.noise_sd;
  if (!(noise_sd >= 0)) throw std::invalid_argument("make_case: noise_sd must be >= 0");

  // Independent sub-streams for the design, the noise and the csv shuffle.
  SplitMix64 root(spec.seed);
  const Seed design_seed{root.next()};
  const Seed noise_seed{root.next()};
  const Seed shuffle_seed{root.next()};

  const Index n = spec.train_count, m = spec.test_count;
  TrainTest out;

  if (spec.kind == CaseKind::csv) {
    const Dataset<double> all = load_csv(spec.csv_path);
    if (all.n() < n + m)
      throw InsufficientRows("csv has " + std::to_string(all.n()) + " rows, need " +
                             std::to_string(n + m));
    std::vector<Index> order(static_cast<std::size_t>(all.n()));
    std::iota(order.begin(), order.end(), Index{0});
    SplitMix64 rng(shuffle_seed);
    for (Index i = all.n() - 1; i > 0; --i) {
      const auto k = static_cast<Index>(rng.next_below(static_cast<std::uint64_t>(i) + 1));
      std::swap(order[static_cast<std::size_t>(i)], order[static_cast<std::size_t>(k)]);
    }
    out.train.inputs.resize(n, all.dim());
    out.train.responses.resize(n);
    out.test.inputs.resize(m, all.dim());
    out.test.responses.resize(m);
    for (Index i = 0; i < n; ++i) {
      out.train.inputs.row(i) = all.inputs.row(order[static_cast<std::size_t>(i)]);
      out.train.responses(i) = all.responses(order[static_cast<std::size_t>(i)]);
    }
    for (Index i = 0; i < m; ++i) {
      out.test.inputs.row(i) = all.inputs.row(order[static_cast<std::size_t>(n + i)]);
      out.test.responses(i) = all.responses(order[static_cast<std::size_t>(n + i)]);
    }
    return out;
  }

  const Index d = spec.kind == CaseKind::friedman ? 5 : 8;
  const Matrix design = latin_hypercube(n + m, d, design_seed);
  out.train.inputs = design.topRows(n);
  out.test.inputs = design.bottomRows(m);

  const Vector truth_train = spec.kind == CaseKind::friedman
                                 ? friedman_each(out.train.inputs)
                                 : borehole_each(unit_to_borehole_each(out.train.inputs));
  const Vector truth_test = spec.kind == CaseKind::friedman
                                ? friedman_each(out.test.inputs)
                                : borehole_each(unit_to_borehole_each(out.test.inputs));

  out.train.responses = truth_train + gaussian_noise(n, noise_sd, noise_seed);
  out.test.responses = truth_test;  // noiseless truth, used for scoring
  return out;
}

}  // namespace krig
