// Copyright (c) 2026 The krig authors
// SPDX-License-Identifier: Apache-2.0

#include "krig/bench.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <numbers>
#include <string>

#include <doctest.h>

#include "test_helpers.hpp"

using namespace krig;

namespace {

struct TempCsv {
  std::string path;
  explicit TempCsv(const std::string& name, const std::string& content)
      : path("krig_test_" + name + ".csv") {
    std::ofstream out(path);
    out << content;
  }
  ~TempCsv() { std::remove(path.c_str()); }
};

Vector vec5(double a, double b, double c, double d, double e) {
  Vector v(5);
  v << a, b, c, d, e;
  return v;
}

}  // namespace

TEST_SUITE_BEGIN("bench");

TEST_CASE("friedman spot values") {
  CHECK(friedman(vec5(0, 0, 0.5, 0, 0)) == 0.0);
  CHECK(friedman(vec5(0.5, 0.5, 0.5, 0.5, 0.5)) ==
        doctest::Approx(14.571067811865476).epsilon(1e-14));
  CHECK(friedman(vec5(1, 1, 1, 1, 1)) == doctest::Approx(20.0).epsilon(1e-12));
  CHECK_THROWS_AS(friedman(Vector(Vector::Ones(4))), DimensionMismatch);
}

TEST_CASE("borehole spot values") {
  Vector mid(8);
  mid << 0.1, 2550.0, 89335.0, 1045.0, 89.55, 760.0, 1400.0, 10950.0;
  CHECK(borehole(mid) == doctest::Approx(69.72022470540722).epsilon(1e-12));

  Vector degenerate = mid;
  degenerate(3) = 760.0;  // H_u == H_l
  CHECK(borehole(degenerate) == 0.0);
  CHECK_FALSE(borehole_in_range(degenerate));
  CHECK(borehole_in_range(mid));
  CHECK_THROWS_AS(borehole(Vector(Vector::Ones(7))), DimensionMismatch);
}

TEST_CASE("borehole is increasing in the upper head") {
  SplitMix64 rng(4);
  for (int i = 0; i < 20; ++i) {
    Vector u(8);
    for (Index j = 0; j < 8; ++j) u(j) = rng.next_double();
    Vector x = unit_to_borehole(u);
    Vector bumped = x;
    bumped(3) += 1.0;
    CHECK(borehole(bumped) > borehole(x));
  }
}

TEST_CASE("unit_to_borehole hits the stated ranges") {
  const Vector lo = unit_to_borehole(Vector(Vector::Zero(8)));
  const Vector hi = unit_to_borehole(Vector(Vector::Ones(8)));
  const Vector mid = unit_to_borehole(Vector(Vector::Constant(8, 0.5)));
  for (Index i = 0; i < 8; ++i) {
    const auto k = static_cast<std::size_t>(i);
    CHECK(lo(i) == kBoreholeLower[k]);
    CHECK(hi(i) == kBoreholeUpper[k]);
    CHECK(mid(i) == doctest::Approx(0.5 * (kBoreholeLower[k] + kBoreholeUpper[k])));
  }
}

TEST_CASE("friedman and borehole match independent re-implementations") {
  // Deliberately different formula arrangements.
  const auto friedman_oracle = [](const Vector& x) {
    double acc = 5.0 * x(4) + 10.0 * x(3);
    acc += 20.0 * std::pow(x(2) - 0.5, 2.0);
    acc += 10.0 * std::sin(std::numbers::pi * x(0) * x(1));
    return acc;
  };
  const auto borehole_oracle = [](const Vector& x) {
    const double lg = std::log(x(1)) - std::log(x(0));
    const double numer = 2.0 * std::numbers::pi * x(2) * (x(3) - x(5));
    const double denom =
        lg + 2.0 * x(6) * x(2) / (x(0) * x(0) * x(7)) + lg * x(2) / x(4);
    return numer / denom;
  };
  SplitMix64 rng(11);
  for (int i = 0; i < 1000; ++i) {
    Vector u5(5), u8(8);
    for (Index j = 0; j < 5; ++j) u5(j) = rng.next_double();
    for (Index j = 0; j < 8; ++j) u8(j) = rng.next_double();
    const double f = friedman(u5);
    CHECK(std::abs(f - friedman_oracle(u5)) <= 1e-12 * std::max(1.0, std::abs(f)));
    const Vector x8 = unit_to_borehole(u8);
    const double b = borehole(x8);
    CHECK(std::abs(b - borehole_oracle(x8)) <= 1e-12 * std::max(1.0, std::abs(b)));
  }
}

TEST_CASE("load_csv parses a well-formed file") {
  TempCsv file("ok", "x1,x2,y\n0.1,0.2,1.5\n0.3,0.4,2.5\n0.5,0.6,3.5\n");
  const auto data = load_csv(file.path);
  CHECK(data.n() == 3);
  CHECK(data.dim() == 2);
  CHECK(data.inputs(1, 1) == 0.4);
  CHECK(data.responses(2) == 3.5);
}

TEST_CASE("load_csv rejects non-finite and malformed rows") {
  TempCsv nan_file("nan", "x1,y\n0.1,1.0\n0.2,NaN\n");
  try {
    load_csv(nan_file.path);
    FAIL("expected ParseError");
  } catch (const ParseError& err) {
    CHECK(err.line == 3);
  }
  TempCsv bad("bad", "x1,y\n0.1,hello\n");
  CHECK_THROWS_AS(load_csv(bad.path), ParseError);
  TempCsv short_row("short", "x1,x2,y\n0.1,0.2\n");
  CHECK_THROWS_AS(load_csv(short_row.path), ParseError);
}

TEST_CASE("load_csv requires the x1..xd,y header") {
  TempCsv no_y("noy", "x1,x2\n0.1,0.2\n");
  CHECK_THROWS_AS(load_csv(no_y.path), MissingColumn);
  TempCsv wrong("wrong", "a,y\n0.1,0.2\n");
  try {
    load_csv(wrong.path);
    FAIL("expected MissingColumn");
  } catch (const MissingColumn& err) {
    CHECK(err.column == "x1");
  }
  CHECK_THROWS_AS(load_csv("definitely_not_here.csv"), FileNotFound);
}

TEST_CASE("make_case synthetic determinism and disjointness") {
  BenchmarkCase spec;
  spec.kind = CaseKind::friedman;
  spec.train_count = 40;
  spec.test_count = 25;
  spec.seed = Seed{99};
  const auto a = make_case(spec);
  const auto b = make_case(spec);
  CHECK(a.train.inputs == b.train.inputs);
  CHECK(a.train.responses == b.train.responses);
  CHECK(a.test.inputs == b.test.inputs);

  spec.seed = Seed{100};
  const auto c = make_case(spec);
  CHECK(a.train.inputs != c.train.inputs);

  CHECK(a.train.n() == 40);
  CHECK(a.test.n() == 25);
  CHECK(a.train.dim() == 5);
  // train and test rows come from one design; no row appears twice
  for (Index i = 0; i < a.train.n(); ++i)
    for (Index j = 0; j < a.test.n(); ++j)
      CHECK((a.train.inputs.row(i) - a.test.inputs.row(j)).norm() > 0);
}

TEST_CASE("make_case test responses are the noiseless surface") {
  BenchmarkCase spec;
  spec.kind = CaseKind::friedman;
  spec.train_count = 10;
  spec.test_count = 10;
  spec.noise_sd = 3.0;
  spec.seed = Seed{5};
  const auto data = make_case(spec);
  for (Index i = 0; i < data.test.n(); ++i)
    CHECK(data.test.responses(i) == friedman(Vector(data.test.inputs.row(i))));
  // training responses carry noise
  double max_gap = 0;
  for (Index i = 0; i < data.train.n(); ++i)
    max_gap = std::max(max_gap, std::abs(data.train.responses(i) -
                                         friedman(Vector(data.train.inputs.row(i)))));
  CHECK(max_gap > 0.1);
}

TEST_CASE("make_case borehole outputs are positive over the design") {
  BenchmarkCase spec;
  spec.kind = CaseKind::borehole;
  spec.train_count = 50;
  spec.test_count = 50;
  spec.seed = Seed{17};
  const auto data = make_case(spec);
  CHECK(data.train.dim() == 8);
  CHECK(data.train.responses.minCoeff() > 0.0);
  CHECK(data.test.responses.minCoeff() > 0.0);
  // inputs live in the unit cube, responses on the physical surface
  CHECK(data.train.inputs.maxCoeff() <= 1.0);
  CHECK(data.train.inputs.minCoeff() >= 0.0);
}

TEST_CASE("make_case csv splitting") {
  TempCsv file("split",
               "x1,y\n1,10\n2,20\n3,30\n4,40\n5,50\n6,60\n");
  BenchmarkCase spec;
  spec.kind = CaseKind::csv;
  spec.csv_path = file.path;
  spec.train_count = 4;
  spec.test_count = 2;
  spec.seed = Seed{1};
  const auto data = make_case(spec);
  CHECK(data.train.n() == 4);
  CHECK(data.test.n() == 2);
  // all six rows used exactly once
  std::vector<double> seen;
  for (Index i = 0; i < 4; ++i) seen.push_back(data.train.inputs(i, 0));
  for (Index i = 0; i < 2; ++i) seen.push_back(data.test.inputs(i, 0));
  std::sort(seen.begin(), seen.end());
  CHECK(seen == std::vector<double>{1, 2, 3, 4, 5, 6});

  spec.train_count = 5;
  CHECK_THROWS_AS(make_case(spec), InsufficientRows);
}

TEST_SUITE_END();
