#include "antta/stats.hpp"

#include "doctest.h"

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>
#include <stdexcept>

using namespace antta;

namespace {

std::vector<ScalingPoint> synthetic(ScalingModel model, double c) {
  std::vector<ScalingPoint> pts;
  for (double n : {128.0, 256.0, 512.0, 1024.0, 2048.0}) pts.push_back({n, c * evaluate(model, n)});
  return pts;
}

}  // namespace

TEST_CASE("summarize basic statistics") {
  const std::vector<double> fives{5, 5, 5, 5};
  const auto s = summarize(10, fives);
  CHECK(s.mean == 5.0);
  CHECK(s.std_dev == 0.0);
  CHECK(s.ci_low == 5.0);

  const std::vector<double> zeros(8, 0.0);
  CHECK(summarize(10, zeros).mean == 0.0);

  const std::vector<double> v{1, 2, 3, 4};
  const auto t = summarize(3, v);
  CHECK(t.mean == doctest::Approx(2.5));
  CHECK(t.std_dev == doctest::Approx(std::sqrt(5.0 / 3.0)));
  CHECK(t.std_error == doctest::Approx(t.std_dev / 2.0));
  CHECK(t.ci_high - t.mean == doctest::Approx(1.96 * t.std_error));
}

TEST_CASE("summarize rejects timeouts and tiny samples") {
  const std::vector<double> one{3};
  CHECK_THROWS_AS(summarize(1, one), std::invalid_argument);
  std::vector<RunResult> runs(3);
  for (auto& r : runs) r.terminated = true;
  runs[1].terminated = false;
  CHECK_THROWS_AS(summarize(4, runs), std::invalid_argument);
}

TEST_CASE("summarize recovers a geometric mean and is permutation invariant") {
  std::mt19937_64 gen(3);
  std::geometric_distribution<int> geo(1.0 / 3.0);
  std::vector<double> samples;
  for (int i = 0; i < 10000; ++i) samples.push_back(geo(gen) + 1.0);
  const auto s = summarize(1, samples);
  CHECK(std::abs(s.mean - 3.0) < 3 * s.std_error);

  auto shuffled = samples;
  std::shuffle(shuffled.begin(), shuffled.end(), gen);
  const auto t = summarize(1, shuffled);
  CHECK(t.mean == doctest::Approx(s.mean).epsilon(1e-12));
  CHECK(t.std_dev == doctest::Approx(s.std_dev).epsilon(1e-12));
}

TEST_CASE("fit_scaling recovers each generating law from noiseless data") {
  for (auto model : kScalingModels) {
    const auto fit = fit_scaling(synthetic(model, 2.0));
    CHECK(fit.best_model == model);
    CHECK(fit.fit(model).r2 >= 0.999);
    CHECK(fit.fit(model).c == doctest::Approx(2.0));
  }
  const auto log_fit = fit_scaling(synthetic(ScalingModel::Log, 7.0));
  CHECK(log_fit.best_model == ScalingModel::Log);
  CHECK(log_fit.fit(ScalingModel::Log).r2 == doctest::Approx(1.0));
}

TEST_CASE("best model is scale invariant") {
  std::mt19937_64 gen(6);
  std::normal_distribution<double> noise(1.0, 0.05);
  for (auto model : kScalingModels) {
    auto pts = synthetic(model, 3.0);
    for (auto& p : pts) p.mean_rounds *= noise(gen);
    const auto best = fit_scaling(pts).best_model;
    for (auto& p : pts) p.mean_rounds *= 42.0;
    CHECK(fit_scaling(pts).best_model == best);
  }
}

TEST_CASE("fit_scaling needs four distinct points; constant data ties go to ln n") {
  const std::vector<ScalingPoint> three{{1, 1}, {2, 2}, {3, 3}};
  CHECK_THROWS_AS(fit_scaling(three), std::invalid_argument);
  const std::vector<ScalingPoint> dup{{2, 1}, {2, 2}, {3, 3}, {4, 4}};
  CHECK_THROWS_AS(fit_scaling(dup), std::invalid_argument);
  const std::vector<ScalingPoint> flat{{10, 5}, {20, 5}, {40, 5}, {80, 5}};
  const auto fit = fit_scaling(flat);
  CHECK(fit.best_model == ScalingModel::Log);
}

TEST_CASE("fit JSON names every model") {
  const auto doc = to_json(fit_scaling(synthetic(ScalingModel::NLogN, 1.5)));
  CHECK(doc.at("best_model") == "n_ln_n");
  for (auto key : {"ln_n", "n", "n_ln_n", "n_squared"}) {
    CHECK(doc.at("models").contains(key));
    CHECK(doc.at("models").at(key).contains("r2"));
  }
}

TEST_CASE("gap_report ratios") {
  const std::vector<double> a{10, 12, 14}, b{1, 2, 3};
  const std::vector<TrialSummary> slow{summarize(100, a), summarize(200, a)};
  const std::vector<TrialSummary> fast{summarize(100, b), summarize(200, b)};
  const auto same = gap_report(slow, slow);
  for (const auto& row : same) CHECK(row.ratio == 1.0);
  const auto rows = gap_report(slow, fast);
  CHECK(rows[0].ratio == doctest::Approx(6.0));
  CHECK(rows[0].ci_low < 6.0);
  CHECK(rows[0].ci_high > 6.0);

  const std::vector<double> zeros{0, 0};
  const std::vector<TrialSummary> instant{summarize(100, zeros), summarize(200, zeros)};
  const auto inf_rows = gap_report(slow, instant);
  CHECK(std::isinf(inf_rows[0].ratio));
  std::ostringstream csv;
  write_gap_csv(csv, inf_rows);
  CHECK(csv.str().find("100,inf") != std::string::npos);

  const std::vector<TrialSummary> other{summarize(100, b), summarize(300, b)};
  CHECK_THROWS_AS(gap_report(slow, other), std::invalid_argument);
  const std::vector<TrialSummary> shorter{summarize(100, b)};
  CHECK_THROWS_AS(gap_report(slow, shorter), std::invalid_argument);
}

TEST_CASE("sweep CSV round-trips exactly") {
  std::mt19937_64 gen(10);
  std::uniform_real_distribution<double> u(0.0, 1e5);
  std::vector<SweepCell> cells;
  for (std::size_t i = 0; i < 20; ++i) {
    std::vector<double> xs;
    for (int k = 0; k < 30; ++k) xs.push_back(std::floor(u(gen)));
    cells.push_back({"upper-worst[idle=1/10]", summarize(128 << (i % 4), xs), false});
  }
  SweepCell timeout;
  timeout.scenario = "lowerbound-chain";
  timeout.summary.n = 64;
  timeout.summary.trials = 5;
  timeout.timed_out = true;
  cells.push_back(timeout);

  std::stringstream csv;
  write_sweep_csv(csv, cells);
  CHECK(csv.str().rfind("scenario,n,trials,mean,std,stderr,ci_low,ci_high\n", 0) == 0);
  CHECK(read_sweep_csv(csv) == cells);
}

TEST_CASE("format_real is shortest round-trip") {
  CHECK(format_real(0.1) == "0.1");
  CHECK(format_real(6.0) == "6");
  CHECK(parse_real(format_real(1.0 / 3.0)) == 1.0 / 3.0);
  CHECK(std::isinf(parse_real("inf")));
  CHECK_THROWS_AS(parse_real("1.2.3"), std::invalid_argument);
}
