// antta/stats.hpp
//
// Trial aggregation, one-parameter scaling-law fits and the idle/no-idle gap
// table.
#pragma once

#include "antta/engine.hpp"

#include "json.hpp"

#include <array>
#include <iosfwd>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace antta {

struct TrialSummary {
  std::size_t n = 0;
  std::size_t trials = 0;
  double mean = 0.0;
  double std_dev = 0.0;    // sample standard deviation
  double std_error = 0.0;  // std_dev / sqrt(trials)
  double ci_low = 0.0;     // mean - 1.96 * std_error
  double ci_high = 0.0;    // mean + 1.96 * std_error

  friend bool operator==(const TrialSummary&, const TrialSummary&) = default;
};

// Throws std::invalid_argument for fewer than two trials or any trial that did
// not terminate.
TrialSummary summarize(std::size_t n, std::span<const double> rounds);
TrialSummary summarize(std::size_t n, std::span<const RunResult> results);

// Candidate growth laws, ordered from slowest to fastest.
enum class ScalingModel { Log, Linear, NLogN, Quadratic };

inline constexpr std::array<ScalingModel, 4> kScalingModels = {
    ScalingModel::Log, ScalingModel::Linear, ScalingModel::NLogN, ScalingModel::Quadratic};

std::string_view display_name(ScalingModel model) noexcept;  // "n ln n"
std::string_view key_name(ScalingModel model) noexcept;      // "n_ln_n"
double evaluate(ScalingModel model, double n) noexcept;

struct ModelFit {
  ScalingModel model = ScalingModel::Log;
  double c = 0.0;    // least squares through the origin
  double rss = 0.0;
  double r2 = 0.0;   // against the mean of y; -inf when y is constant and the fit is inexact
};

struct ScalingFit {
  std::array<ModelFit, 4> fits{};
  ScalingModel best_model = ScalingModel::Log;

  const ModelFit& fit(ScalingModel model) const;
};

struct ScalingPoint {
  double n = 0.0;
  double mean_rounds = 0.0;
};

// Needs at least four points with distinct n. Ties in R^2 go to the slower law.
ScalingFit fit_scaling(std::span<const ScalingPoint> points);

nlohmann::json to_json(const ScalingFit& fit);

struct GapRow {
  std::size_t n = 0;
  double ratio = 0.0;  // +inf when the idle mean is zero
  double std_error = 0.0;
  double ci_low = 0.0;
  double ci_high = 0.0;
};

// Per n, mean_no_idle / mean_with_idle with first-order error propagation.
// Throws std::invalid_argument when the n columns differ.
std::vector<GapRow> gap_report(std::span<const TrialSummary> no_idle,
                               std::span<const TrialSummary> with_idle);

void write_gap_csv(std::ostream& out, std::span<const GapRow> rows);

// One row of a sweep CSV. Timed-out cells keep n and trials; their statistics
// are written as "timeout".
struct SweepCell {
  std::string scenario;
  TrialSummary summary;
  bool timed_out = false;

  friend bool operator==(const SweepCell&, const SweepCell&) = default;
};

void write_sweep_csv(std::ostream& out, std::span<const SweepCell> cells);
std::vector<SweepCell> read_sweep_csv(std::istream& in);

// Shortest text that parses back to the same double; "inf" for infinities.
std::string format_real(double value);
double parse_real(std::string_view text);

}  // namespace antta
