#include "antta/stats.hpp"

#include <charconv>
#include <cmath>
#include <istream>
#include <limits>
#include <ostream>
#include <set>
#include <sstream>
#include <stdexcept>

namespace antta {

TrialSummary summarize(std::size_t n, std::span<const double> rounds) {
  if (rounds.size() < 2) throw std::invalid_argument("summarize needs at least two trials");
  TrialSummary s;
  s.n = n;
  s.trials = rounds.size();
  double sum = 0.0;
  for (double r : rounds) sum += r;
  s.mean = sum / static_cast<double>(s.trials);
  double ss = 0.0;
  for (double r : rounds) ss += (r - s.mean) * (r - s.mean);
  s.std_dev = std::sqrt(ss / static_cast<double>(s.trials - 1));
  s.std_error = s.std_dev / std::sqrt(static_cast<double>(s.trials));
  s.ci_low = s.mean - 1.96 * s.std_error;
  s.ci_high = s.mean + 1.96 * s.std_error;
  return s;
}

TrialSummary summarize(std::size_t n, std::span<const RunResult> results) {
  std::vector<double> rounds;
  rounds.reserve(results.size());
  for (const auto& r : results) {
    if (!r.terminated) throw std::invalid_argument("cannot summarize a trial that timed out");
    rounds.push_back(static_cast<double>(r.rounds));
  }
  return summarize(n, rounds);
}

std::string_view display_name(ScalingModel model) noexcept {
  switch (model) {
    case ScalingModel::Log: return "ln n";
    case ScalingModel::Linear: return "n";
    case ScalingModel::NLogN: return "n ln n";
    case ScalingModel::Quadratic: return "n^2";
  }
  return "?";
}

std::string_view key_name(ScalingModel model) noexcept {
  switch (model) {
    case ScalingModel::Log: return "ln_n";
    case ScalingModel::Linear: return "n";
    case ScalingModel::NLogN: return "n_ln_n";
    case ScalingModel::Quadratic: return "n_squared";
  }
  return "?";
}

double evaluate(ScalingModel model, double n) noexcept {
  switch (model) {
    case ScalingModel::Log: return std::log(n);
    case ScalingModel::Linear: return n;
    case ScalingModel::NLogN: return n * std::log(n);
    case ScalingModel::Quadratic: return n * n;
  }
  return 0.0;
}

const ModelFit& ScalingFit::fit(ScalingModel model) const {
  return fits[static_cast<std::size_t>(model)];
}

ScalingFit fit_scaling(std::span<const ScalingPoint> points) {
  if (points.size() < 4) throw std::invalid_argument("fit_scaling needs at least four points");
  std::set<double> distinct;
  for (const auto& p : points) distinct.insert(p.n);
  if (distinct.size() != points.size()) throw std::invalid_argument("fit_scaling needs distinct n");

  double y_mean = 0.0;
  for (const auto& p : points) y_mean += p.mean_rounds;
  y_mean /= static_cast<double>(points.size());
  double tss = 0.0;
  for (const auto& p : points) tss += (p.mean_rounds - y_mean) * (p.mean_rounds - y_mean);

  ScalingFit out;
  for (auto model : kScalingModels) {
    double fy = 0.0;
    double ff = 0.0;
    for (const auto& p : points) {
      const double f = evaluate(model, p.n);
      fy += f * p.mean_rounds;
      ff += f * f;
    }
    ModelFit& fit = out.fits[static_cast<std::size_t>(model)];
    fit.model = model;
    fit.c = fy / ff;
    for (const auto& p : points) {
      const double r = p.mean_rounds - fit.c * evaluate(model, p.n);
      fit.rss += r * r;
    }
    if (tss > 0.0) {
      fit.r2 = 1.0 - fit.rss / tss;
    } else {
      fit.r2 = fit.rss == 0.0 ? 1.0 : -std::numeric_limits<double>::infinity();
    }
  }
  out.best_model = ScalingModel::Log;
  for (auto model : kScalingModels) {
    if (out.fit(model).r2 > out.fit(out.best_model).r2) out.best_model = model;
  }
  return out;
}

nlohmann::json to_json(const ScalingFit& fit) {
  nlohmann::json models = nlohmann::json::object();
  for (const auto& f : fit.fits) {
    models[std::string(key_name(f.model))] = {{"c", f.c}, {"r2", f.r2}, {"rss", f.rss}};
  }
  return {{"models", models}, {"best_model", std::string(key_name(fit.best_model))}};
}

std::vector<GapRow> gap_report(std::span<const TrialSummary> no_idle,
                               std::span<const TrialSummary> with_idle) {
  if (no_idle.size() != with_idle.size()) throw std::invalid_argument("gap_report: n sets differ");
  std::vector<GapRow> rows;
  rows.reserve(no_idle.size());
  for (std::size_t i = 0; i < no_idle.size(); ++i) {
    const auto& a = no_idle[i];
    const auto& b = with_idle[i];
    if (a.n != b.n) throw std::invalid_argument("gap_report: n sets differ");
    GapRow row;
    row.n = a.n;
    if (b.mean == 0.0) {
      row.ratio = std::numeric_limits<double>::infinity();
      row.std_error = std::numeric_limits<double>::infinity();
      row.ci_low = row.ci_high = row.ratio;
    } else {
      row.ratio = a.mean / b.mean;
      const double rel_a = a.mean == 0.0 ? 0.0 : a.std_error / a.mean;
      const double rel_b = b.std_error / b.mean;
      row.std_error = std::abs(row.ratio) * std::sqrt(rel_a * rel_a + rel_b * rel_b);
      row.ci_low = row.ratio - 1.96 * row.std_error;
      row.ci_high = row.ratio + 1.96 * row.std_error;
    }
    rows.push_back(row);
  }
  return rows;
}

void write_gap_csv(std::ostream& out, std::span<const GapRow> rows) {
  out << "n,ratio,stderr,ci_low,ci_high\n";
  for (const auto& r : rows) {
    out << r.n << ',' << format_real(r.ratio) << ',' << format_real(r.std_error) << ','
        << format_real(r.ci_low) << ',' << format_real(r.ci_high) << '\n';
  }
}

std::string format_real(double value) {
  if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
  if (std::isnan(value)) return "nan";
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, value);
  return std::string(buf, ptr);
}

double parse_real(std::string_view text) {
  if (text == "inf") return std::numeric_limits<double>::infinity();
  if (text == "-inf") return -std::numeric_limits<double>::infinity();
  if (text == "nan") return std::numeric_limits<double>::quiet_NaN();
  double value = 0.0;
  const auto* end = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(text.data(), end, value);
  if (text.empty() || ec != std::errc{} || ptr != end) {
    throw std::invalid_argument("not a number: '" + std::string(text) + "'");
  }
  return value;
}

namespace {

constexpr std::string_view kSweepHeader = "scenario,n,trials,mean,std,stderr,ci_low,ci_high";

std::size_t parse_count(std::string_view text) {
  std::size_t value = 0;
  const auto* end = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(text.data(), end, value);
  if (text.empty() || ec != std::errc{} || ptr != end) {
    throw std::invalid_argument("not a count: '" + std::string(text) + "'");
  }
  return value;
}

}  // namespace

void write_sweep_csv(std::ostream& out, std::span<const SweepCell> cells) {
  out << kSweepHeader << '\n';
  for (const auto& cell : cells) {
    const auto& s = cell.summary;
    out << cell.scenario << ',' << s.n << ',' << s.trials;
    if (cell.timed_out) {
      for (int k = 0; k < 5; ++k) out << ",timeout";
    } else {
      out << ',' << format_real(s.mean) << ',' << format_real(s.std_dev) << ','
          << format_real(s.std_error) << ',' << format_real(s.ci_low) << ','
          << format_real(s.ci_high);
    }
    out << '\n';
  }
}

std::vector<SweepCell> read_sweep_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line) || line != kSweepHeader) {
    throw std::invalid_argument("sweep CSV header mismatch");
  }
  std::vector<SweepCell> cells;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::vector<std::string> fields;
    std::stringstream row(line);
    for (std::string f; std::getline(row, f, ',');) fields.push_back(f);
    if (fields.size() != 8) throw std::invalid_argument("sweep CSV row needs 8 fields");
    SweepCell cell;
    cell.scenario = fields[0];
    cell.summary.n = parse_count(fields[1]);
    cell.summary.trials = parse_count(fields[2]);
    if (fields[3] == "timeout") {
      cell.timed_out = true;
    } else {
      cell.summary.mean = parse_real(fields[3]);
      cell.summary.std_dev = parse_real(fields[4]);
      cell.summary.std_error = parse_real(fields[5]);
      cell.summary.ci_low = parse_real(fields[6]);
      cell.summary.ci_high = parse_real(fields[7]);
    }
    cells.push_back(std::move(cell));
  }
  return cells;
}

}  // namespace antta
