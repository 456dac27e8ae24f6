#include "antta/scenarios.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

namespace antta {

UnsatisfiableError::UnsatisfiableError(SatisfiabilityVerdict verdict)
    : std::runtime_error("scenario is not satisfiable: " + verdict.reason),
      verdict_(std::move(verdict)) {}

SatisfiabilityVerdict validate(const Scenario& scenario, const ModelParams& params) {
  const std::size_t t = params.t;
  if (scenario.assignment.size() != t || scenario.demand.size() != t || scenario.idle.size() != t) {
    throw ScenarioError("scenario vectors must have length t = " + std::to_string(t));
  }
  if (scenario.colony_size() != params.n) {
    throw ScenarioError("scenario holds " + std::to_string(scenario.colony_size()) +
                        " ants but n = " + std::to_string(params.n));
  }

  SatisfiabilityVerdict verdict;
  const std::size_t n = params.n;
  const std::size_t m = scenario.idle_total();
  std::size_t demand_total = 0;
  for (auto d : scenario.demand) demand_total += d;
  verdict.gamma = n == 0 ? 0.0 : static_cast<double>(demand_total) / static_cast<double>(n);
  verdict.alpha = n == 0 ? 1.0 : 1.0 - static_cast<double>(m) / static_cast<double>(n);

  for (std::size_t i = 0; i < t; ++i) {
    if (scenario.demand[i] == 0) {
      verdict.reason = "demand of task " + std::to_string(i + 1) + " is zero";
      return verdict;
    }
    if (scenario.assignment[i] == 0) {
      verdict.reason = "task " + std::to_string(i + 1) + " starts with no non-idle ant";
      return verdict;
    }
  }

  std::size_t demand_prefix = 0;
  std::size_t supply_prefix = 0;
  for (std::size_t i = 0; i < t; ++i) {
    demand_prefix += scenario.demand[i];
    supply_prefix += scenario.assignment[i];
    if (demand_prefix > supply_prefix) {
      verdict.first_violated_prefix = i;
      verdict.reason = "demand of tasks 1.." + std::to_string(i + 1) + " (" +
                       std::to_string(demand_prefix) + ") exceeds the " +
                       std::to_string(supply_prefix) + " non-idle ants that start there";
      if (i + 1 == t) verdict.reason += " (not an alpha-demand)";
      return verdict;
    }
  }
  verdict.satisfiable = true;
  return verdict;
}

SatisfiabilityVerdict validate(const Scenario& scenario) {
  ModelParams params;
  params.n = scenario.colony_size();
  params.t = scenario.tasks();
  return validate(scenario, params);
}

Scenario make_upper_worstcase(std::size_t n) {
  if (n < 5) throw ScenarioError("upper worst case needs n >= 5");
  return Scenario{{n - 2, 1, 1}, {1, 1, n - 2}, {0, 0, 0}};
}

Scenario make_lowerbound_chain(std::size_t n, std::size_t t) {
  if (t < 3) throw ScenarioError("lower-bound chain needs t >= 3");
  if (n < t + 2) throw ScenarioError("lower-bound chain needs n >= t + 2");
  Scenario s{std::vector<std::size_t>(t, 1), std::vector<std::size_t>(t, 1),
             std::vector<std::size_t>(t, 0)};
  s.assignment.front() = 2;
  s.assignment.back() = n - t;
  s.demand.back() = n - t + 1;
  return s;
}

Scenario add_idle(Scenario scenario, std::span<const std::size_t> idle_per_task) {
  if (idle_per_task.size() != scenario.tasks()) {
    throw ScenarioError("idle vector length does not match task count");
  }
  scenario.idle.assign(idle_per_task.begin(), idle_per_task.end());
  auto verdict = validate(scenario);
  if (!verdict.satisfiable) throw UnsatisfiableError(std::move(verdict));
  return scenario;
}

Scenario make_idle_distribution_lb(std::size_t n) {
  if (n < 5) throw ScenarioError("idle-distribution lower bound needs n >= 5");
  return Scenario{{n - 3, 1}, {1, 1}, {2, 0}};
}

std::size_t IdleFraction::per_task(std::size_t n) const { return n * num / den; }

bool IdleFraction::divides_exactly(std::size_t n) const { return (n * num) % den == 0; }

IdleFraction parse_idle_fraction(std::string_view text) {
  auto parse_count = [&](std::string_view part) {
    std::size_t value = 0;
    const auto* end = part.data() + part.size();
    auto [ptr, ec] = std::from_chars(part.data(), end, value);
    if (part.empty() || ec != std::errc{} || ptr != end) {
      throw ScenarioError("bad idle fraction '" + std::string(text) + "'");
    }
    return value;
  };
  IdleFraction f;
  const auto slash = text.find('/');
  if (slash == std::string_view::npos) {
    f.num = parse_count(text);
    if (f.num != 0) throw ScenarioError("idle fraction must be written a/b or 0");
    return f;
  }
  f.num = parse_count(text.substr(0, slash));
  f.den = parse_count(text.substr(slash + 1));
  if (f.den == 0) throw ScenarioError("idle fraction has a zero denominator");
  if (f.num >= f.den) throw ScenarioError("idle fraction must be below 1");
  return f;
}

Scenario make_upper_worstcase_with_idle(std::size_t n, IdleFraction fraction) {
  const std::size_t per_task = fraction.per_task(n);
  if (3 * per_task >= n) throw ScenarioError("idle fraction leaves no room for workers");
  const std::vector<std::size_t> idle(3, per_task);
  return add_idle(make_upper_worstcase(n - 3 * per_task), idle);
}

nlohmann::json to_json(const Scenario& scenario) {
  return nlohmann::json{{"n", scenario.colony_size()},
                        {"t", scenario.tasks()},
                        {"assignment", scenario.assignment},
                        {"demand", scenario.demand},
                        {"idle", scenario.idle}};
}

namespace {

std::size_t read_count(const nlohmann::json& doc, const char* key) {
  if (!doc.contains(key)) throw ScenarioError(std::string("missing field '") + key + "'");
  const auto& v = doc.at(key);
  if (!v.is_number_unsigned()) {
    throw ScenarioError(std::string("field '") + key + "' must be a non-negative integer");
  }
  return v.get<std::size_t>();
}

std::vector<std::size_t> read_counts(const nlohmann::json& doc, const char* key) {
  if (!doc.contains(key)) throw ScenarioError(std::string("missing field '") + key + "'");
  const auto& v = doc.at(key);
  if (!v.is_array()) throw ScenarioError(std::string("field '") + key + "' must be an array");
  std::vector<std::size_t> out;
  out.reserve(v.size());
  for (const auto& e : v) {
    if (!e.is_number_unsigned()) {
      throw ScenarioError(std::string("entries of '") + key + "' must be non-negative integers");
    }
    out.push_back(e.get<std::size_t>());
  }
  return out;
}

}  // namespace

Scenario scenario_from_json(const nlohmann::json& doc) {
  if (!doc.is_object()) throw ScenarioError("scenario document must be a JSON object");
  const std::size_t n = read_count(doc, "n");
  const std::size_t t = read_count(doc, "t");
  Scenario s;
  s.assignment = read_counts(doc, "assignment");
  s.demand = read_counts(doc, "demand");
  s.idle = doc.contains("idle") ? read_counts(doc, "idle") : std::vector<std::size_t>(t, 0);
  if (s.assignment.size() != t || s.demand.size() != t || s.idle.size() != t) {
    throw ScenarioError("scenario vectors must have length t = " + std::to_string(t));
  }
  if (s.colony_size() != n) {
    throw ScenarioError("assignment plus idle counts sum to " + std::to_string(s.colony_size()) +
                        ", not n = " + std::to_string(n));
  }
  return s;
}

Scenario load_scenario(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ScenarioError("cannot open scenario file '" + path + "'");
  std::stringstream buffer;
  buffer << in.rdbuf();
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(buffer.str());
  } catch (const nlohmann::json::parse_error& e) {
    throw ScenarioError("malformed scenario file '" + path + "': " + e.what());
  }
  return scenario_from_json(doc);
}

nlohmann::json to_json(const SatisfiabilityVerdict& verdict) {
  nlohmann::json doc{{"satisfiable", verdict.satisfiable},
                     {"gamma", verdict.gamma},
                     {"alpha", verdict.alpha}};
  if (verdict.first_violated_prefix) {
    doc["first_violated_prefix"] = *verdict.first_violated_prefix + 1;
  } else {
    doc["first_violated_prefix"] = nullptr;
  }
  if (!verdict.reason.empty()) doc["reason"] = verdict.reason;
  return doc;
}

}  // namespace antta
