// antta/scenarios.hpp
//
// Satisfiability checks and the named adversarial instances.
//
// Satisfiability under one-way switching: mass only ever flows from lower to
// higher task indices, so every prefix of the demand has to be coverable by
// the non-idle ants that start in that prefix:
//
//     sum_{j<=i} d_j  <=  sum_{j<=i} x_j^0     for every i.
//
// Assignment counts already exclude idle ants, so idle recruiters are not
// subtracted a second time. The last prefix (i = t) is the alpha-demand
// condition sum d <= n - m.
#pragma once

#include "antta/model.hpp"

#include "json.hpp"

#include <optional>
#include <stdexcept>
#include <string>

namespace antta {

class ScenarioError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct SatisfiabilityVerdict {
  bool satisfiable = false;
  double gamma = 0.0;  // sum d / n
  double alpha = 1.0;  // 1 - m / n
  std::optional<std::size_t> first_violated_prefix;  // 0-based task index
  std::string reason;  // empty when satisfiable
};

class UnsatisfiableError : public std::runtime_error {
 public:
  explicit UnsatisfiableError(SatisfiabilityVerdict verdict);
  const SatisfiabilityVerdict& verdict() const noexcept { return verdict_; }

 private:
  SatisfiabilityVerdict verdict_;
};

// Throws ScenarioError on malformed input (length mismatch, or a colony size
// that disagrees with params.n); an unsatisfiable but well-formed scenario
// yields a verdict with satisfiable == false.
SatisfiabilityVerdict validate(const Scenario& scenario, const ModelParams& params);
SatisfiabilityVerdict validate(const Scenario& scenario);

// X = {n-2, 1, 1}, D = {1, 1, n-2}. Requires n >= 5.
Scenario make_upper_worstcase(std::size_t n);

// X = {2, 1, ..., 1, n-t}, D = {1, ..., 1, n-t+1}. Requires t >= 3, n >= t+2.
Scenario make_lowerbound_chain(std::size_t n, std::size_t t);

// Attaches idle recruiters to a scenario and re-validates. Throws
// UnsatisfiableError if the result is not satisfiable.
Scenario add_idle(Scenario scenario, std::span<const std::size_t> idle_per_task);

// Two tasks, X = {n-3, 1}, both idle ants recruiting to task 0, D = {1, 1}.
// Requires n >= 5.
Scenario make_idle_distribution_lb(std::size_t n);

// Exact rational idle fraction, e.g. 1/10.
struct IdleFraction {
  std::size_t num = 0;
  std::size_t den = 1;

  bool is_zero() const noexcept { return num == 0; }
  // floor(n * num / den) idle ants per task.
  std::size_t per_task(std::size_t n) const;
  bool divides_exactly(std::size_t n) const;
};

// Parses "a/b" or "0". Throws ScenarioError on bad syntax or a zero denominator.
IdleFraction parse_idle_fraction(std::string_view text);

// Upper worst case on a colony of n ants total, where `fraction` of n idles in
// every task and the remaining ants follow the {n'-2, 1, 1} layout.
Scenario make_upper_worstcase_with_idle(std::size_t n, IdleFraction fraction);

// Flat JSON document {"n", "t", "assignment", "demand", "idle"}; "idle" may be
// omitted. Throws ScenarioError on malformed documents.
nlohmann::json to_json(const Scenario& scenario);
Scenario scenario_from_json(const nlohmann::json& doc);
Scenario load_scenario(const std::string& path);

nlohmann::json to_json(const SatisfiabilityVerdict& verdict);

}  // namespace antta
