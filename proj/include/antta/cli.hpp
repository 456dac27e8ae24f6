// antta/cli.hpp
//
// Command-line front end. Exit codes: 0 success, 1 usage or input error,
// 2 timeout, 3 from validate on an unsatisfiable scenario. Other commands
// report an unsatisfiable scenario as an input error (exit 1) and print its
// verdict.
#pragma once

#include "antta/engine.hpp"
#include "antta/scenarios.hpp"

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace antta::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitInput = 1;
inline constexpr int kExitTimeout = 2;
inline constexpr int kExitUnsatisfiable = 3;

struct SweepConfig {
  std::string scenario_kind = "upper-worst";  // upper-worst | lowerbound-chain | idle-distribution-lb | file:<path>
  std::vector<std::size_t> n_values;
  std::size_t t = 4;  // lowerbound-chain only
  std::size_t R = 1;
  std::size_t th = 1;
  IdleFraction idle_fraction;
  std::size_t trials = 100;
  std::uint64_t master_seed = 1;
  std::size_t max_rounds = 0;  // 0: default per n
  std::string output_path;     // sweep CSV
  std::string fit_path;        // fit JSON; derived from output_path when empty
  WorkerSelection selection = WorkerSelection::Stable;

  // Throws ScenarioError when an invariant is violated.
  void check() const;
};

// Reads a sweep config document; absent keys keep their defaults.
SweepConfig sweep_config_from_json(const nlohmann::json& doc);

// Builds a named scenario on a colony of n ants. A non-zero idle fraction puts
// floor(n * a / b) idle recruiters in every task; rounding is reported on `warn`.
Scenario build_scenario(const std::string& kind, std::size_t n, std::size_t t, IdleFraction idle,
                        std::ostream& warn);

int cmd_sweep(const SweepConfig& config, std::ostream& out, std::ostream& err);

// Full command line without the program name.
int run_cli(std::vector<std::string> args, std::ostream& out, std::ostream& err);

}  // namespace antta::cli
