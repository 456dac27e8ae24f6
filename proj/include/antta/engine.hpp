// antta/engine.hpp
//
// Synchronous round loop. Every round reads one snapshot of the colony; all
// task changes decided during round r take effect together at round r + 1.
#pragma once

#include "antta/model.hpp"
#include "antta/scenarios.hpp"

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <optional>
#include <vector>

namespace antta {

struct RoundRecord {
  std::vector<std::size_t> assignment;
  std::vector<std::size_t> idle;

  friend bool operator==(const RoundRecord&, const RoundRecord&) = default;
};

struct RunResult {
  bool terminated = false;
  // First round f at which the goal holds; the round cap when not terminated.
  std::size_t rounds = 0;
  // rounds + 1 entries (round 0 .. f) when recorded.
  std::optional<std::vector<RoundRecord>> trajectory;
  // First round at which some ant has moved from task 0 into task 1.
  std::optional<std::size_t> first_switch_round;
  // Rounds elapsed through the first round in which an ant of task 0 sampled
  // an ant of task 1. No protocol can move an ant across that boundary sooner.
  std::optional<std::size_t> first_contact_round;
};

struct RunOptions {
  std::size_t max_rounds = 0;  // 0 selects default_max_rounds(n)
  bool record = false;
  WorkerSelection selection = WorkerSelection::Stable;
  bool allow_unsatisfiable = false;
};

// Minimum idle recruiters required per task for the distribution goal.
struct IdleDistributionGoal {
  std::vector<std::size_t> targets;
};

// Partners sampled by each ant during one step; empty rows for ants that did
// not act.
struct StepTrace {
  std::vector<std::vector<std::size_t>> partners;
};

// ceil(50 * n * ln(n + 1)).
std::size_t default_max_rounds(std::size_t n);

// SplitMix64 finalizer over (master_seed, trial).
std::uint64_t trial_seed(std::uint64_t master_seed, std::uint64_t trial);

// One task-allocation round. Assigns roles, lets every non-idle ant sample R
// partners and apply decide(), then moves the recruited ants. The returned
// state carries round + 1 and the roles that were in force during the round.
ColonyState step(const ColonyState& state, const Scenario& scenario, const ModelParams& params,
                 Rng& rng, WorkerSelection selection = WorkerSelection::Stable,
                 StepTrace* trace = nullptr);

// One idle-distribution round. Non-idle ants are frozen; idle ants sample R
// partners each and may retarget to one of the sampled partners' tasks.
ColonyState step_idle_distribution(const ColonyState& state, const IdleDistributionGoal& goal,
                                   const ModelParams& params, Rng& rng,
                                   StepTrace* trace = nullptr);

// Runs task allocation until the assignment meets the demand. Throws
// UnsatisfiableError for unsatisfiable scenarios unless
// options.allow_unsatisfiable is set.
RunResult run(const Scenario& scenario, const ModelParams& params, std::uint64_t seed,
              const RunOptions& options = {});

// Runs idle distribution until every task holds at least targets[i] idle
// recruiters. Requires sum(targets) <= m and m >= t.
RunResult run_idle_distribution(const Scenario& scenario, const IdleDistributionGoal& goal,
                                const ModelParams& params, std::uint64_t seed,
                                const RunOptions& options = {});

// Thread cap from ANTTA_THREADS, else the hardware concurrency (at least 1).
std::size_t default_thread_count();

// Runs `trial(trial_seed(master_seed, i))` for i in [0, trials) across up to
// `threads` workers. Results are indexed by trial regardless of finish order.
std::vector<RunResult> run_trials(std::size_t trials, std::uint64_t master_seed,
                                  std::size_t threads,
                                  const std::function<RunResult(std::uint64_t)>& trial);

// Header round,x_1..x_t and, when with_idle, idle_1..idle_t.
void write_trajectory_csv(std::ostream& out, const std::vector<RoundRecord>& trajectory,
                          bool with_idle);

}  // namespace antta
