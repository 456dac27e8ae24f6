#include "antta/engine.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <ostream>
#include <string>
#include <thread>

namespace antta {

namespace {

struct Contacts {
  bool task0_met_task1 = false;
};

// Task-allocation round applied in place. Decisions only read `state.ants`;
// moves are collected first and applied after every ant has decided.
void advance(ColonyState& state, const Scenario& scenario, const ModelParams& params, Rng& rng,
             WorkerSelection selection, StepTrace* trace, Contacts* contacts,
             std::vector<std::size_t>& movers, std::vector<Observation>& seen) {
  assign_roles(state, scenario.demand, selection, rng);
  const std::size_t n = state.ants.size();
  if (trace) trace->partners.assign(n, {});
  movers.clear();
  seen.resize(params.R);

  for (std::size_t a = 0; a < n; ++a) {
    const AntState self = state.ants[a];
    if (self.role == Role::Idle) continue;
    for (std::size_t k = 0; k < params.R; ++k) {
      const std::size_t b = draw_partner(rng, a, n);
      seen[k] = Observation{state.ants[b].task, state.ants[b].role};
      if (trace) trace->partners[a].push_back(b);
    }
    if (contacts && self.task == 0) {
      for (const auto& o : seen) {
        if (o.task == 1) contacts->task0_met_task1 = true;
      }
    }
    if (decide(self.task, self.role, seen, params.th) != self.task) movers.push_back(a);
  }
  for (auto a : movers) ++state.ants[a].task;
  ++state.round;
}

// Idle-distribution round applied in place. Each idle ant may only retarget to
// a task it observed this round. Departures are allowed while the source task
// stays above its target, arrivals while the destination stays below; both
// tallies are updated in ant-index order so a round never overshoots.
void advance_distribution(ColonyState& state, const IdleDistributionGoal& goal,
                          const ModelParams& params, Rng& rng, StepTrace* trace,
                          Contacts* contacts) {
  const std::size_t n = state.ants.size();
  if (trace) trace->partners.assign(n, {});
  std::vector<std::size_t> planned = state.idle_counts();
  std::vector<std::pair<std::size_t, TaskIndex>> retargets;
  std::vector<TaskIndex> observed(params.R);

  for (std::size_t a = 0; a < n; ++a) {
    const AntState self = state.ants[a];
    if (self.role != Role::Idle) continue;
    for (std::size_t k = 0; k < params.R; ++k) {
      const std::size_t b = draw_partner(rng, a, n);
      observed[k] = state.ants[b].task;
      if (trace) trace->partners[a].push_back(b);
    }
    if (contacts && self.task == 0 &&
        std::find(observed.begin(), observed.end(), TaskIndex{1}) != observed.end()) {
      contacts->task0_met_task1 = true;
    }
    if (planned[self.task] <= goal.targets[self.task]) continue;
    std::optional<TaskIndex> dest;
    for (auto task : observed) {
      if (task == self.task || planned[task] >= goal.targets[task]) continue;
      if (!dest || task < *dest) dest = task;
    }
    if (!dest) continue;
    --planned[self.task];
    ++planned[*dest];
    retargets.emplace_back(a, *dest);
  }
  for (auto [a, task] : retargets) state.ants[a].task = task;
  ++state.round;
}

bool goal_met(std::span<const std::size_t> idle, std::span<const std::size_t> targets) {
  for (std::size_t i = 0; i < idle.size(); ++i) {
    if (idle[i] < targets[i]) return false;
  }
  return true;
}

std::size_t moved_out_of_task0(const ColonyState& state, std::size_t initial) {
  std::size_t still = 0;
  for (const auto& ant : state.ants) {
    if (ant.role != Role::Idle && ant.task == 0) ++still;
  }
  return initial - still;
}

}  // namespace

std::size_t default_max_rounds(std::size_t n) {
  const double nd = static_cast<double>(n);
  return static_cast<std::size_t>(std::ceil(50.0 * nd * std::log(nd + 1.0)));
}

std::uint64_t trial_seed(std::uint64_t master_seed, std::uint64_t trial) {
  std::uint64_t z = master_seed + (trial + 1) * 0x9E3779B97F4A7C15ULL;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

ColonyState step(const ColonyState& state, const Scenario& scenario, const ModelParams& params,
                 Rng& rng, WorkerSelection selection, StepTrace* trace) {
  ColonyState next = state;
  std::vector<std::size_t> movers;
  std::vector<Observation> seen;
  advance(next, scenario, params, rng, selection, trace, nullptr, movers, seen);
  return next;
}

ColonyState step_idle_distribution(const ColonyState& state, const IdleDistributionGoal& goal,
                                   const ModelParams& params, Rng& rng, StepTrace* trace) {
  ColonyState next = state;
  advance_distribution(next, goal, params, rng, trace, nullptr);
  return next;
}

RunResult run(const Scenario& scenario, const ModelParams& params, std::uint64_t seed,
              const RunOptions& options) {
  params.check();
  auto verdict = validate(scenario, params);
  if (!verdict.satisfiable && !options.allow_unsatisfiable) {
    throw UnsatisfiableError(std::move(verdict));
  }
  const std::size_t cap = options.max_rounds ? options.max_rounds : default_max_rounds(params.n);

  Rng rng(seed);
  ColonyState state = initial_state(scenario);
  RunResult result;
  if (options.record) result.trajectory.emplace();
  std::vector<std::size_t> movers;
  std::vector<Observation> seen;
  Contacts contacts;
  const std::size_t task0_initial = scenario.assignment.front();

  while (true) {
    const auto x = state.assignment();
    if (result.trajectory) result.trajectory->push_back({x, state.idle_counts()});
    if (is_satisfied(x, scenario.demand)) {
      result.terminated = true;
      break;
    }
    if (state.round >= cap) break;
    advance(state, scenario, params, rng, options.selection, nullptr, &contacts, movers, seen);
    if (contacts.task0_met_task1 && !result.first_contact_round) {
      result.first_contact_round = state.round;
    }
    if (!result.first_switch_round && moved_out_of_task0(state, task0_initial) > 0) {
      result.first_switch_round = state.round;
    }
  }
  result.rounds = state.round;
  return result;
}

RunResult run_idle_distribution(const Scenario& scenario, const IdleDistributionGoal& goal,
                                const ModelParams& params, std::uint64_t seed,
                                const RunOptions& options) {
  params.check();
  validate(scenario, params);
  const std::size_t t = scenario.tasks();
  const std::size_t m = scenario.idle_total();
  if (goal.targets.size() != t) throw ScenarioError("goal targets must have length t");
  std::size_t target_total = 0;
  for (auto v : goal.targets) target_total += v;
  if (target_total > m) throw ScenarioError("goal asks for more idle recruiters than exist");
  if (m < t) throw ScenarioError("idle distribution needs at least t idle ants");
  const std::size_t cap = options.max_rounds ? options.max_rounds : default_max_rounds(params.n);

  Rng rng(seed);
  ColonyState state = initial_state(scenario);
  RunResult result;
  if (options.record) result.trajectory.emplace();
  Contacts contacts;
  const std::size_t idle_task0 = scenario.idle.front();

  while (true) {
    const auto idle = state.idle_counts();
    if (result.trajectory) result.trajectory->push_back({state.assignment(), idle});
    if (goal_met(idle, goal.targets)) {
      result.terminated = true;
      break;
    }
    if (state.round >= cap) break;
    advance_distribution(state, goal, params, rng, nullptr, &contacts);
    if (contacts.task0_met_task1 && !result.first_contact_round) {
      result.first_contact_round = state.round;
    }
    if (!result.first_switch_round && state.idle_counts().front() < idle_task0) {
      result.first_switch_round = state.round;
    }
  }
  result.rounds = state.round;
  return result;
}

std::size_t default_thread_count() {
  if (const char* env = std::getenv("ANTTA_THREADS")) {
    try {
      const long v = std::stol(env);
      if (v >= 1) return static_cast<std::size_t>(v);
    } catch (const std::exception&) {
    }
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

std::vector<RunResult> run_trials(std::size_t trials, std::uint64_t master_seed,
                                  std::size_t threads,
                                  const std::function<RunResult(std::uint64_t)>& trial) {
  std::vector<RunResult> results(trials);
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;

  auto worker = [&] {
    for (std::size_t i = next++; i < trials; i = next++) {
      try {
        results[i] = trial(trial_seed(master_seed, i));
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
        next = trials;
      }
    }
  };

  const std::size_t workers = std::clamp<std::size_t>(threads, 1, std::max<std::size_t>(trials, 1));
  if (workers == 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(worker);
  }
  if (failure) std::rethrow_exception(failure);
  return results;
}

void write_trajectory_csv(std::ostream& out, const std::vector<RoundRecord>& trajectory,
                          bool with_idle) {
  const std::size_t t = trajectory.empty() ? 0 : trajectory.front().assignment.size();
  out << "round";
  for (std::size_t i = 1; i <= t; ++i) out << ",x_" << i;
  if (with_idle) {
    for (std::size_t i = 1; i <= t; ++i) out << ",idle_" << i;
  }
  out << '\n';
  for (std::size_t r = 0; r < trajectory.size(); ++r) {
    out << r;
    for (auto x : trajectory[r].assignment) out << ',' << x;
    if (with_idle) {
      for (auto v : trajectory[r].idle) out << ',' << v;
    }
    out << '\n';
  }
}

}  // namespace antta
