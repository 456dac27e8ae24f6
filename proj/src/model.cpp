#include "antta/model.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>
#include <string>

namespace antta {

std::string_view to_string(Role role) noexcept {
  switch (role) {
    case Role::Idle: return "idle";
    case Role::Working: return "working";
    case Role::NotNeeded: return "not-needed";
  }
  return "?";
}

void ModelParams::check() const {
  if (n < 2) throw std::invalid_argument("n must be at least 2");
  if (t < 2) throw std::invalid_argument("t must be at least 2");
  if (t > n) throw std::invalid_argument("t must not exceed n");
  if (R < 1) throw std::invalid_argument("R must be at least 1");
  if (th < 1 || th > R) throw std::invalid_argument("th must lie in [1, R]");
}

std::size_t Scenario::idle_total() const noexcept {
  return std::accumulate(idle.begin(), idle.end(), std::size_t{0});
}

std::size_t Scenario::non_idle_total() const noexcept {
  return std::accumulate(assignment.begin(), assignment.end(), std::size_t{0});
}

std::vector<std::size_t> ColonyState::assignment() const {
  std::vector<std::size_t> counts(task_count, 0);
  for (const auto& ant : ants) {
    if (ant.role != Role::Idle) ++counts[ant.task];
  }
  return counts;
}

std::vector<std::size_t> ColonyState::idle_counts() const {
  std::vector<std::size_t> counts(task_count, 0);
  for (const auto& ant : ants) {
    if (ant.role == Role::Idle) ++counts[ant.task];
  }
  return counts;
}

ColonyState initial_state(const Scenario& scenario) {
  const std::size_t t = scenario.tasks();
  if (scenario.demand.size() != t || scenario.idle.size() != t) {
    throw std::invalid_argument("scenario vectors must all have length t");
  }
  ColonyState state;
  state.task_count = t;
  state.ants.reserve(scenario.colony_size());
  for (std::size_t i = 0; i < t; ++i) {
    const auto task = static_cast<TaskIndex>(i);
    state.ants.insert(state.ants.end(), scenario.assignment[i], AntState{task, Role::NotNeeded});
    state.ants.insert(state.ants.end(), scenario.idle[i], AntState{task, Role::Idle});
  }
  return state;
}

void assign_roles(ColonyState& state, std::span<const std::size_t> demand, WorkerSelection mode,
                  Rng& rng) {
  if (demand.size() != state.task_count) {
    throw std::invalid_argument("demand length does not match task count");
  }
  if (mode == WorkerSelection::Stable) {
    std::vector<std::size_t> slots(demand.begin(), demand.end());
    for (auto& ant : state.ants) {
      if (ant.role == Role::Idle) continue;
      if (slots[ant.task] > 0) {
        --slots[ant.task];
        ant.role = Role::Working;
      } else {
        ant.role = Role::NotNeeded;
      }
    }
    return;
  }

  std::vector<std::vector<std::size_t>> members(state.task_count);
  for (std::size_t a = 0; a < state.ants.size(); ++a) {
    auto& ant = state.ants[a];
    if (ant.role == Role::Idle) continue;
    ant.role = Role::NotNeeded;
    members[ant.task].push_back(a);
  }
  for (std::size_t i = 0; i < state.task_count; ++i) {
    auto& pool = members[i];
    const std::size_t working = std::min(demand[i], pool.size());
    // Partial Fisher-Yates: the first `working` entries become a uniform subset.
    for (std::size_t k = 0; k < working; ++k) {
      std::uniform_int_distribution<std::size_t> pick(k, pool.size() - 1);
      std::swap(pool[k], pool[pick(rng)]);
      state.ants[pool[k]].role = Role::Working;
    }
  }
}

std::vector<std::size_t> sample_partners(Rng& rng, std::size_t actor, const ModelParams& params) {
  if (actor >= params.n) throw std::out_of_range("actor index out of range");
  std::vector<std::size_t> partners(params.R);
  for (auto& p : partners) p = draw_partner(rng, actor, params.n);
  return partners;
}

TaskIndex decide(TaskIndex self_task, Role self_role, std::span<const Observation> partners,
                 std::size_t th) {
  if (self_role == Role::Idle) throw std::logic_error("decide is not invoked for idle ants");
  if (self_role == Role::Working) return self_task;
  const TaskIndex next = self_task + 1;
  const auto recruiters = std::count_if(partners.begin(), partners.end(), [next](const Observation& o) {
    return o.task == next && o.role != Role::NotNeeded;
  });
  return static_cast<std::size_t>(recruiters) >= th ? next : self_task;
}

bool is_satisfied(std::span<const std::size_t> assignment, std::span<const std::size_t> demand) {
  if (assignment.size() != demand.size()) {
    throw std::invalid_argument("assignment and demand lengths differ");
  }
  for (std::size_t i = 0; i < assignment.size(); ++i) {
    if (assignment[i] < demand[i]) return false;
  }
  return true;
}

}  // namespace antta
