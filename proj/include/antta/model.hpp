// antta/model.hpp
//
// Core types of the ant task-allocation model: colony parameters, per-ant
// task/role state, and the per-round rules (role assignment, partner
// sampling, and the threshold recruitment decision).
//
// Tasks are 0-based in code (task 0 is the first task in the one-way chain).
// File formats and CSV headers use 1-based task labels.
#pragma once

#include <cstddef>
#include <cstdint>
#include <random>
#include <span>
#include <string_view>
#include <vector>

namespace antta {

using Rng = std::mt19937_64;
using TaskIndex = std::uint32_t;

enum class Role : std::uint8_t { Idle, Working, NotNeeded };

std::string_view to_string(Role role) noexcept;

// How the min(d_i, x_i) Working slots of a task are picked each round.
enum class WorkerSelection : std::uint8_t { Stable, Random };

struct ModelParams {
  std::size_t n = 2;   // ants in the colony
  std::size_t t = 2;   // tasks
  std::size_t R = 1;   // interactions per acting ant per round
  std::size_t th = 1;  // recruitment threshold

  // Throws std::invalid_argument when an invariant is violated.
  void check() const;
};

// Initial assignment, demand and idle recruiters per task. The assignment
// counts exclude idle ants.
struct Scenario {
  std::vector<std::size_t> assignment;
  std::vector<std::size_t> demand;
  std::vector<std::size_t> idle;

  std::size_t tasks() const noexcept { return assignment.size(); }
  std::size_t idle_total() const noexcept;
  std::size_t non_idle_total() const noexcept;
  std::size_t colony_size() const noexcept { return idle_total() + non_idle_total(); }

  friend bool operator==(const Scenario&, const Scenario&) = default;
};

struct AntState {
  TaskIndex task = 0;
  Role role = Role::NotNeeded;

  friend bool operator==(const AntState&, const AntState&) = default;
};

struct ColonyState {
  std::size_t round = 0;
  std::size_t task_count = 0;
  std::vector<AntState> ants;

  // Non-idle ants per task.
  std::vector<std::size_t> assignment() const;
  // Idle recruiters per task.
  std::vector<std::size_t> idle_counts() const;

  friend bool operator==(const ColonyState&, const ColonyState&) = default;
};

// What an acting ant learns from one interaction.
struct Observation {
  TaskIndex task = 0;
  Role role = Role::NotNeeded;
};

// Lays ants out task by task: the x_i non-idle ants of task i followed by its
// idle ants. Roles are left NotNeeded for non-idle ants until assign_roles.
ColonyState initial_state(const Scenario& scenario);

// Marks min(d_i, x_i) non-idle ants of each task Working and the rest
// NotNeeded. Idle ants are untouched. `rng` is only drawn from in Random mode.
void assign_roles(ColonyState& state, std::span<const std::size_t> demand,
                  WorkerSelection mode, Rng& rng);

// One uniform draw from the n-1 ants other than `actor`.
inline std::size_t draw_partner(Rng& rng, std::size_t actor, std::size_t n) {
  std::uniform_int_distribution<std::size_t> pick(0, n - 2);
  const std::size_t other = pick(rng);
  return other >= actor ? other + 1 : other;
}

// R independent draws with replacement.
std::vector<std::size_t> sample_partners(Rng& rng, std::size_t actor, const ModelParams& params);

// Threshold recruitment rule. A Working ant stays put; a NotNeeded ant moves to
// self_task + 1 when at least `th` partners sit in that task with a role other
// than NotNeeded. Throws std::logic_error if called for an idle ant.
TaskIndex decide(TaskIndex self_task, Role self_role, std::span<const Observation> partners,
                 std::size_t th);

bool is_satisfied(std::span<const std::size_t> assignment, std::span<const std::size_t> demand);

}  // namespace antta
