// antta/oracle.hpp
//
// Exact per-round recruitment probabilities and expected hitting times for
// small instances.
//
// Ants are exchangeable under uniform sampling, so the per-task counts are a
// sufficient state. Each NotNeeded ant samples its partners independently and
// with replacement, which makes the switch events within a round independent:
// the number of ants leaving task i is Binomial(k_i, p_i) with
// k_i = max(0, x_i - d_i) and p_i the recruit probability against the
// Working and idle ants of task i + 1.
#pragma once

#include "antta/model.hpp"

#include <stdexcept>
#include <vector>

namespace antta {

class CapacityError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline constexpr std::size_t kDefaultMaxChainStates = 2500;

// P[Binomial(R, w / (n - 1)) >= th].
double recruit_probability(std::size_t recruiters_next, std::size_t n, std::size_t R,
                           std::size_t th);

struct ChainTransition {
  std::size_t to = 0;
  double probability = 0.0;
};

struct AbsorbingChain {
  std::vector<std::vector<std::size_t>> states;  // states[0] is the initial state
  std::vector<bool> absorbing;
  std::vector<std::vector<ChainTransition>> transitions;  // empty rows for absorbing states
};

// Enumerates the states reachable from the scenario's initial assignment.
// Throws CapacityError when more than max_states states are reachable.
AbsorbingChain build_chain(const Scenario& scenario, const ModelParams& params,
                           std::size_t max_states = kDefaultMaxChainStates);

// Expected number of rounds until the assignment first meets the demand,
// solved by dense Gaussian elimination with partial pivoting over the
// transient states. Throws UnsatisfiableError for unsatisfiable scenarios and
// std::logic_error if a transient state cannot reach absorption.
double expected_hitting_time(const Scenario& scenario, const ModelParams& params,
                             std::size_t max_states = kDefaultMaxChainStates);

}  // namespace antta
