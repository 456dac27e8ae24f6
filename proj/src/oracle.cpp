#include "antta/oracle.hpp"

#include "antta/scenarios.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <map>
#include <string>

namespace antta {

namespace {

double binomial_coefficient(std::size_t n, std::size_t k) {
  k = std::min(k, n - k);
  double c = 1.0;
  for (std::size_t i = 1; i <= k; ++i) {
    c = c * static_cast<double>(n - k + i) / static_cast<double>(i);
  }
  return c;
}

std::vector<double> binomial_pmf(std::size_t trials, double p) {
  std::vector<double> pmf(trials + 1);
  for (std::size_t s = 0; s <= trials; ++s) {
    pmf[s] = binomial_coefficient(trials, s) * std::pow(p, static_cast<double>(s)) *
             std::pow(1.0 - p, static_cast<double>(trials - s));
  }
  return pmf;
}

// Joint distribution over the number of switchers leaving each task.
void enumerate_moves(const std::vector<std::vector<double>>& pmfs, std::size_t task,
                     std::vector<std::size_t>& next, double probability,
                     std::map<std::vector<std::size_t>, double>& out) {
  if (task == pmfs.size()) {
    out[next] += probability;
    return;
  }
  for (std::size_t s = 0; s < pmfs[task].size(); ++s) {
    if (pmfs[task][s] == 0.0) continue;
    next[task] -= s;
    next[task + 1] += s;
    enumerate_moves(pmfs, task + 1, next, probability * pmfs[task][s], out);
    next[task] += s;
    next[task + 1] -= s;
  }
}

}  // namespace

double recruit_probability(std::size_t recruiters_next, std::size_t n, std::size_t R,
                           std::size_t th) {
  if (n < 2) throw std::invalid_argument("recruit_probability needs n >= 2");
  if (recruiters_next > n - 1) throw std::invalid_argument("w must not exceed n - 1");
  if (th < 1 || th > R) throw std::invalid_argument("th must lie in [1, R]");
  const double q = static_cast<double>(recruiters_next) / static_cast<double>(n - 1);
  double tail = 0.0;
  for (std::size_t k = th; k <= R; ++k) {
    tail += binomial_coefficient(R, k) * std::pow(q, static_cast<double>(k)) *
            std::pow(1.0 - q, static_cast<double>(R - k));
  }
  return std::min(tail, 1.0);
}

AbsorbingChain build_chain(const Scenario& scenario, const ModelParams& params,
                           std::size_t max_states) {
  params.check();
  auto verdict = validate(scenario, params);
  if (!verdict.satisfiable) throw UnsatisfiableError(std::move(verdict));

  const std::size_t t = params.t;
  AbsorbingChain chain;
  std::map<std::vector<std::size_t>, std::size_t> index;
  std::deque<std::size_t> frontier;

  auto intern = [&](const std::vector<std::size_t>& x) {
    auto [it, inserted] = index.emplace(x, chain.states.size());
    if (inserted) {
      if (chain.states.size() >= max_states) {
        throw CapacityError("chain exceeds " + std::to_string(max_states) + " reachable states");
      }
      chain.states.push_back(x);
      chain.absorbing.push_back(is_satisfied(x, scenario.demand));
      chain.transitions.emplace_back();
      frontier.push_back(it->second);
    }
    return it->second;
  };

  intern(scenario.assignment);
  std::vector<std::vector<double>> pmfs(t - 1);
  std::map<std::vector<std::size_t>, double> successors;
  while (!frontier.empty()) {
    const std::size_t s = frontier.front();
    frontier.pop_front();
    if (chain.absorbing[s]) continue;
    const auto x = chain.states[s];
    for (std::size_t i = 0; i + 1 < t; ++i) {
      const std::size_t surplus = x[i] > scenario.demand[i] ? x[i] - scenario.demand[i] : 0;
      const std::size_t recruiters = std::min(x[i + 1], scenario.demand[i + 1]) + scenario.idle[i + 1];
      pmfs[i] = binomial_pmf(surplus, recruit_probability(recruiters, params.n, params.R, params.th));
    }
    successors.clear();
    auto next = x;
    enumerate_moves(pmfs, 0, next, 1.0, successors);
    std::vector<ChainTransition> row;
    row.reserve(successors.size());
    for (const auto& [y, p] : successors) row.push_back({intern(y), p});
    chain.transitions[s] = std::move(row);
  }
  return chain;
}

double expected_hitting_time(const Scenario& scenario, const ModelParams& params,
                             std::size_t max_states) {
  const AbsorbingChain chain = build_chain(scenario, params, max_states);
  if (chain.absorbing[0]) return 0.0;

  std::vector<std::size_t> slot(chain.states.size(), SIZE_MAX);
  std::size_t m = 0;
  for (std::size_t s = 0; s < chain.states.size(); ++s) {
    if (!chain.absorbing[s]) slot[s] = m++;
  }

  // (I - Q) E = 1, row-major with the right-hand side in the last column.
  const std::size_t cols = m + 1;
  std::vector<double> a(m * cols, 0.0);
  for (std::size_t s = 0; s < chain.states.size(); ++s) {
    if (chain.absorbing[s]) continue;
    const std::size_t r = slot[s];
    a[r * cols + r] += 1.0;
    a[r * cols + m] = 1.0;
    for (const auto& tr : chain.transitions[s]) {
      if (!chain.absorbing[tr.to]) a[r * cols + slot[tr.to]] -= tr.probability;
    }
  }

  for (std::size_t c = 0; c < m; ++c) {
    std::size_t pivot = c;
    for (std::size_t r = c + 1; r < m; ++r) {
      if (std::abs(a[r * cols + c]) > std::abs(a[pivot * cols + c])) pivot = r;
    }
    if (std::abs(a[pivot * cols + c]) < 1e-300) {
      throw std::logic_error("transient state cannot reach absorption");
    }
    if (pivot != c) {
      for (std::size_t k = 0; k < cols; ++k) std::swap(a[c * cols + k], a[pivot * cols + k]);
    }
    const double inv = 1.0 / a[c * cols + c];
    for (std::size_t r = c + 1; r < m; ++r) {
      const double f = a[r * cols + c] * inv;
      if (f == 0.0) continue;
      for (std::size_t k = c; k < cols; ++k) a[r * cols + k] -= f * a[c * cols + k];
    }
  }
  std::vector<double> e(m);
  for (std::size_t r = m; r-- > 0;) {
    double acc = a[r * cols + m];
    for (std::size_t k = r + 1; k < m; ++k) acc -= a[r * cols + k] * e[k];
    e[r] = acc / a[r * cols + r];
  }
  return e[slot[0]];
}

}  // namespace antta
