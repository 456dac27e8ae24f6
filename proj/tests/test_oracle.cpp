#include "antta/oracle.hpp"
#include "antta/scenarios.hpp"

#include "doctest.h"
#include "test_support.hpp"

#include <cmath>
#include <stdexcept>

using namespace antta;
using antta::testing::params_of;

TEST_CASE("recruit_probability reference values") {
  CHECK(recruit_probability(1, 4, 1, 1) == doctest::Approx(1.0 / 3.0));
  CHECK(recruit_probability(0, 4, 1, 1) == 0.0);
  CHECK(recruit_probability(0, 50, 3, 2) == 0.0);
  CHECK(recruit_probability(2, 11, 2, 2) == doctest::Approx(0.04));
  CHECK(recruit_probability(9, 10, 3, 3) == 1.0);
  CHECK(recruit_probability(9, 10, 3, 1) == 1.0);
  CHECK_THROWS_AS(recruit_probability(10, 10, 1, 1), std::invalid_argument);
  CHECK_THROWS_AS(recruit_probability(1, 10, 2, 3), std::invalid_argument);
}

TEST_CASE("recruit_probability matches exhaustive enumeration of draw sequences") {
  for (std::size_t n = 2; n <= 7; ++n) {
    for (std::size_t R = 1; R <= 3; ++R) {
      for (std::size_t th = 1; th <= R; ++th) {
        for (std::size_t w = 0; w <= n - 1; ++w) {
          CHECK(recruit_probability(w, n, R, th) ==
                doctest::Approx(testing::enumerate_recruit_probability(w, n, R, th)).epsilon(1e-12));
        }
      }
    }
  }
}

TEST_CASE("recruit_probability is exactly (w/(n-1))^R when th = R") {
  for (std::size_t n = 2; n < 60; n += 3) {
    for (std::size_t R = 1; R <= 6; ++R) {
      for (std::size_t w = 0; w < n; ++w) {
        const double q = static_cast<double>(w) / static_cast<double>(n - 1);
        CHECK(recruit_probability(w, n, R, R) == std::pow(q, static_cast<double>(R)));
      }
    }
  }
  // Bound used for idle colonies: w = beta n recruiters give at least beta^R.
  const std::size_t n = 1000, w = 100;
  CHECK(recruit_probability(w, n, 3, 3) >= std::pow(0.1, 3));
}

TEST_CASE("recruit_probability monotonicity") {
  for (std::size_t n = 3; n < 30; n += 4) {
    for (std::size_t R = 1; R <= 4; ++R) {
      for (std::size_t th = 1; th <= R; ++th) {
        for (std::size_t w = 0; w + 1 < n; ++w) {
          const double p = recruit_probability(w, n, R, th);
          CHECK(recruit_probability(w + 1, n, R, th) >= p);
          CHECK(recruit_probability(w, n, R + 1, th) >= p - 1e-15);
          if (th < R) CHECK(recruit_probability(w, n, R, th + 1) <= p + 1e-15);
        }
      }
    }
  }
}

TEST_CASE("expected_hitting_time: trivial and hand-solved chains") {
  const Scenario met{{3, 2}, {1, 2}, {0, 0}};
  CHECK(expected_hitting_time(met, params_of(met)) == 0.0);

  // Two sequential geometric phases, each with success probability 1/3.
  const Scenario two_phase{{2, 1, 1}, {1, 1, 2}, {0, 0, 0}};
  CHECK(expected_hitting_time(two_phase, params_of(two_phase)) == doctest::Approx(6.0).epsilon(1e-12));

  // One phase with an idle recruiter: w = 2 of n - 1 = 3.
  const Scenario idle_help{{2, 1}, {1, 2}, {0, 1}};
  CHECK(expected_hitting_time(idle_help, params_of(idle_help)) == doctest::Approx(1.5).epsilon(1e-12));
}

TEST_CASE("chain rows sum to one and absorbing states are exactly the satisfied ones") {
  std::mt19937_64 gen(8);
  for (int k = 0; k < 40; ++k) {
    const auto s = testing::random_satisfiable(gen, 2, 4, 10, 2);
    const std::size_t R = 1 + gen() % 3;
    const auto chain = build_chain(s, params_of(s, R, 1 + gen() % R));
    for (std::size_t i = 0; i < chain.states.size(); ++i) {
      CHECK(chain.absorbing[i] == is_satisfied(chain.states[i], s.demand));
      if (chain.absorbing[i]) {
        CHECK(chain.transitions[i].empty());
        continue;
      }
      double total = 0.0;
      for (const auto& tr : chain.transitions[i]) total += tr.probability;
      CHECK(std::abs(total - 1.0) < 1e-12);
    }
  }
}

TEST_CASE("Gaussian elimination agrees with per-ant brute-force recursion") {
  std::mt19937_64 gen(2718);
  for (int k = 0; k < 40; ++k) {
    const auto s = testing::random_satisfiable(gen, 2, 3, 7, 1);
    const std::size_t R = 1 + gen() % 2;
    const auto p = params_of(s, R, 1 + gen() % R);
    const double solved = expected_hitting_time(s, p);
    const double brute = testing::BruteForceHittingTime(s, p)();
    CHECK(solved == doctest::Approx(brute).epsilon(1e-9));
  }
}

TEST_CASE("expected_hitting_time only depends on counts") {
  // The same counts reached through different constructors give the same answer.
  const auto a = make_lowerbound_chain(7, 3);
  const Scenario b{{2, 1, 4}, {1, 1, 5}, {0, 0, 0}};
  CHECK(expected_hitting_time(a, params_of(a)) == expected_hitting_time(b, params_of(b)));
}

TEST_CASE("expected_hitting_time errors") {
  const Scenario starved{{1, 1, 4}, {1, 2, 1}, {0, 0, 0}};
  CHECK_THROWS_AS(expected_hitting_time(starved, params_of(starved)), UnsatisfiableError);
  const auto big = make_upper_worstcase(400);
  CHECK_THROWS_AS(expected_hitting_time(big, params_of(big), 100), CapacityError);
}
