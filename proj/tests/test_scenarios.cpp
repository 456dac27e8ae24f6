#include "antta/scenarios.hpp"

#include "doctest.h"
#include "test_support.hpp"

#include <fstream>

using namespace antta;

TEST_CASE("upper worst case is satisfiable and matches its layout") {
  const auto s = make_upper_worstcase(10);
  CHECK(s.assignment == std::vector<std::size_t>{8, 1, 1});
  CHECK(s.demand == std::vector<std::size_t>{1, 1, 8});
  CHECK(s.idle == std::vector<std::size_t>{0, 0, 0});
  const auto small = make_upper_worstcase(5);
  CHECK(small.assignment == std::vector<std::size_t>{3, 1, 1});
  CHECK(small.demand == std::vector<std::size_t>{1, 1, 3});
  CHECK_THROWS_AS(make_upper_worstcase(4), ScenarioError);
  for (std::size_t n = 5; n < 200; n += 7) CHECK(validate(make_upper_worstcase(n)).satisfiable);
}

TEST_CASE("lower-bound chain layout") {
  const auto s = make_lowerbound_chain(10, 4);
  CHECK(s.assignment == std::vector<std::size_t>{2, 1, 1, 6});
  CHECK(s.demand == std::vector<std::size_t>{1, 1, 1, 7});
  const auto smallest = make_lowerbound_chain(5, 3);
  CHECK(smallest.assignment == std::vector<std::size_t>{2, 1, 2});
  CHECK(smallest.demand == std::vector<std::size_t>{1, 1, 3});
  CHECK_THROWS_AS(make_lowerbound_chain(4, 3), ScenarioError);
  CHECK_THROWS_AS(make_lowerbound_chain(10, 2), ScenarioError);
  for (std::size_t t = 3; t < 8; ++t) {
    for (std::size_t n = t + 2; n < 40; n += 3) CHECK(validate(make_lowerbound_chain(n, t)).satisfiable);
  }
}

TEST_CASE("idle-distribution lower bound layout") {
  const auto s = make_idle_distribution_lb(100);
  CHECK(s.assignment == std::vector<std::size_t>{97, 1});
  CHECK(s.idle == std::vector<std::size_t>{2, 0});
  const auto smallest = make_idle_distribution_lb(5);
  CHECK(smallest.assignment == std::vector<std::size_t>{2, 1});
  CHECK(smallest.colony_size() == 5);
  CHECK(validate(smallest).satisfiable);
  CHECK_THROWS_AS(make_idle_distribution_lb(4), ScenarioError);
}

TEST_CASE("validate reports gamma, alpha and the first violated prefix") {
  const auto ok = validate(make_upper_worstcase(12));
  CHECK(ok.satisfiable);
  CHECK_FALSE(ok.first_violated_prefix.has_value());
  CHECK(ok.gamma == doctest::Approx(1.0));
  CHECK(ok.alpha == doctest::Approx(1.0));

  // Sum of demand n + 1 with no idle ants.
  const Scenario over{{3, 1, 1}, {1, 1, 4}, {0, 0, 0}};
  const auto v_over = validate(over);
  CHECK_FALSE(v_over.satisfiable);
  CHECK(v_over.gamma > 1.0);

  // Task 2 can never be refilled: d1 + d2 = 3 > x1 + x2 = 2.
  const Scenario starved{{1, 1, 4}, {1, 2, 1}, {0, 0, 0}};
  const auto v = validate(starved);
  CHECK_FALSE(v.satisfiable);
  REQUIRE(v.first_violated_prefix.has_value());
  CHECK(*v.first_violated_prefix == 1);  // 0-based: the second task
  CHECK(to_json(v).at("first_violated_prefix") == 2);
}

TEST_CASE("validate rejects zero demand, empty tasks and malformed input") {
  CHECK_FALSE(validate(Scenario{{2, 1}, {0, 1}, {0, 0}}).satisfiable);
  CHECK_FALSE(validate(Scenario{{3, 0}, {1, 1}, {0, 0}}).satisfiable);
  CHECK_THROWS_AS(validate(Scenario{{2, 1}, {1}, {0, 0}}), ScenarioError);
  CHECK_THROWS_AS(validate(make_upper_worstcase(8), ModelParams{9, 3, 1, 1}), ScenarioError);
}

TEST_CASE("add_idle attaches counts and re-validates") {
  const auto base = make_upper_worstcase(56);
  const std::vector<std::size_t> idle{8, 8, 8};
  const auto s = add_idle(base, idle);
  CHECK(s.colony_size() == 80);
  for (auto c : s.idle) CHECK(static_cast<double>(c) / s.colony_size() == doctest::Approx(0.1));

  const std::vector<std::size_t> none{0, 0, 0};
  CHECK(add_idle(base, none) == base);

  const Scenario tight{{1, 1, 2}, {1, 1, 3}, {0, 0, 0}};
  const std::vector<std::size_t> one{1, 0, 0};
  CHECK_THROWS_AS(add_idle(tight, one), UnsatisfiableError);
  try {
    add_idle(tight, one);
  } catch (const UnsatisfiableError& e) {
    CHECK_FALSE(e.verdict().satisfiable);
  }
}

TEST_CASE("idle fractions parse exactly and floor per task") {
  const auto f = parse_idle_fraction("1/10");
  CHECK(f.num == 1);
  CHECK(f.den == 10);
  CHECK(f.per_task(128) == 12);
  CHECK_FALSE(f.divides_exactly(128));
  CHECK(f.divides_exactly(1000));
  CHECK(parse_idle_fraction("0").is_zero());
  CHECK_THROWS_AS(parse_idle_fraction("1/0"), ScenarioError);
  CHECK_THROWS_AS(parse_idle_fraction("abc"), ScenarioError);
  CHECK_THROWS_AS(parse_idle_fraction("3/2"), ScenarioError);

  const auto s = make_upper_worstcase_with_idle(1024, f);
  CHECK(s.colony_size() == 1024);
  CHECK(s.idle == std::vector<std::size_t>{102, 102, 102});
  CHECK(s.assignment == std::vector<std::size_t>{718 - 2, 1, 1});
}

TEST_CASE("validate is monotone in demand and in the first task's supply") {
  std::mt19937_64 gen(77);
  for (int k = 0; k < 500; ++k) {
    auto s = testing::random_satisfiable(gen, 2, 5, 20, 2);
    REQUIRE(validate(s).satisfiable);
    auto lower = s;
    const std::size_t i = gen() % s.tasks();
    if (lower.demand[i] > 1) --lower.demand[i];
    CHECK(validate(lower).satisfiable);
    auto more = s;
    ++more.assignment[0];
    CHECK(validate(more).satisfiable);
  }
  // Same properties from the unsatisfiable side: raising demand never helps.
  for (int k = 0; k < 500; ++k) {
    auto s = testing::random_satisfiable(gen, 2, 5, 20, 2);
    s.demand[gen() % s.tasks()] += 1 + gen() % 5;
    if (validate(s).satisfiable) continue;
    auto higher = s;
    ++higher.demand[gen() % s.tasks()];
    CHECK_FALSE(validate(higher).satisfiable);
  }
}

TEST_CASE("scenario JSON round-trips and rejects malformed documents") {
  std::mt19937_64 gen(5);
  for (int k = 0; k < 50; ++k) {
    const auto s = testing::random_satisfiable(gen, 2, 6, 30, 3);
    CHECK(scenario_from_json(nlohmann::json::parse(to_json(s).dump())) == s);
  }
  const auto doc = nlohmann::json::parse(R"({"demand":[1,1],"n":4,"t":2,"assignment":[3,1]})");
  const auto s = scenario_from_json(doc);
  CHECK(s.idle == std::vector<std::size_t>{0, 0});

  CHECK_THROWS_AS(scenario_from_json(nlohmann::json::parse(R"({"n":4,"t":2,"assignment":[3,1]})")),
                  ScenarioError);
  CHECK_THROWS_AS(
      scenario_from_json(nlohmann::json::parse(R"({"n":5,"t":2,"assignment":[3,1],"demand":[1,1]})")),
      ScenarioError);
  CHECK_THROWS_AS(
      scenario_from_json(nlohmann::json::parse(R"({"n":4,"t":2,"assignment":[3,-1],"demand":[1,1]})")),
      ScenarioError);
  CHECK_THROWS_AS(
      scenario_from_json(nlohmann::json::parse(R"({"n":4,"t":2,"assignment":[3,1.5],"demand":[1,1]})")),
      ScenarioError);

  {
    std::ofstream f("truncated_scenario.json");
    f << R"({"n":4,"t":2,"assignment":[3,1)";
  }
  CHECK_THROWS_AS(load_scenario("truncated_scenario.json"), ScenarioError);
  CHECK_THROWS_AS(load_scenario("does/not/exist.json"), ScenarioError);
}
