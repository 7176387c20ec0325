#include "doctest.h"

#include "common.hpp"
#include "hefk/algorithms.hpp"
#include "../oracles.hpp"

using namespace hefk;

namespace {

Instance uniform(int n, int m, Value v) {
  return Instance(n, m, std::vector<std::vector<Value>>(n, std::vector<Value>(m, v)));
}

}  // namespace

TEST_CASE("algorithm names round-trip") {
  for (Algorithm a : kAllAlgorithms) CHECK(parse_algorithm(algorithm_name(a)) == a);
  CHECK_FALSE(parse_algorithm("greedy").has_value());
}

TEST_CASE("order resolution") {
  SolverConfig config;
  CHECK(resolve_agent_order(config, 3) == std::vector<int>{0, 1, 2});
  config.agent_order = {2, 0, 1};
  CHECK(resolve_agent_order(config, 3) == std::vector<int>{2, 0, 1});
  config.agent_order = {0, 0, 1};
  CHECK_THROWS_AS(resolve_agent_order(config, 3), PreconditionError);
  config.agent_order = {0, 1};
  CHECK_THROWS_AS(resolve_agent_order(config, 3), PreconditionError);
  const auto shuffled = SolverConfig::shuffled(4, 6, 9);
  CHECK(shuffled.agent_order.size() == 4);
  CHECK(shuffled.good_order.size() == 6);
  CHECK(SolverConfig::shuffled(4, 6, 9).good_order == shuffled.good_order);
}

TEST_CASE("round robin") {
  const auto inst = testing::instance("intro.json");
  const auto alloc = round_robin(inst);
  CHECK(is_ef1(inst, alloc));
  CHECK(is_uhef(inst, alloc, inst.num_agents() - 1));

  const auto single = Instance(1, 4, {{3, 0, 2, 1}});
  CHECK(round_robin(single).bundle(0) == std::vector<int>{0, 1, 2, 3});

  const auto ones = uniform(2, 4, 1);
  const auto split = round_robin(ones);
  CHECK(split.bundle(0).size() == 2);
  CHECK(split.bundle(1).size() == 2);
  CHECK(is_ef(ones, split));

  Rng rng(5);
  for (int t = 0; t < 20; ++t) {
    const auto r = oracle::random_instance(rng, 4, 8, oracle::Dist::kUniform10);
    CHECK(is_uhef(r, round_robin(r), 3));
  }
}

TEST_CASE("envy graph") {
  const auto empty = Instance(3, 0, {{}, {}, {}});
  const auto none = envy_graph(empty);
  for (int i = 0; i < 3; ++i) CHECK(none.bundle(i).empty());

  const Instance two(2, 2, {{3, 1}, {3, 1}});
  const auto alloc = envy_graph(two);
  CHECK(alloc.bundle(0) == std::vector<int>{0});
  CHECK(alloc.bundle(1) == std::vector<int>{1});
  CHECK(envy_report(two, alloc).aggregate == 2);

  const auto inst = testing::instance("intro.json");
  CHECK(is_ef1(inst, envy_graph(inst)));
}

TEST_CASE("maximum Nash welfare") {
  const auto t3 = testing::instance("table3.json");
  CHECK(mnw(t3).bundles() == std::vector<std::vector<int>>{{0}, {1}, {2}, {3}, {4}});

  const auto t1 = testing::instance("table1.json");
  const auto a1 = mnw(t1);
  CHECK(a1.owners() == oracle::nash_optimum(t1));
  CHECK(a1.owner(2) <= 1);

  const auto ones = uniform(2, 2, 1);
  const auto split = mnw(ones);
  CHECK(split.bundle(0).size() == 1);
  CHECK(split.bundle(1).size() == 1);

  // Agents valuing nothing stay at zero; the rest still maximize the product.
  const Instance zero(3, 3, {{0, 0, 0}, {2, 1, 0}, {1, 2, 1}});
  CHECK(mnw(zero).owners() == oracle::nash_optimum(zero));
}

TEST_CASE("maximum Nash welfare matches brute force") {
  Rng rng(77);
  for (int t = 0; t < 60; ++t) {
    const int n = oracle::uniform_int(rng, 1, 4);
    const int m = oracle::uniform_int(rng, 0, 7);
    const auto inst = oracle::random_instance(rng, n, m, static_cast<oracle::Dist>(t % 3));
    CAPTURE(t);
    CHECK(mnw(inst).owners() == oracle::nash_optimum(inst));
  }
}

TEST_CASE("maximum Nash welfare respects its node budget") {
  Rng rng(3);
  const auto inst = oracle::random_instance(rng, 6, 14, oracle::Dist::kUniform10);
  SolverConfig config;
  config.mnw_node_budget = 5;
  CHECK_THROWS_AS(mnw(inst, config), CapacityError);
}

TEST_CASE("market algorithm") {
  const Instance single(2, 1, {{1}, {1}});
  const auto one = ef1_po_market(single);
  CHECK(one.bundle(0).size() + one.bundle(1).size() == 1);
  CHECK(is_ef1(single, one));

  const auto inst = testing::instance("intro.json");
  const auto alloc = ef1_po_market(inst);
  CHECK(is_ef1(inst, alloc));
  CHECK(is_pareto_optimal(inst, alloc));

  Rng rng(11);
  for (int t = 0; t < 10; ++t) {
    const auto r = oracle::random_instance(rng, 5, 10, oracle::Dist::kUniform10);
    int steps = 0;
    bool consistent = true;
    MarketTrace trace;
    const auto a = ef1_po_market(r, {}, &trace, [&](const MarketState& s) {
      ++steps;
      consistent = consistent && mbb_consistent(r, s);
    });
    CHECK(consistent);
    CHECK(steps > 0);
    CHECK(is_ef1(r, a));
    if (t < 2) CHECK(is_pareto_optimal(r, a));
  }
}

TEST_CASE("market algorithm handles zero agents and unvalued goods") {
  const Instance inst(3, 4, {{0, 0, 0, 0}, {1, 0, 2, 0}, {0, 0, 1, 3}});
  const auto alloc = ef1_po_market(inst);
  CHECK(is_ef1(inst, alloc));
  CHECK(oracle::is_pareto_optimal(inst, alloc.owners()));
}

TEST_CASE("all algorithms on random small instances") {
  Rng rng(99);
  for (int t = 0; t < 60; ++t) {
    const int n = oracle::uniform_int(rng, 2, 4);
    const int m = oracle::uniform_int(rng, n, 7);
    const auto inst = oracle::random_instance(rng, n, m, static_cast<oracle::Dist>(t % 3));
    for (Algorithm a : kAllAlgorithms) {
      const auto alloc = run_algorithm(a, inst);
      CAPTURE(t);
      CAPTURE(algorithm_name(a));
      CHECK(oracle::is_ef1(inst, alloc.owners()));
      CHECK(oracle::is_sef1(inst, alloc.owners()));
      CHECK(oracle::has_unenvied_agent(inst, alloc.owners()));
    }
  }
}
