#include "doctest.h"

#include <cmath>
#include <sstream>

#include "common.hpp"
#include "hefk/experiments.hpp"
#include "hefk/hiding.hpp"

using namespace hefk;

TEST_CASE("Bernoulli generator") {
  CHECK(generate_bernoulli(4, 6, 0.7, 1, 3) == generate_bernoulli(4, 6, 0.7, 1, 3));
  CHECK_FALSE(generate_bernoulli(4, 6, 0.7, 1, 3) == generate_bernoulli(4, 6, 0.7, 1, 4));
  CHECK_THROWS_AS(generate_bernoulli(2, 2, 1.0, 1), PreconditionError);

  double ones = 0;
  int total = 0;
  for (int id = 0; id < 100; ++id) {
    const auto inst = generate_bernoulli(10, 10, 0.7, 42, id);
    for (int i = 0; i < 10; ++i) {
      for (int j = 0; j < 10; ++j) {
        ones += inst.value(i, j);
        ++total;
      }
    }
  }
  const double mean = ones / total;
  const double se = std::sqrt(0.7 * 0.3 / total);
  CHECK(std::abs(mean - 0.7) <= 3 * se);

  // Expected number of all-zero rows per 5 x 5 instance: 5 * 0.3^5 ≈ 0.012.
  int zero_rows = 0;
  for (int id = 0; id < 100; ++id) {
    const auto inst = generate_bernoulli(5, 5, 0.7, 42, id);
    for (int i = 0; i < 5; ++i) zero_rows += inst.total_value(i) == 0;
  }
  CHECK(zero_rows <= 6);
}

TEST_CASE("sweep config parsing") {
  const auto c = sweep_config_from_json(
      io::read_json_file(testing::fixture("sweep_small.json")));
  CHECK(c.agents_min == 3);
  CHECK(c.agents_max == 4);
  CHECK(c.goods_max == 6);
  CHECK(c.instances_per_cell == 4);
  CHECK(c.rng_seed == 7);
  CHECK(c.parallelism == 2);
  CHECK(c.algorithms.size() == 4);
  CHECK(sweep_config_from_json(to_json(c)).rng_seed == 7);
  CHECK_THROWS_AS(sweep_config_from_json({{"bogus", 1}}), StructuralError);
  CHECK_THROWS_AS(sweep_config_from_json({{"algorithms", {"nope"}}}), StructuralError);
  CHECK_THROWS_AS(sweep_config_from_json({{"bernoulli_p", 1.5}}), PreconditionError);
  CHECK_THROWS_AS(sweep_config_from_json({{"agent_range", {4, 3}}}), PreconditionError);
}

TEST_CASE("small sweep invariants") {
  SweepConfig c;
  c.agents_min = 3;
  c.agents_max = 5;
  c.goods_min = 3;
  c.goods_max = 8;
  c.instances_per_cell = 20;
  const auto records = run_sweep(c);
  int instances = 0;
  for (int n = 3; n <= 5; ++n) instances += (8 - n + 1) * 20;
  CHECK(records.size() == static_cast<std::size_t>(instances * 5));
  for (const auto& r : records) {
    CHECK(r.m >= r.n);
    REQUIRE(r.k_hidden.has_value());
    CHECK(*r.k_hidden <= r.n - 1);
    REQUIRE(r.k_opt.has_value());
    CHECK(*r.k_opt <= *r.k_hidden);
    if (r.greedy_hidden && r.aggregate_envy && *r.aggregate_envy >= 2) {
      CHECK(*r.greedy_hidden >= *r.k_hidden);
      CHECK(*r.greedy_hidden <=
            *r.k_hidden * std::log(static_cast<double>(*r.aggregate_envy)) + 1 + 1e-9);
    }
  }

  const auto summary = aggregate(records);
  for (const auto& cell : summary["cells"]) {
    CHECK(cell["coverage"].get<double>() == 1.0);
    if (cell["k_opt_worst"].get<int>() == 0) {
      CHECK(cell["mean_k_hidden_non_ef"].is_null());
    }
  }
  for (const auto& [name, cdf] : summary["cdf"]["series"].items()) {
    CHECK(cdf.back().get<double>() == 1.0);
  }
}

TEST_CASE("aggregation of hand-made records") {
  CHECK(aggregate({})["cells"].empty());

  const auto t3 = testing::instance("table3.json");
  SweepConfig c;
  c.algorithms = {Algorithm::kMnw};
  const auto records = evaluate_instance(t3, 0, c);
  REQUIRE(records.size() == 2);
  CHECK(records[0].algorithm == "mnw");
  CHECK(records[0].k_hidden == 4);
  CHECK(records[0].k_opt == 1);
  CHECK(records[0].normalized_regret == doctest::Approx(0.75));
  CHECK(records[1].algorithm == "optimal");
  CHECK(records[1].k_hidden == 1);

  const auto summary = aggregate(records);
  const auto& mnw_cell = summary["cells"][0];
  CHECK(mnw_cell["algorithm"] == "mnw");
  CHECK(mnw_cell["mean_normalized_regret"].get<double>() == doctest::Approx(0.75));
  CHECK(mnw_cell["worst_k_hidden"] == 4);
  CHECK(mnw_cell["k_opt_worst"] == 1);

  ExperimentRecord ef{3, 3, 0, "round-robin", 0, 0, 0, 0.0, 0, true, {}, 0};
  const auto s = aggregate({ef});
  CHECK(s["cells"][0]["mean_normalized_regret"].get<double>() == 0.0);
  CHECK(s["cells"][0]["mean_k_hidden_non_ef"].is_null());
  CHECK(s["cells"][0]["ef_frequency"].get<double>() == 1.0);
}

TEST_CASE("CSV output") {
  ExperimentRecord full{3, 4, 2, "mnw", 1, 0, 1, 0.5, 3, false, {}, 1};
  ExperimentRecord blank{3, 4, 2, "optimal", {}, {}, {}, {}, {}, {}, {}, {}};
  std::ostringstream out;
  write_csv(out, {full, blank});
  CHECK(out.str() == std::string(kCsvHeader) +
                         "\n3,4,2,mnw,1,0,1,0.500000,3,0,\n3,4,2,optimal,,,,,,,\n");
}

TEST_CASE("sweeps are reproducible across thread counts") {
  SweepConfig c;
  c.agents_max = 4;
  c.goods_max = 6;
  c.instances_per_cell = 5;
  std::ostringstream a;
  std::ostringstream b;
  write_csv(a, run_sweep(c));
  c.parallelism = 3;
  int last = 0;
  write_csv(b, run_sweep(c, [&](int done, int) { last = std::max(last, done); }));
  CHECK(a.str() == b.str());
  CHECK(last == 35);
}
