#pragma once

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "hefk/algorithms.hpp"
#include "hefk/core.hpp"

namespace hefk {

// v_ij ~ Ber(p) i.i.d., drawn from a stream seeded by hash(seed, n, m, id).
Instance generate_bernoulli(int n, int m, double p, std::uint64_t seed,
                            std::uint64_t instance_id = 0);

struct SweepConfig {
  int agents_min = 3;
  int agents_max = 5;
  int goods_min = 3;
  int goods_max = 8;
  int instances_per_cell = 20;
  double bernoulli_p = 0.7;
  std::vector<Algorithm> algorithms{std::begin(kAllAlgorithms),
                                    std::end(kAllAlgorithms)};
  std::uint64_t rng_seed = 1;
  bool compute_optimal = true;
  std::int64_t node_budget = 20'000'000;
  int parallelism = 1;
  // Wall-clock timings make reruns differ, so they are opt-in.
  bool record_runtime = false;

  // Throws PreconditionError on empty ranges, p outside (0, 1), etc.
  void validate() const;
};

// Keys: agent_range [lo, hi], good_range [lo, hi], instances_per_cell,
// bernoulli_p, algorithms, rng_seed, compute_optimal, node_budget,
// parallelism, record_runtime. Missing keys keep their defaults.
SweepConfig sweep_config_from_json(const nlohmann::json& j);
nlohmann::json to_json(const SweepConfig& config);

inline constexpr const char* kOptimalName = "optimal";

// One (instance, algorithm) row. Empty optionals are written as empty CSV
// fields.
struct ExperimentRecord {
  int n = 0;
  int m = 0;
  int instance_id = 0;
  std::string algorithm;
  std::optional<int> k_hidden;
  std::optional<int> k_opt;
  std::optional<int> regret;
  std::optional<double> normalized_regret;
  std::optional<Value> aggregate_envy;
  std::optional<bool> is_ef;
  std::optional<double> runtime_ms;
  // Size of the greedy hidden set; kept in memory only.
  std::optional<int> greedy_hidden;
};

// Records for one instance: the configured algorithms in order, then the
// "optimal" row when compute_optimal is set.
std::vector<ExperimentRecord> evaluate_instance(const Instance& inst,
                                                int instance_id,
                                                const SweepConfig& config);

// All records, ordered by (n, m, instance_id, algorithm order).
std::vector<ExperimentRecord> run_sweep(
    const SweepConfig& config,
    const std::function<void(int done, int total)>& progress = {});

extern const char* const kCsvHeader;
void write_csv(std::ostream& out, const std::vector<ExperimentRecord>& records);

// Per (n, m, algorithm) cell aggregates plus the hidden-goods CDF.
nlohmann::json aggregate(const std::vector<ExperimentRecord>& records);

}  // namespace hefk
