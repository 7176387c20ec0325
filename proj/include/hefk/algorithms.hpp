#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "hefk/core.hpp"

namespace hefk {

// Orders and budgets shared by the allocation algorithms. Empty orders mean
// identity. agent_order doubles as the agent tie-break order everywhere.
struct SolverConfig {
  std::vector<int> agent_order;
  std::vector<int> good_order;
  std::uint64_t rng_seed = 0;
  std::int64_t mnw_node_budget = 50'000'000;

  // Uniformly shuffled agent and good orders drawn from `seed`.
  static SolverConfig shuffled(int num_agents, int num_goods, std::uint64_t seed);
};

// Resolved permutations; throws PreconditionError for invalid orders.
std::vector<int> resolve_agent_order(const SolverConfig& config, int num_agents);
std::vector<int> resolve_good_order(const SolverConfig& config, int num_goods);

enum class Algorithm { kRoundRobin, kEnvyGraph, kMnw, kEf1Po };

inline constexpr Algorithm kAllAlgorithms[] = {
    Algorithm::kRoundRobin, Algorithm::kEnvyGraph, Algorithm::kMnw,
    Algorithm::kEf1Po};

// "round-robin", "envy-graph", "mnw", "ef1-po"
std::string_view algorithm_name(Algorithm a);
std::optional<Algorithm> parse_algorithm(std::string_view name);

Allocation round_robin(const Instance& inst, const SolverConfig& config = {});

// Lipton et al. envy-cycle elimination: each good goes to an unenvied agent,
// rotating bundles along an envy cycle whenever no such agent exists. A final
// rotation pass guarantees the output has an unenvied agent.
Allocation envy_graph(const Instance& inst, const SolverConfig& config = {});

// Exact maximum Nash welfare: most agents with positive utility, then the
// largest product of positive utilities, then the lexicographically smallest
// owner vector. Throws CapacityError when the node budget runs out.
Allocation mnw(const Instance& inst, const SolverConfig& config = {});

using Rational = boost::multiprecision::cpp_rational;

// Snapshot of the Fisher market used by ef1_po_market.
struct MarketState {
  std::vector<Rational> prices;    // per good, > 0 for goods in the market
  std::vector<int> owner;          // per good
  std::vector<Rational> mbb_ratio; // per agent, max_j v_ij / p_j
  std::vector<bool> active;        // agents still taking part in the dynamics
};

// Every active agent owns only goods of maximum bang per buck, and every
// market price is positive.
bool mbb_consistent(const Instance& inst, const MarketState& state);

struct MarketTrace {
  std::int64_t transfers = 0;
  std::int64_t price_rises = 0;
  std::int64_t settled_components = 0;
};

// Local search with price rises in the Fisher market of the instance
// (Barman, Krishnamurthy and Vaish). Returns an EF1 and fractionally Pareto
// optimal allocation. `observer`, if set, sees the state after every step.
Allocation ef1_po_market(
    const Instance& inst, const SolverConfig& config = {},
    MarketTrace* trace = nullptr,
    const std::function<void(const MarketState&)>& observer = {});

Allocation run_algorithm(Algorithm a, const Instance& inst,
                         const SolverConfig& config = {});

}  // namespace hefk
