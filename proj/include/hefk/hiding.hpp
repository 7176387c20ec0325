#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "hefk/core.hpp"

namespace hefk {

// Residual envy f(S) of a fixed allocation: aggregate envy after hiding S
// from everyone but the owners. Envy towards bundle h only depends on S ∩ A_h.
class ResidualEnvyOracle {
 public:
  ResidualEnvyOracle(const Instance& inst, const Allocation& alloc);

  const Instance& instance() const { return inst_; }
  const Allocation& allocation() const { return alloc_; }
  int num_agents() const { return inst_.num_agents(); }
  int num_goods() const { return inst_.num_goods(); }

  // v_i(A_h) - v_i(A_i), possibly negative.
  Value excess(int envier, int owner) const {
    return excess_[static_cast<std::size_t>(envier) * num_agents() + owner];
  }
  // Agents i != h with excess(i, h) > 0, ascending.
  const std::vector<int>& enviers(int owner) const { return enviers_[owner]; }

  Value aggregate_envy() const { return aggregate_; }
  Value residual(const HiddenSet& hidden) const;
  Value residual(const std::vector<char>& hidden_mask) const;

  // Goods valued positively by some envier of their owner. Hiding any other
  // good leaves f unchanged.
  const std::vector<int>& relevant_goods() const { return relevant_; }

 private:
  Instance inst_;
  Allocation alloc_;
  std::vector<Value> excess_;
  std::vector<std::vector<int>> enviers_;
  std::vector<int> relevant_;
  Value aggregate_ = 0;
};

struct HidingResult {
  HiddenSet hidden;
  Value residual = 0;
  bool optimal = false;
  std::int64_t steps = 0;
  // f after each greedy addition, starting with f(∅). Empty for exact search.
  std::vector<Value> trace;
};

// Repeatedly hides the good with the largest drop in f, lowest index on ties,
// until f reaches zero.
HidingResult greedy_hide(const ResidualEnvyOracle& oracle);

// Minimum hidden set, lexicographically smallest among minimum ones.
// Returns nullopt when every certifying set is larger than max_k.
std::optional<HidingResult> exact_min_hide(const ResidualEnvyOracle& oracle,
                                           std::optional<int> max_k = std::nullopt);

// κ(A, I).
int kappa(const Instance& inst, const Allocation& alloc);

struct OptimalOptions {
  std::optional<int> max_k;
  std::int64_t node_budget = 200'000'000;
};

struct OptimalResult {
  int kappa = 0;
  Allocation witness;
  HiddenSet hidden;
  std::int64_t nodes = 0;
};

// κ^opt(I) with a witness allocation and hidden set. Deepens k from 0 and
// searches allocations (goods in index order) for an HEF-k one. Returns
// nullopt when κ^opt exceeds max_k. Throws CapacityError carrying the proven
// lower bound when the node budget runs out.
std::optional<OptimalResult> optimal_kappa(const Instance& inst,
                                           const OptimalOptions& options = {});

struct Regret {
  int value = 0;
  int denominator = 0;  // n - 1
  double normalized() const {
    return denominator == 0 ? 0.0 : static_cast<double>(value) / denominator;
  }
};

// κ(A, I) - κ^opt(I), normalized by n - 1 (zero for a single agent).
Regret regret(const Instance& inst, const Allocation& alloc, int kappa_opt);
Regret regret_from_kappa(int num_agents, int kappa_alloc, int kappa_opt);

}  // namespace hefk
