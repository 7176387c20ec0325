#pragma once

#include <cstdint>
#include <initializer_list>
#include <span>
#include <vector>

#include "hefk/errors.hpp"

namespace hefk {

using Value = std::int64_t;

// n agents, m goods, additive non-negative integer valuations.
// Agents and goods are 0-indexed.
class Instance {
 public:
  Instance(int num_agents, int num_goods,
           const std::vector<std::vector<Value>>& valuations);

  // Infers m from the row length. Zero rows is a structural error.
  static Instance from_rows(const std::vector<std::vector<Value>>& rows);

  int num_agents() const { return n_; }
  int num_goods() const { return m_; }

  Value value(int agent, int good) const {
    return v_[static_cast<std::size_t>(agent) * m_ + good];
  }
  // Bounds-checked variant; throws IndexError.
  Value value_at(int agent, int good) const;

  std::span<const Value> row(int agent) const {
    return {v_.data() + static_cast<std::size_t>(agent) * m_,
            static_cast<std::size_t>(m_)};
  }
  std::vector<std::vector<Value>> rows() const;

  Value max_value() const;
  Value total_value(int agent) const;
  bool is_binary() const;
  bool is_identical() const;

  bool operator==(const Instance&) const = default;

 private:
  int n_;
  int m_;
  std::vector<Value> v_;
};

// A complete partition of the goods into one bundle per agent.
// Bundles are stored sorted; empty bundles are allowed.
class Allocation {
 public:
  Allocation() = default;
  Allocation(std::vector<std::vector<int>> bundles, int num_goods);

  // owner[j] = agent receiving good j.
  static Allocation from_owners(std::span<const int> owner, int num_agents);

  int num_agents() const { return static_cast<int>(bundles_.size()); }
  int num_goods() const { return static_cast<int>(owner_.size()); }

  const std::vector<int>& bundle(int agent) const { return bundles_[agent]; }
  const std::vector<std::vector<int>>& bundles() const { return bundles_; }
  int owner(int good) const { return owner_[good]; }
  const std::vector<int>& owners() const { return owner_; }

  bool operator==(const Allocation&) const = default;

 private:
  std::vector<std::vector<int>> bundles_;
  std::vector<int> owner_;
};

// Set of withheld goods, kept sorted and duplicate-free.
class HiddenSet {
 public:
  HiddenSet() = default;
  explicit HiddenSet(std::vector<int> goods);
  HiddenSet(std::initializer_list<int> goods)
      : HiddenSet(std::vector<int>(goods)) {}

  const std::vector<int>& goods() const { return goods_; }
  int size() const { return static_cast<int>(goods_.size()); }
  bool empty() const { return goods_.empty(); }
  bool contains(int good) const;

  // |S ∩ A_i| <= 1 for every agent.
  bool is_uniform(const Allocation& alloc) const;

  bool operator==(const HiddenSet&) const = default;

 private:
  std::vector<int> goods_;
};

// envy(i, h) = max{0, v_i(A_h \ S) - v_i(A_i)}; aggregate is the sum.
struct EnvyReport {
  int num_agents = 0;
  std::vector<Value> pairwise;  // row-major n x n
  Value aggregate = 0;

  Value envy(int envier, int owner) const {
    return pairwise[static_cast<std::size_t>(envier) * num_agents + owner];
  }
};

// Throws StructuralError unless `alloc` partitions exactly the goods of `inst`
// among exactly its agents.
void check_compatible(const Instance& inst, const Allocation& alloc);

Value bundle_value(const Instance& inst, int agent, std::span<const int> goods);

EnvyReport envy_report(const Instance& inst, const Allocation& alloc,
                       const HiddenSet& hidden = {});

bool is_ef(const Instance& inst, const Allocation& alloc);
bool is_hef(const Instance& inst, const Allocation& alloc,
            const HiddenSet& hidden);
bool is_ef1(const Instance& inst, const Allocation& alloc);
bool is_sef1(const Instance& inst, const Allocation& alloc);

// Envy towards a bundle depends only on which of its own goods are hidden, so
// the search runs per bundle: each envied bundle needs one good whose removal
// clears every envier, and at most k bundles may need one.
bool is_uhef(const Instance& inst, const Allocation& alloc, int k);

// Agents nobody envies (sources of the envy graph).
std::vector<int> unenvied_agents(const Instance& inst, const Allocation& alloc);

std::vector<Value> utilities(const Instance& inst, const Allocation& alloc);

struct ParetoOptions {
  // Refuse when n^m exceeds this many allocations.
  double max_states = 1e8;
};

// Exhaustive Pareto-optimality oracle over all n^m allocations (pruned DFS
// that still decides the question exactly). Throws CapacityError when the
// state count exceeds the guard.
bool is_pareto_optimal(const Instance& inst, const Allocation& alloc,
                       const ParetoOptions& options = {});

}  // namespace hefk
