// SolverConfig handling, RoundRobin and EnvyGraph.

#include <algorithm>
#include <numeric>
#include <stdexcept>
#include <string>

#include "hefk/algorithms.hpp"
#include "hefk/rng.hpp"

namespace hefk {

namespace {

std::vector<int> resolve_order(const std::vector<int>& order, int size,
                               const char* what) {
  if (order.empty()) {
    std::vector<int> id(size);
    std::iota(id.begin(), id.end(), 0);
    return id;
  }
  if (static_cast<int>(order.size()) != size) {
    throw PreconditionError(std::string(what) + " order has wrong length");
  }
  std::vector<char> seen(size, 0);
  for (int x : order) {
    if (x < 0 || x >= size || seen[x]) {
      throw PreconditionError(std::string(what) + " order is not a permutation");
    }
    seen[x] = 1;
  }
  return order;
}

}  // namespace

SolverConfig SolverConfig::shuffled(int num_agents, int num_goods,
                                    std::uint64_t seed) {
  SolverConfig c;
  c.rng_seed = seed;
  Rng rng(hash_seed({seed, 0x5eed}));
  c.agent_order.resize(num_agents);
  std::iota(c.agent_order.begin(), c.agent_order.end(), 0);
  rng.shuffle(c.agent_order);
  c.good_order.resize(num_goods);
  std::iota(c.good_order.begin(), c.good_order.end(), 0);
  rng.shuffle(c.good_order);
  return c;
}

std::vector<int> resolve_agent_order(const SolverConfig& config, int num_agents) {
  return resolve_order(config.agent_order, num_agents, "agent");
}

std::vector<int> resolve_good_order(const SolverConfig& config, int num_goods) {
  return resolve_order(config.good_order, num_goods, "good");
}

std::string_view algorithm_name(Algorithm a) {
  switch (a) {
    case Algorithm::kRoundRobin: return "round-robin";
    case Algorithm::kEnvyGraph: return "envy-graph";
    case Algorithm::kMnw: return "mnw";
    case Algorithm::kEf1Po: return "ef1-po";
  }
  return "?";
}

std::optional<Algorithm> parse_algorithm(std::string_view name) {
  for (Algorithm a : kAllAlgorithms) {
    if (algorithm_name(a) == name) return a;
  }
  return std::nullopt;
}

Allocation run_algorithm(Algorithm a, const Instance& inst,
                         const SolverConfig& config) {
  switch (a) {
    case Algorithm::kRoundRobin: return round_robin(inst, config);
    case Algorithm::kEnvyGraph: return envy_graph(inst, config);
    case Algorithm::kMnw: return mnw(inst, config);
    case Algorithm::kEf1Po: return ef1_po_market(inst, config);
  }
  throw std::logic_error("unknown algorithm");
}

Allocation round_robin(const Instance& inst, const SolverConfig& config) {
  const int n = inst.num_agents();
  const int m = inst.num_goods();
  const auto sigma = resolve_agent_order(config, n);
  std::vector<char> taken(m, 0);
  std::vector<std::vector<int>> bundles(n);
  for (int turn = 0; turn < m; ++turn) {
    const int agent = sigma[turn % n];
    int pick = -1;
    for (int g = 0; g < m; ++g) {
      if (taken[g]) continue;
      if (pick == -1 || inst.value(agent, g) > inst.value(agent, pick)) pick = g;
    }
    taken[pick] = 1;
    bundles[agent].push_back(pick);
  }
  return Allocation(std::move(bundles), m);
}

namespace {

class EnvyGraphState {
 public:
  EnvyGraphState(const Instance& inst, std::vector<int> agent_order)
      : inst_(inst),
        n_(inst.num_agents()),
        order_(std::move(agent_order)),
        bundles_(n_),
        w_(static_cast<std::size_t>(n_) * n_, 0) {}

  bool envies(int i, int h) const { return i != h && w(i, i) < w(i, h); }

  int first_unenvied() const {
    for (int h : order_) {
      bool envied = false;
      for (int i = 0; i < n_ && !envied; ++i) envied = envies(i, h);
      if (!envied) return h;
    }
    return -1;
  }

  void give(int agent, int good) {
    bundles_[agent].push_back(good);
    for (int i = 0; i < n_; ++i) w(i, agent) += inst_.value(i, good);
  }

  // Depth-first search over envy edges, visiting agents in tie-break order.
  std::vector<int> find_cycle() const {
    std::vector<int> state(n_, 0);  // 0 new, 1 on stack, 2 done
    std::vector<int> stack;
    std::vector<int> cycle;
    std::function<bool(int)> dfs = [&](int u) {
      state[u] = 1;
      stack.push_back(u);
      for (int v : order_) {
        if (!envies(u, v)) continue;
        if (state[v] == 1) {
          auto it = std::find(stack.begin(), stack.end(), v);
          cycle.assign(it, stack.end());
          return true;
        }
        if (state[v] == 0 && dfs(v)) return true;
      }
      stack.pop_back();
      state[u] = 2;
      return false;
    };
    for (int s : order_) {
      if (state[s] == 0 && dfs(s)) return cycle;
    }
    return {};
  }

  // cycle[t] envies cycle[t+1]; each agent takes its successor's bundle.
  void rotate(const std::vector<int>& cycle) {
    std::vector<std::vector<int>> moved;
    moved.reserve(cycle.size());
    for (std::size_t t = 0; t < cycle.size(); ++t) {
      moved.push_back(bundles_[cycle[(t + 1) % cycle.size()]]);
    }
    for (std::size_t t = 0; t < cycle.size(); ++t) {
      bundles_[cycle[t]] = std::move(moved[t]);
    }
    std::fill(w_.begin(), w_.end(), 0);
    for (int h = 0; h < n_; ++h) {
      for (int g : bundles_[h]) {
        for (int i = 0; i < n_; ++i) w(i, h) += inst_.value(i, g);
      }
    }
  }

  std::vector<std::vector<int>> take_bundles() { return std::move(bundles_); }

 private:
  Value& w(int i, int h) { return w_[static_cast<std::size_t>(i) * n_ + h]; }
  Value w(int i, int h) const { return w_[static_cast<std::size_t>(i) * n_ + h]; }

  const Instance& inst_;
  int n_;
  std::vector<int> order_;
  std::vector<std::vector<int>> bundles_;
  std::vector<Value> w_;
};

}  // namespace

Allocation envy_graph(const Instance& inst, const SolverConfig& config) {
  const int m = inst.num_goods();
  EnvyGraphState state(inst, resolve_agent_order(config, inst.num_agents()));
  auto source = [&] {
    int target = state.first_unenvied();
    while (target == -1) {
      const auto cycle = state.find_cycle();
      if (cycle.empty()) {
        throw std::logic_error("envy graph has neither a source nor a cycle");
      }
      state.rotate(cycle);
      target = state.first_unenvied();
    }
    return target;
  };
  for (int good : resolve_good_order(config, m)) state.give(source(), good);
  // The last good can close a cycle; rotating it away leaves an unenvied agent.
  source();
  return Allocation(state.take_bundles(), m);
}

}  // namespace hefk
