#include "hefk/hiding.hpp"

#include <algorithm>
#include <limits>

#include "bundle_cover.hpp"

namespace hefk {

namespace detail {

namespace {

class CoverSearch {
 public:
  CoverSearch(const Instance& inst, const std::vector<int>& candidates,
              const std::vector<Demand>& demands, std::int64_t& nodes)
      : inst_(inst), cand_(candidates), demands_(demands), nodes_(nodes) {
    const std::size_t c = cand_.size();
    const std::size_t d = demands_.size();
    suffix_sum_.assign((c + 1) * d, 0);
    suffix_max_.assign((c + 1) * d, 0);
    for (std::size_t p = c; p-- > 0;) {
      for (std::size_t t = 0; t < d; ++t) {
        const Value v = inst_.value(demands_[t].agent, cand_[p]);
        suffix_sum_[p * d + t] = suffix_sum_[(p + 1) * d + t] + v;
        suffix_max_[p * d + t] = std::max(suffix_max_[(p + 1) * d + t], v);
      }
    }
    remaining_.resize(d);
  }

  bool feasible_at_all() const {
    for (std::size_t t = 0; t < demands_.size(); ++t) {
      if (suffix_sum_[t] < demands_[t].deficit) return false;
    }
    return true;
  }

  bool run(int size) {
    for (std::size_t t = 0; t < demands_.size(); ++t) {
      remaining_[t] = demands_[t].deficit;
    }
    chosen_.clear();
    return extend(0, size);
  }

  const std::vector<int>& chosen() const { return chosen_; }

 private:
  bool hopeless(std::size_t pos, int slots) const {
    const std::size_t d = demands_.size();
    for (std::size_t t = 0; t < d; ++t) {
      const Value need = remaining_[t];
      if (need <= 0) continue;
      if (slots == 0) return true;
      if (suffix_sum_[pos * d + t] < need) return true;
      if (suffix_max_[pos * d + t] * slots < need) return true;
    }
    return false;
  }

  bool extend(std::size_t pos, int slots) {
    ++nodes_;
    if (hopeless(pos, slots)) return false;
    if (slots == 0) return true;
    for (std::size_t p = pos; p + slots <= cand_.size(); ++p) {
      const int g = cand_[p];
      for (std::size_t t = 0; t < demands_.size(); ++t) {
        remaining_[t] -= inst_.value(demands_[t].agent, g);
      }
      chosen_.push_back(g);
      if (extend(p + 1, slots - 1)) return true;
      chosen_.pop_back();
      for (std::size_t t = 0; t < demands_.size(); ++t) {
        remaining_[t] += inst_.value(demands_[t].agent, g);
      }
    }
    return false;
  }

  const Instance& inst_;
  const std::vector<int>& cand_;
  const std::vector<Demand>& demands_;
  std::int64_t& nodes_;
  std::vector<Value> suffix_sum_;
  std::vector<Value> suffix_max_;
  std::vector<Value> remaining_;
  std::vector<int> chosen_;
};

}  // namespace

std::optional<std::vector<int>> min_bundle_cover(
    const Instance& inst, const std::vector<int>& candidates,
    const std::vector<Demand>& demands, int max_size, std::int64_t& nodes) {
  if (demands.empty()) return std::vector<int>{};
  CoverSearch search(inst, candidates, demands, nodes);
  if (!search.feasible_at_all()) return std::nullopt;
  const int limit = std::min<int>(max_size, static_cast<int>(candidates.size()));
  for (int size = 1; size <= limit; ++size) {
    if (search.run(size)) return search.chosen();
  }
  return std::nullopt;
}

}  // namespace detail

ResidualEnvyOracle::ResidualEnvyOracle(const Instance& inst,
                                       const Allocation& alloc)
    : inst_(inst), alloc_(alloc) {
  check_compatible(inst, alloc);
  const int n = inst.num_agents();
  std::vector<Value> w(static_cast<std::size_t>(n) * n, 0);
  for (int h = 0; h < n; ++h) {
    for (int g : alloc.bundle(h)) {
      for (int i = 0; i < n; ++i) w[i * n + h] += inst.value(i, g);
    }
  }
  excess_.assign(static_cast<std::size_t>(n) * n, 0);
  enviers_.assign(n, {});
  for (int i = 0; i < n; ++i) {
    for (int h = 0; h < n; ++h) {
      if (i == h) continue;
      const Value x = w[i * n + h] - w[i * n + i];
      excess_[i * n + h] = x;
      if (x > 0) {
        enviers_[h].push_back(i);
        aggregate_ += x;
      }
    }
  }
  for (int g = 0; g < inst.num_goods(); ++g) {
    for (int i : enviers_[alloc.owner(g)]) {
      if (inst.value(i, g) > 0) {
        relevant_.push_back(g);
        break;
      }
    }
  }
}

Value ResidualEnvyOracle::residual(const std::vector<char>& hidden_mask) const {
  const int n = num_agents();
  Value total = 0;
  for (int h = 0; h < n; ++h) {
    for (int i : enviers_[h]) {
      Value x = excess(i, h);
      for (int g : alloc_.bundle(h)) {
        if (hidden_mask[g]) x -= inst_.value(i, g);
      }
      total += std::max<Value>(0, x);
    }
  }
  return total;
}

Value ResidualEnvyOracle::residual(const HiddenSet& hidden) const {
  std::vector<char> mask(num_goods(), 0);
  for (int g : hidden.goods()) {
    if (g < 0 || g >= num_goods()) throw IndexError("hidden good out of range");
    mask[g] = 1;
  }
  return residual(mask);
}

HidingResult greedy_hide(const ResidualEnvyOracle& oracle) {
  const Instance& inst = oracle.instance();
  const Allocation& alloc = oracle.allocation();
  const int n = oracle.num_agents();
  const int m = oracle.num_goods();
  std::vector<Value> x(static_cast<std::size_t>(n) * n, 0);
  for (int i = 0; i < n; ++i) {
    for (int h = 0; h < n; ++h) x[i * n + h] = oracle.excess(i, h);
  }
  std::vector<char> hidden(m, 0);
  std::vector<int> picked;
  HidingResult out;
  Value f = oracle.aggregate_envy();
  out.trace.push_back(f);
  while (f > 0) {
    int best = -1;
    Value best_gain = 0;
    for (int g = 0; g < m; ++g) {
      if (hidden[g]) continue;
      const int h = alloc.owner(g);
      Value gain = 0;
      for (int i : oracle.enviers(h)) {
        const Value r = x[i * n + h];
        if (r > 0) gain += std::min(r, inst.value(i, g));
      }
      if (gain > best_gain) {
        best = g;
        best_gain = gain;
      }
    }
    hidden[best] = 1;
    picked.push_back(best);
    const int h = alloc.owner(best);
    for (int i : oracle.enviers(h)) x[i * n + h] -= inst.value(i, best);
    f -= best_gain;
    out.trace.push_back(f);
    ++out.steps;
  }
  out.hidden = HiddenSet(std::move(picked));
  out.residual = f;
  return out;
}

std::optional<HidingResult> exact_min_hide(const ResidualEnvyOracle& oracle,
                                           std::optional<int> max_k) {
  const Instance& inst = oracle.instance();
  const Allocation& alloc = oracle.allocation();
  const int n = oracle.num_agents();
  int budget = max_k.value_or(std::numeric_limits<int>::max());
  if (budget < 0) return std::nullopt;
  HidingResult out;
  out.optimal = true;
  std::vector<int> hidden;
  for (int h = 0; h < n; ++h) {
    const auto& enviers = oracle.enviers(h);
    if (enviers.empty()) continue;
    std::vector<detail::Demand> demands;
    for (int i : enviers) demands.push_back({i, oracle.excess(i, h)});
    std::vector<int> candidates;
    for (int g : alloc.bundle(h)) {
      for (int i : enviers) {
        if (inst.value(i, g) > 0) {
          candidates.push_back(g);
          break;
        }
      }
    }
    auto cover = detail::min_bundle_cover(inst, candidates, demands, budget, out.steps);
    if (!cover) return std::nullopt;
    budget -= static_cast<int>(cover->size());
    hidden.insert(hidden.end(), cover->begin(), cover->end());
  }
  out.hidden = HiddenSet(std::move(hidden));
  out.residual = 0;
  return out;
}

int kappa(const Instance& inst, const Allocation& alloc) {
  return exact_min_hide(ResidualEnvyOracle(inst, alloc))->hidden.size();
}

Regret regret_from_kappa(int num_agents, int kappa_alloc, int kappa_opt) {
  return Regret{kappa_alloc - kappa_opt, std::max(num_agents - 1, 0)};
}

Regret regret(const Instance& inst, const Allocation& alloc, int kappa_opt) {
  return regret_from_kappa(inst.num_agents(), kappa(inst, alloc), kappa_opt);
}

}  // namespace hefk
