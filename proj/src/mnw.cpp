// Exact maximum Nash welfare by branch and bound.
//
// Objective, compared lexicographically: number of agents with positive
// utility, product of the positive utilities, then the owner vector (smaller
// wins). A good some agent values positively always goes to such an agent in
// an optimum (moving it there strictly improves the count or the product), so
// only those agents are branched on. Goods nobody values go to agent 0.

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "hefk/algorithms.hpp"

namespace hefk {

namespace {

using boost::multiprecision::cpp_int;
using Real = long double;

constexpr Real kLogSlack = 1e-15L;

struct Score {
  int positive = -1;
  Real log_product = 0;
};

cpp_int exact_product(const std::vector<Value>& u) {
  cpp_int p = 1;
  for (Value x : u) {
    if (x > 0) p *= x;
  }
  return p;
}

Score score_of(const std::vector<Value>& u) {
  Score s{0, 0};
  for (Value x : u) {
    if (x > 0) {
      ++s.positive;
      s.log_product += std::log(static_cast<Real>(x));
    }
  }
  return s;
}

class MnwSearch {
 public:
  MnwSearch(const Instance& inst, std::int64_t budget)
      : inst_(inst), n_(inst.num_agents()), m_(inst.num_goods()), budget_(budget) {
    for (int g = 0; g < m_; ++g) {
      Value best = 0;
      for (int i = 0; i < n_; ++i) best = std::max(best, inst.value(i, g));
      max_value_.push_back(best);
      if (best > 0) order_.push_back(g);
    }
    std::stable_sort(order_.begin(), order_.end(), [&](int a, int b) {
      return max_value_[a] > max_value_[b];
    });
    const int r = static_cast<int>(order_.size());
    suffix_cap_.assign(static_cast<std::size_t>(r + 1) * n_, 0);
    suffix_best_.assign(r + 1, 0);
    for (int d = r - 1; d >= 0; --d) {
      const int g = order_[d];
      suffix_best_[d] = suffix_best_[d + 1] + max_value_[g];
      for (int i = 0; i < n_; ++i) {
        cap(d, i) = cap(d + 1, i) + inst.value(i, g);
      }
    }
    owner_.assign(m_, 0);
    utility_.assign(n_, 0);
    assigned_.assign(m_, 0);
    min_valuer_.assign(m_, 0);
    for (int g = 0; g < m_; ++g) {
      for (int i = 0; i < n_; ++i) {
        if (inst.value(i, g) > 0) {
          min_valuer_[g] = i;
          break;
        }
      }
    }
  }

  std::vector<int> solve() {
    seed_incumbent();
    descend(0);
    return best_owner_;
  }

 private:
  Value& cap(int depth, int agent) {
    return suffix_cap_[static_cast<std::size_t>(depth) * n_ + agent];
  }
  Value cap(int depth, int agent) const {
    return suffix_cap_[static_cast<std::size_t>(depth) * n_ + agent];
  }

  // Greedy start: each good to the positive valuer with the largest
  // relative gain, preferring agents still at zero.
  void seed_incumbent() {
    std::vector<Value> u(n_, 0);
    std::vector<int> owner(m_, 0);
    for (int g : order_) {
      int pick = -1;
      Real pick_gain = -1;
      for (int i = 0; i < n_; ++i) {
        const Value v = inst_.value(i, g);
        if (v == 0) continue;
        const Real gain = u[i] == 0 ? std::numeric_limits<Real>::infinity()
                                    : std::log1p(static_cast<Real>(v) / u[i]);
        if (gain > pick_gain) {
          pick = i;
          pick_gain = gain;
        }
      }
      owner[g] = pick;
      u[pick] += inst_.value(pick, g);
    }
    best_owner_ = owner;
    best_utility_ = u;
    best_score_ = score_of(u);
  }

  // Negative: candidate worse; positive: better; ties broken by owner vector.
  int compare_to_best(const std::vector<Value>& u, const std::vector<int>& owner,
                      const Score& s) const {
    if (s.positive != best_score_.positive) {
      return s.positive > best_score_.positive ? 1 : -1;
    }
    const Real scale = std::max<Real>(1, std::fabs(best_score_.log_product));
    const Real diff = s.log_product - best_score_.log_product;
    if (diff > 1e-9L * scale) return 1;
    if (diff < -1e-9L * scale) return -1;
    const cpp_int a = exact_product(u);
    const cpp_int b = exact_product(best_utility_);
    if (a != b) return a > b ? 1 : -1;
    return owner < best_owner_ ? 1 : -1;
  }

  // Upper bound on the log product reachable below this node when the final
  // allocation keeps `count` agents positive. Remaining goods add at most
  // their best value in total and at most cap_i to agent i. Utilities are
  // integers, so filling the lowest levels one unit at a time is optimal for
  // that relaxation; it is done here level by level.
  Real product_bound(int depth, int count) const {
    std::vector<Value> base;
    std::vector<Value> caps;
    for (int i = 0; i < n_; ++i) {
      if (utility_[i] > 0 || cap(depth, i) > 0) {
        base.push_back(utility_[i]);
        caps.push_back(cap(depth, i));
      }
    }
    if (static_cast<int>(base.size()) > count) {
      // Some capable agents end at zero; fall back to the best factors.
      std::vector<Value> f;
      for (std::size_t t = 0; t < base.size(); ++t) f.push_back(base[t] + caps[t]);
      std::sort(f.rbegin(), f.rend());
      Real s = 0;
      for (int t = 0; t < count; ++t) s += std::log(static_cast<Real>(f[t]));
      return s;
    }
    const Value budget = suffix_best_[depth];
    auto used_at = [&](Value level) {
      Value used = 0;
      for (std::size_t t = 0; t < base.size(); ++t) {
        used += std::clamp(level - base[t], Value{0}, caps[t]);
      }
      return used;
    };
    Value lo = 0;
    Value hi = 0;
    for (std::size_t t = 0; t < base.size(); ++t) hi = std::max(hi, base[t] + caps[t]);
    if (used_at(hi) <= budget) {
      lo = hi;
    } else {
      // Largest level whose fill fits in the budget.
      while (lo < hi) {
        const Value mid = lo + (hi - lo + 1) / 2;
        if (used_at(mid) <= budget) lo = mid; else hi = mid - 1;
      }
    }
    Value left = budget - used_at(lo);
    Real s = 0;
    for (std::size_t t = 0; t < base.size(); ++t) {
      Value u = base[t] + std::clamp(lo - base[t], Value{0}, caps[t]);
      if (left > 0 && u == lo && u < base[t] + caps[t]) {
        ++u;
        --left;
      }
      if (u <= 0) return -std::numeric_limits<Real>::infinity();
      s += std::log(static_cast<Real>(u));
    }
    return s;
  }

  // Optimistic test: can some completion have a lexicographically smaller
  // owner vector than the incumbent?
  bool may_beat_lexicographically() const {
    for (int g = 0; g < m_; ++g) {
      if (max_value_[g] == 0) continue;
      if (assigned_[g]) {
        if (owner_[g] != best_owner_[g]) return owner_[g] < best_owner_[g];
      } else {
        if (min_valuer_[g] < best_owner_[g]) return true;
        if (inst_.value(best_owner_[g], g) == 0) return false;
      }
    }
    return false;
  }

  bool prune(int depth) const {
    const int remaining = static_cast<int>(order_.size()) - depth;
    int positive = 0;
    int reachable = 0;
    for (int i = 0; i < n_; ++i) {
      if (utility_[i] > 0) {
        ++positive;
      } else if (cap(depth, i) > 0) {
        ++reachable;
      }
    }
    const int count_bound = positive + std::min(reachable, remaining);
    if (count_bound != best_score_.positive) {
      return count_bound < best_score_.positive;
    }
    const Real bound = product_bound(depth, count_bound);
    if (bound < best_score_.log_product - kLogSlack) return true;
    if (bound > best_score_.log_product + kLogSlack) return false;
    return !may_beat_lexicographically();
  }

  void descend(int depth) {
    if (++nodes_ > budget_) {
      throw CapacityError("MNW search exceeded its node budget");
    }
    if (depth == static_cast<int>(order_.size())) {
      const Score s = score_of(utility_);
      if (compare_to_best(utility_, owner_, s) > 0) {
        best_owner_ = owner_;
        best_utility_ = utility_;
        best_score_ = s;
      }
      return;
    }
    if (prune(depth)) return;
    const int g = order_[depth];
    assigned_[g] = 1;
    for (int i = 0; i < n_; ++i) {
      const Value v = inst_.value(i, g);
      if (v == 0) continue;
      owner_[g] = i;
      utility_[i] += v;
      descend(depth + 1);
      utility_[i] -= v;
    }
    owner_[g] = 0;
    assigned_[g] = 0;
  }

  const Instance& inst_;
  int n_;
  int m_;
  std::int64_t budget_;
  std::int64_t nodes_ = 0;

  std::vector<Value> max_value_;
  std::vector<int> order_;
  std::vector<Value> suffix_cap_;
  std::vector<Value> suffix_best_;
  std::vector<int> min_valuer_;

  std::vector<int> owner_;
  std::vector<char> assigned_;
  std::vector<Value> utility_;

  std::vector<int> best_owner_;
  std::vector<Value> best_utility_;
  Score best_score_;
};

}  // namespace

Allocation mnw(const Instance& inst, const SolverConfig& config) {
  MnwSearch search(inst, config.mnw_node_budget);
  const auto owner = search.solve();
  return Allocation::from_owners(owner, inst.num_agents());
}

}  // namespace hefk
