// κ^opt by iterative deepening on k with a depth-first search over
// allocations. Goods are assigned in index order and agents tried in index
// order, so the first HEF-k allocation found is the lexicographically
// smallest owner vector.
//
// Pruning, all valid for every completion of a partial allocation:
//  * Pairwise: agent i can at best receive every remaining good, so any
//    excess of v_i(A_h) over that must be hidden inside the goods of A_h
//    already placed. Counting the goods needed per bundle bounds |S| from
//    below.
//  * Supply: with at most k hidden goods agent i must end with at least
//    (v_i(M) - top_k_i(M)) / n and at least v_i(A_h) - top_k_i(A_h) for every
//    partial bundle; the goods still unassigned must cover all agents' needs
//    simultaneously.
//  * Symmetry: equal goods go to non-decreasing agents; an agent with an
//    equal earlier twin may only start its bundle after the twin did. The
//    lexicographically smallest owner vector of every orbit passes both.

#include <algorithm>
#include <limits>

#include "bundle_cover.hpp"
#include "hefk/algorithms.hpp"
#include "hefk/hiding.hpp"

namespace hefk {

namespace {

class KappaSearch {
 public:
  KappaSearch(const Instance& inst, std::int64_t budget)
      : inst_(inst), n_(inst.num_agents()), m_(inst.num_goods()), budget_(budget) {
    suffix_prefix_.resize(static_cast<std::size_t>(m_ + 1) * n_);
    for (int d = 0; d <= m_; ++d) {
      for (int i = 0; i < n_; ++i) {
        std::vector<Value> vals;
        for (int g = d; g < m_; ++g) vals.push_back(inst.value(i, g));
        std::sort(vals.rbegin(), vals.rend());
        std::vector<Value> prefix(vals.size() + 1, 0);
        for (std::size_t t = 0; t < vals.size(); ++t) prefix[t + 1] = prefix[t] + vals[t];
        suffix_prefix_[static_cast<std::size_t>(d) * n_ + i] = std::move(prefix);
      }
    }
    good_twin_.assign(m_, -1);
    for (int g = 0; g < m_; ++g) {
      for (int e = g - 1; e >= 0; --e) {
        bool same = true;
        for (int i = 0; i < n_ && same; ++i) same = inst.value(i, e) == inst.value(i, g);
        if (same) {
          good_twin_[g] = e;
          break;
        }
      }
    }
    agent_twin_.assign(n_, -1);
    for (int a = 0; a < n_; ++a) {
      for (int b = a - 1; b >= 0; --b) {
        if (std::equal(inst.row(a).begin(), inst.row(a).end(), inst.row(b).begin())) {
          agent_twin_[a] = b;
          break;
        }
      }
    }
    required_.assign(n_, 0);
    owner_.assign(m_, -1);
    bundles_.assign(n_, {});
    w_.assign(static_cast<std::size_t>(n_) * n_, 0);
  }

  // True and fills the witness if an HEF-k allocation exists.
  bool search(int k) {
    k_ = k;
    proportional_.assign(n_, 0);
    for (int i = 0; i < n_; ++i) {
      const auto& all = prefix(0, i);
      const Value top = all[std::min<std::size_t>(k, all.size() - 1)];
      const Value rest = all.back() - top;
      proportional_[i] = (rest + n_ - 1) / n_;
    }
    return descend(0);
  }

  std::int64_t nodes() const { return nodes_; }
  const std::vector<int>& witness_owner() const { return witness_owner_; }
  const std::vector<int>& witness_hidden() const { return witness_hidden_; }

 private:
  const std::vector<Value>& prefix(int depth, int agent) const {
    return suffix_prefix_[static_cast<std::size_t>(depth) * n_ + agent];
  }
  Value& w(int i, int h) { return w_[static_cast<std::size_t>(i) * n_ + h]; }
  Value w(int i, int h) const { return w_[static_cast<std::size_t>(i) * n_ + h]; }

  // Fewest leading entries of the descending `sorted` whose sum reaches need.
  static int cover_count(const std::vector<Value>& sorted, Value need) {
    Value acc = 0;
    int c = 0;
    for (Value v : sorted) {
      if (acc >= need) break;
      acc += v;
      ++c;
    }
    return acc >= need ? c : std::numeric_limits<int>::max() / 4;
  }

  bool prune(int depth) {
    const int remaining = m_ - depth;
    int lower = 0;
    int supply = 0;
    std::vector<Value> vals;
    for (int i = 0; i < n_; ++i) required_[i] = proportional_[i];
    for (int h = 0; h < n_; ++h) {
      int bundle_need = 0;
      for (int i = 0; i < n_; ++i) {
        if (i == h || bundles_[h].empty()) continue;
        vals.clear();
        for (int g : bundles_[h]) vals.push_back(inst_.value(i, g));
        std::sort(vals.rbegin(), vals.rend());
        const Value gap = w(i, h) - w(i, i) - prefix(depth, i).back();
        if (gap > 0) bundle_need = std::max(bundle_need, cover_count(vals, gap));
        Value top = 0;
        for (int t = 0; t < k_ && t < static_cast<int>(vals.size()); ++t) top += vals[t];
        required_[i] = std::max(required_[i], w(i, h) - top);
      }
      lower += bundle_need;
      if (lower > k_) return true;
    }
    for (int i = 0; i < n_; ++i) {
      const Value need = required_[i] - w(i, i);
      if (need <= 0) continue;
      const auto& pre = prefix(depth, i);
      auto it = std::lower_bound(pre.begin(), pre.end(), need);
      if (it == pre.end()) return true;
      supply += static_cast<int>(it - pre.begin());
      if (supply > remaining) return true;
    }
    return false;
  }

  bool leaf() {
    int left = k_;
    std::vector<int> hidden;
    std::vector<detail::Demand> demands;
    std::vector<int> candidates;
    for (int h = 0; h < n_; ++h) {
      demands.clear();
      for (int i = 0; i < n_; ++i) {
        if (i != h && w(i, h) > w(i, i)) demands.push_back({i, w(i, h) - w(i, i)});
      }
      if (demands.empty()) continue;
      candidates.clear();
      for (int g : bundles_[h]) {
        for (const auto& d : demands) {
          if (inst_.value(d.agent, g) > 0) {
            candidates.push_back(g);
            break;
          }
        }
      }
      std::sort(candidates.begin(), candidates.end());
      auto cover = detail::min_bundle_cover(inst_, candidates, demands, left, nodes_);
      if (!cover) return false;
      left -= static_cast<int>(cover->size());
      hidden.insert(hidden.end(), cover->begin(), cover->end());
    }
    witness_owner_ = owner_;
    witness_hidden_ = std::move(hidden);
    return true;
  }

  void place(int g, int a, int sign) {
    for (int i = 0; i < n_; ++i) w(i, a) += sign * inst_.value(i, g);
  }

  bool descend(int depth) {
    if (++nodes_ > budget_) {
      throw CapacityError("optimal kappa search exceeded its node budget", k_);
    }
    if (prune(depth)) return false;
    if (depth == m_) return leaf();
    const int g = depth;
    const int floor = good_twin_[g] >= 0 ? owner_[good_twin_[g]] : 0;
    for (int a = floor; a < n_; ++a) {
      if (bundles_[a].empty() && agent_twin_[a] >= 0 &&
          bundles_[agent_twin_[a]].empty()) {
        continue;
      }
      owner_[g] = a;
      bundles_[a].push_back(g);
      place(g, a, 1);
      const bool found = descend(depth + 1);
      place(g, a, -1);
      bundles_[a].pop_back();
      owner_[g] = -1;
      if (found) return true;
    }
    return false;
  }

  const Instance& inst_;
  int n_;
  int m_;
  std::int64_t budget_;
  std::int64_t nodes_ = 0;
  int k_ = 0;

  std::vector<std::vector<Value>> suffix_prefix_;
  std::vector<int> good_twin_;
  std::vector<int> agent_twin_;
  std::vector<Value> proportional_;
  std::vector<Value> required_;

  std::vector<int> owner_;
  std::vector<std::vector<int>> bundles_;
  std::vector<Value> w_;

  std::vector<int> witness_owner_;
  std::vector<int> witness_hidden_;
};

}  // namespace

std::optional<OptimalResult> optimal_kappa(const Instance& inst,
                                           const OptimalOptions& options) {
  // Cheap EF1 algorithms give an upper bound and a fallback witness.
  OptimalResult best;
  best.witness = round_robin(inst);
  best.kappa = kappa(inst, best.witness);
  {
    Allocation alt = envy_graph(inst);
    const int k_alt = kappa(inst, alt);
    if (k_alt < best.kappa) {
      best.kappa = k_alt;
      best.witness = std::move(alt);
    }
  }
  const int limit = options.max_k ? std::min(*options.max_k, best.kappa) : best.kappa;

  KappaSearch search(inst, options.node_budget);
  for (int k = 0; k <= limit; ++k) {
    if (k == best.kappa) {
      best.hidden = exact_min_hide(ResidualEnvyOracle(inst, best.witness))->hidden;
      best.nodes = search.nodes();
      return best;
    }
    if (search.search(k)) {
      OptimalResult out;
      out.kappa = k;
      out.witness = Allocation::from_owners(search.witness_owner(), inst.num_agents());
      out.hidden = HiddenSet(search.witness_hidden());
      out.nodes = search.nodes();
      return out;
    }
  }
  return std::nullopt;
}

}  // namespace hefk
