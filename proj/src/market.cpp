// EF1 + fPO local search in the Fisher market of an instance.
//
// Every agent owns only maximum bang-per-buck (MBB) goods at all times, and
// the loop runs until the least spender is price-EF1 towards everybody, with
// the most expensive good of each bundle as the removed good. Together these
// give EF1 and fractional Pareto optimality.
//
// Agents valuing everything at zero and goods valued by nobody stay outside
// the market. A hierarchy whose agents value no outside good while the least
// spending is zero can never be fixed by price rises; its agents hold at most
// one good each and value nothing outside, so it is settled: its agents stop
// acting as least spenders while their goods stay in the market.

#include <algorithm>
#include <limits>
#include <optional>
#include <stdexcept>

#include "hefk/algorithms.hpp"

namespace hefk {

bool mbb_consistent(const Instance& inst, const MarketState& state) {
  const int n = inst.num_agents();
  const int m = inst.num_goods();
  for (int j = 0; j < m; ++j) {
    if (state.owner[j] >= 0 && state.prices[j] <= 0) return false;
  }
  for (int i = 0; i < n; ++i) {
    if (!state.active[i]) continue;
    std::optional<Rational> best;
    for (int j = 0; j < m; ++j) {
      if (state.owner[j] < 0) continue;
      const Rational r = Rational(inst.value(i, j)) / state.prices[j];
      if (!best || r > *best) best = r;
    }
    if (!best || *best != state.mbb_ratio[i]) return false;
    for (int j = 0; j < m; ++j) {
      if (state.owner[j] != i) continue;
      if (Rational(inst.value(i, j)) / state.prices[j] != *best) return false;
    }
  }
  return true;
}

namespace {

class Market {
 public:
  Market(const Instance& inst, MarketTrace* trace,
         const std::function<void(const MarketState&)>& observer)
      : inst_(inst),
        n_(inst.num_agents()),
        m_(inst.num_goods()),
        trace_(trace),
        observer_(observer) {
    state_.prices.assign(m_, Rational(0));
    state_.owner.assign(m_, -1);
    state_.mbb_ratio.assign(n_, Rational(0));
    state_.active.assign(n_, false);
    settled_.assign(n_, false);
    for (int i = 0; i < n_; ++i) state_.active[i] = inst.total_value(i) > 0;
    for (int j = 0; j < m_; ++j) {
      int best = -1;
      for (int i = 0; i < n_; ++i) {
        if (inst.value(i, j) > 0 && (best < 0 || inst.value(i, j) > inst.value(best, j))) {
          best = i;
        }
      }
      if (best < 0) continue;
      state_.owner[j] = best;
      state_.prices[j] = Rational(inst.value(best, j));
    }
    for (int i = 0; i < n_; ++i) {
      if (state_.active[i]) state_.mbb_ratio[i] = best_ratio(i);
    }
    spending_.assign(n_, Rational(0));
    for (int j = 0; j < m_; ++j) {
      if (state_.owner[j] >= 0) spending_[state_.owner[j]] += state_.prices[j];
    }
    const Value vmax = inst.max_value();
    cap_ = 10LL * std::max(n_, 1) * std::max(m_, 1) * std::max<Value>(vmax, 1) *
           std::max<Value>(vmax, 1);
    check();
  }

  Allocation run() {
    std::int64_t steps = 0;
    while (step()) {
      if (++steps > cap_) {
        throw CapacityError("market local search exceeded its iteration cap");
      }
    }
    int sink = 0;
    for (int i = 0; i < n_; ++i) {
      if (state_.active[i]) {
        sink = i;
        break;
      }
    }
    std::vector<int> owner = state_.owner;
    for (int j = 0; j < m_; ++j) {
      if (owner[j] < 0) owner[j] = sink;
    }
    if (n_ == 0) return Allocation({}, m_);
    return Allocation::from_owners(owner, n_);
  }

 private:
  Rational best_ratio(int i) const {
    Rational best(0);
    for (int j = 0; j < m_; ++j) {
      if (state_.owner[j] < 0) continue;
      const Rational r = Rational(inst_.value(i, j)) / state_.prices[j];
      if (r > best) best = r;
    }
    return best;
  }

  bool is_mbb(int i, int j) const {
    return inst_.value(i, j) > 0 &&
           Rational(inst_.value(i, j)) / state_.prices[j] == state_.mbb_ratio[i];
  }

  void check() {
    if (!mbb_consistent(inst_, state_)) {
      throw std::logic_error("market lost MBB consistency");
    }
    if (observer_) observer_(state_);
  }

  bool eligible(int i) const { return state_.active[i] && !settled_[i]; }

  // One transfer, price rise or settlement; false once price-EF1 holds.
  bool step() {
    std::optional<Rational> min_spend;
    for (int i = 0; i < n_; ++i) {
      if (eligible(i) && (!min_spend || spending_[i] < *min_spend)) {
        min_spend = spending_[i];
      }
    }
    if (!min_spend) return false;
    const Rational least = *min_spend;

    std::vector<int> level(n_, -1);
    std::vector<std::vector<int>> layers(1);
    for (int i = 0; i < n_; ++i) {
      if (eligible(i) && spending_[i] == least) {
        level[i] = 0;
        layers[0].push_back(i);
      }
    }
    while (!layers.back().empty()) {
      const auto& frontier = layers.back();
      std::vector<int> next;
      for (int a : frontier) {
        for (int j = 0; j < m_; ++j) {
          const int h = state_.owner[j];
          if (h < 0 || level[h] != -1 || !is_mbb(a, j)) continue;
          level[h] = static_cast<int>(layers.size());
          next.push_back(h);
        }
      }
      std::sort(next.begin(), next.end());
      for (int h : next) {
        for (int j = 0; j < m_; ++j) {
          if (state_.owner[j] != h || spending_[h] - state_.prices[j] <= least) continue;
          for (int a : frontier) {
            if (!is_mbb(a, j)) continue;
            transfer(j, h, a);
            return true;
          }
        }
      }
      layers.push_back(std::move(next));
    }

    bool violated = false;
    for (int h = 0; h < n_ && !violated; ++h) {
      std::optional<Rational> top;
      for (int j = 0; j < m_; ++j) {
        if (state_.owner[j] == h && (!top || state_.prices[j] > *top)) {
          top = state_.prices[j];
        }
      }
      violated = top && least < spending_[h] - *top;
    }
    if (!violated) return false;

    std::optional<Rational> beta;
    for (int a = 0; a < n_; ++a) {
      if (level[a] < 0) continue;
      for (int j = 0; j < m_; ++j) {
        const int h = state_.owner[j];
        if (h < 0 || level[h] >= 0 || inst_.value(a, j) == 0) continue;
        const Rational b = state_.mbb_ratio[a] * state_.prices[j] / inst_.value(a, j);
        if (!beta || b < *beta) beta = b;
      }
    }
    if (least > 0) {
      for (int k = 0; k < n_; ++k) {
        if (level[k] >= 0 || !eligible(k)) continue;
        const Rational b = spending_[k] / least;
        if (!beta || b < *beta) beta = b;
      }
    }
    if (!beta) {
      for (int a = 0; a < n_; ++a) {
        if (level[a] >= 0) settled_[a] = true;
      }
      if (trace_) ++trace_->settled_components;
      check();
      return true;
    }
    for (int j = 0; j < m_; ++j) {
      const int h = state_.owner[j];
      if (h >= 0 && level[h] >= 0) state_.prices[j] *= *beta;
    }
    for (int a = 0; a < n_; ++a) {
      if (level[a] >= 0) spending_[a] *= *beta;
      if (state_.active[a]) state_.mbb_ratio[a] = best_ratio(a);
    }
    if (trace_) ++trace_->price_rises;
    check();
    return true;
  }

  void transfer(int good, int from, int to) {
    state_.owner[good] = to;
    spending_[from] -= state_.prices[good];
    spending_[to] += state_.prices[good];
    if (trace_) ++trace_->transfers;
    check();
  }

  const Instance& inst_;
  int n_;
  int m_;
  MarketTrace* trace_;
  const std::function<void(const MarketState&)>& observer_;
  MarketState state_;
  std::vector<Rational> spending_;
  std::vector<bool> settled_;
  std::int64_t cap_ = 0;
};

}  // namespace

Allocation ef1_po_market(const Instance& inst, const SolverConfig& config,
                         MarketTrace* trace,
                         const std::function<void(const MarketState&)>& observer) {
  (void)config;
  Market market(inst, trace, observer);
  return market.run();
}

}  // namespace hefk
