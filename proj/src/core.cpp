#include "hefk/core.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace hefk {

Instance::Instance(int num_agents, int num_goods,
                   const std::vector<std::vector<Value>>& valuations)
    : n_(num_agents), m_(num_goods) {
  if (num_agents <= 0) throw StructuralError("instance needs at least one agent");
  if (num_goods < 0) throw StructuralError("negative number of goods");
  if (static_cast<int>(valuations.size()) != num_agents) {
    throw StructuralError("expected " + std::to_string(num_agents) +
                          " valuation rows, got " +
                          std::to_string(valuations.size()));
  }
  v_.reserve(static_cast<std::size_t>(n_) * m_);
  for (int i = 0; i < n_; ++i) {
    const auto& row = valuations[i];
    if (static_cast<int>(row.size()) != num_goods) {
      throw StructuralError("row " + std::to_string(i) + " has " +
                            std::to_string(row.size()) + " entries, expected " +
                            std::to_string(num_goods));
    }
    for (Value x : row) {
      if (x < 0) throw StructuralError("valuations must be non-negative");
      v_.push_back(x);
    }
  }
}

Instance Instance::from_rows(const std::vector<std::vector<Value>>& rows) {
  if (rows.empty()) throw StructuralError("instance needs at least one agent");
  return Instance(static_cast<int>(rows.size()),
                  static_cast<int>(rows.front().size()), rows);
}

Value Instance::value_at(int agent, int good) const {
  if (agent < 0 || agent >= n_) {
    throw IndexError("agent index " + std::to_string(agent) + " out of range");
  }
  if (good < 0 || good >= m_) {
    throw IndexError("good index " + std::to_string(good) + " out of range");
  }
  return value(agent, good);
}

std::vector<std::vector<Value>> Instance::rows() const {
  std::vector<std::vector<Value>> out;
  out.reserve(n_);
  for (int i = 0; i < n_; ++i) {
    auto r = row(i);
    out.emplace_back(r.begin(), r.end());
  }
  return out;
}

Value Instance::max_value() const {
  return v_.empty() ? 0 : *std::max_element(v_.begin(), v_.end());
}

Value Instance::total_value(int agent) const {
  Value s = 0;
  for (Value x : row(agent)) s += x;
  return s;
}

bool Instance::is_binary() const {
  return std::all_of(v_.begin(), v_.end(), [](Value x) { return x <= 1; });
}

bool Instance::is_identical() const {
  for (int i = 1; i < n_; ++i) {
    if (!std::equal(row(i).begin(), row(i).end(), row(0).begin())) return false;
  }
  return true;
}

Allocation::Allocation(std::vector<std::vector<int>> bundles, int num_goods)
    : bundles_(std::move(bundles)), owner_(num_goods, -1) {
  if (bundles_.empty()) throw StructuralError("allocation needs at least one bundle");
  for (int i = 0; i < static_cast<int>(bundles_.size()); ++i) {
    auto& b = bundles_[i];
    std::sort(b.begin(), b.end());
    for (int g : b) {
      if (g < 0 || g >= num_goods) {
        throw StructuralError("good " + std::to_string(g) +
                              " is not a good of the instance");
      }
      if (owner_[g] != -1) {
        throw StructuralError("good " + std::to_string(g) +
                              " appears in more than one bundle");
      }
      owner_[g] = i;
    }
  }
  for (int g = 0; g < num_goods; ++g) {
    if (owner_[g] == -1) {
      throw StructuralError("good " + std::to_string(g) + " is unallocated");
    }
  }
}

Allocation Allocation::from_owners(std::span<const int> owner, int num_agents) {
  if (num_agents <= 0) throw StructuralError("allocation needs at least one bundle");
  std::vector<std::vector<int>> bundles(num_agents);
  for (int g = 0; g < static_cast<int>(owner.size()); ++g) {
    if (owner[g] < 0 || owner[g] >= num_agents) {
      throw StructuralError("owner of good " + std::to_string(g) + " out of range");
    }
    bundles[owner[g]].push_back(g);
  }
  return Allocation(std::move(bundles), static_cast<int>(owner.size()));
}

HiddenSet::HiddenSet(std::vector<int> goods) : goods_(std::move(goods)) {
  std::sort(goods_.begin(), goods_.end());
  goods_.erase(std::unique(goods_.begin(), goods_.end()), goods_.end());
  if (!goods_.empty() && goods_.front() < 0) {
    throw IndexError("negative good index in hidden set");
  }
}

bool HiddenSet::contains(int good) const {
  return std::binary_search(goods_.begin(), goods_.end(), good);
}

bool HiddenSet::is_uniform(const Allocation& alloc) const {
  std::vector<int> count(alloc.num_agents(), 0);
  for (int g : goods_) {
    if (++count[alloc.owner(g)] > 1) return false;
  }
  return true;
}

void check_compatible(const Instance& inst, const Allocation& alloc) {
  if (alloc.num_agents() != inst.num_agents()) {
    throw StructuralError("allocation has " + std::to_string(alloc.num_agents()) +
                          " bundles but the instance has " +
                          std::to_string(inst.num_agents()) + " agents");
  }
  if (alloc.num_goods() != inst.num_goods()) {
    throw StructuralError("allocation covers " + std::to_string(alloc.num_goods()) +
                          " goods but the instance has " +
                          std::to_string(inst.num_goods()));
  }
}

Value bundle_value(const Instance& inst, int agent, std::span<const int> goods) {
  if (agent < 0 || agent >= inst.num_agents()) {
    throw IndexError("agent index " + std::to_string(agent) + " out of range");
  }
  Value s = 0;
  for (int g : goods) s += inst.value_at(agent, g);
  return s;
}

namespace {

// v[i][h] = v_i(A_h)
std::vector<Value> bundle_value_matrix(const Instance& inst,
                                       const Allocation& alloc) {
  const int n = inst.num_agents();
  std::vector<Value> w(static_cast<std::size_t>(n) * n, 0);
  for (int g = 0; g < inst.num_goods(); ++g) {
    const int h = alloc.owner(g);
    for (int i = 0; i < n; ++i) w[i * n + h] += inst.value(i, g);
  }
  return w;
}

}  // namespace

std::vector<Value> utilities(const Instance& inst, const Allocation& alloc) {
  check_compatible(inst, alloc);
  std::vector<Value> u(inst.num_agents(), 0);
  for (int g = 0; g < inst.num_goods(); ++g) {
    u[alloc.owner(g)] += inst.value(alloc.owner(g), g);
  }
  return u;
}

EnvyReport envy_report(const Instance& inst, const Allocation& alloc,
                       const HiddenSet& hidden) {
  check_compatible(inst, alloc);
  const int n = inst.num_agents();
  for (int g : hidden.goods()) {
    if (g >= inst.num_goods()) {
      throw IndexError("hidden good " + std::to_string(g) + " out of range");
    }
  }
  auto w = bundle_value_matrix(inst, alloc);
  std::vector<Value> own(n);
  for (int i = 0; i < n; ++i) own[i] = w[i * n + i];
  for (int g : hidden.goods()) {
    const int h = alloc.owner(g);
    for (int i = 0; i < n; ++i) w[i * n + h] -= inst.value(i, g);
  }

  EnvyReport report;
  report.num_agents = n;
  report.pairwise.assign(static_cast<std::size_t>(n) * n, 0);
  for (int i = 0; i < n; ++i) {
    for (int h = 0; h < n; ++h) {
      if (h == i) continue;
      const Value e = std::max<Value>(0, w[i * n + h] - own[i]);
      report.pairwise[i * n + h] = e;
      report.aggregate += e;
    }
  }
  return report;
}

bool is_hef(const Instance& inst, const Allocation& alloc,
            const HiddenSet& hidden) {
  return envy_report(inst, alloc, hidden).aggregate == 0;
}

bool is_ef(const Instance& inst, const Allocation& alloc) {
  return is_hef(inst, alloc, {});
}

bool is_ef1(const Instance& inst, const Allocation& alloc) {
  check_compatible(inst, alloc);
  const int n = inst.num_agents();
  const auto w = bundle_value_matrix(inst, alloc);
  for (int h = 0; h < n; ++h) {
    const auto& bundle = alloc.bundle(h);
    if (bundle.empty()) continue;
    for (int i = 0; i < n; ++i) {
      if (i == h) continue;
      Value best = 0;
      for (int g : bundle) best = std::max(best, inst.value(i, g));
      if (w[i * n + h] - best > w[i * n + i]) return false;
    }
  }
  return true;
}

namespace {

// True when removing `good` from A_h clears the envy of every other agent.
bool removal_clears_bundle(const Instance& inst, const std::vector<Value>& w,
                           int h, int good) {
  const int n = inst.num_agents();
  for (int i = 0; i < n; ++i) {
    if (i == h) continue;
    if (w[i * n + h] - inst.value(i, good) > w[i * n + i]) return false;
  }
  return true;
}

bool bundle_is_envied(const std::vector<Value>& w, int n, int h) {
  for (int i = 0; i < n; ++i) {
    if (i != h && w[i * n + h] > w[i * n + i]) return true;
  }
  return false;
}

}  // namespace

bool is_sef1(const Instance& inst, const Allocation& alloc) {
  check_compatible(inst, alloc);
  const auto w = bundle_value_matrix(inst, alloc);
  for (int h = 0; h < inst.num_agents(); ++h) {
    const auto& bundle = alloc.bundle(h);
    if (bundle.empty()) continue;
    const bool ok = std::any_of(bundle.begin(), bundle.end(), [&](int g) {
      return removal_clears_bundle(inst, w, h, g);
    });
    if (!ok) return false;
  }
  return true;
}

bool is_uhef(const Instance& inst, const Allocation& alloc, int k) {
  check_compatible(inst, alloc);
  const int n = inst.num_agents();
  const auto w = bundle_value_matrix(inst, alloc);
  int needed = 0;
  for (int h = 0; h < n; ++h) {
    if (!bundle_is_envied(w, n, h)) continue;
    const auto& bundle = alloc.bundle(h);
    const bool ok = std::any_of(bundle.begin(), bundle.end(), [&](int g) {
      return removal_clears_bundle(inst, w, h, g);
    });
    if (!ok || ++needed > k) return false;
  }
  return true;
}

std::vector<int> unenvied_agents(const Instance& inst, const Allocation& alloc) {
  check_compatible(inst, alloc);
  const int n = inst.num_agents();
  const auto w = bundle_value_matrix(inst, alloc);
  std::vector<int> out;
  for (int h = 0; h < n; ++h) {
    if (!bundle_is_envied(w, n, h)) out.push_back(h);
  }
  return out;
}

namespace {

struct DominanceSearch {
  const Instance& inst;
  std::vector<Value> target;
  std::vector<Value> current;
  std::vector<Value> remaining;  // v_i of goods not yet placed

  bool run(int good) {
    const int n = inst.num_agents();
    if (good == inst.num_goods()) {
      for (int i = 0; i < n; ++i) {
        if (current[i] > target[i]) return true;
      }
      return false;
    }
    for (int i = 0; i < n; ++i) remaining[i] -= inst.value(i, good);
    bool found = false;
    for (int a = 0; a < n && !found; ++a) {
      current[a] += inst.value(a, good);
      bool feasible = true;
      for (int i = 0; i < n; ++i) {
        if (current[i] + remaining[i] < target[i]) {
          feasible = false;
          break;
        }
      }
      if (feasible) found = run(good + 1);
      current[a] -= inst.value(a, good);
    }
    for (int i = 0; i < n; ++i) remaining[i] += inst.value(i, good);
    return found;
  }
};

}  // namespace

bool is_pareto_optimal(const Instance& inst, const Allocation& alloc,
                       const ParetoOptions& options) {
  check_compatible(inst, alloc);
  const double states =
      std::pow(static_cast<double>(inst.num_agents()), inst.num_goods());
  if (states > options.max_states) {
    throw CapacityError("Pareto oracle refuses " + std::to_string(states) +
                        " allocations");
  }
  DominanceSearch search{inst, utilities(inst, alloc),
                         std::vector<Value>(inst.num_agents(), 0), {}};
  search.remaining.resize(inst.num_agents());
  for (int i = 0; i < inst.num_agents(); ++i) {
    search.remaining[i] = inst.total_value(i);
  }
  return !search.run(0);
}

}  // namespace hefk
