#pragma once

// Brute-force reference implementations used only by the tests. They work on
// plain owner vectors, follow the textbook definitions literally and share no
// code with the library beyond the Instance accessors.

#include <algorithm>
#include <cstdint>
#include <functional>
#include <numeric>
#include <optional>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "hefk/core.hpp"
#include "hefk/rng.hpp"

namespace oracle {

using hefk::Instance;
using hefk::Value;
using Owners = std::vector<int>;
using Mask = std::vector<char>;

inline Value value_of(const Instance& inst, const Owners& owner, int viewer, int holder,
                      const Mask* hidden = nullptr) {
  Value s = 0;
  for (int g = 0; g < inst.num_goods(); ++g) {
    if (owner[g] != holder) continue;
    if (hidden && viewer != holder && (*hidden)[g]) continue;
    s += inst.value(viewer, g);
  }
  return s;
}

// f(S): total positive envy with S hidden from non-owners.
inline Value residual(const Instance& inst, const Owners& owner, const Mask& hidden) {
  Value total = 0;
  for (int i = 0; i < inst.num_agents(); ++i) {
    const Value own = value_of(inst, owner, i, i);
    for (int h = 0; h < inst.num_agents(); ++h) {
      if (h == i) continue;
      total += std::max<Value>(0, value_of(inst, owner, i, h, &hidden) - own);
    }
  }
  return total;
}

inline bool is_ef(const Instance& inst, const Owners& owner) {
  return residual(inst, owner, Mask(inst.num_goods(), 0)) == 0;
}

inline bool is_ef1(const Instance& inst, const Owners& owner) {
  const int n = inst.num_agents();
  for (int i = 0; i < n; ++i) {
    const Value own = value_of(inst, owner, i, i);
    for (int h = 0; h < n; ++h) {
      if (h == i) continue;
      const Value other = value_of(inst, owner, i, h);
      if (other <= own) continue;
      bool ok = false;
      for (int g = 0; g < inst.num_goods() && !ok; ++g) {
        ok = owner[g] == h && own >= other - inst.value(i, g);
      }
      if (!ok) return false;
    }
  }
  return true;
}

inline bool is_sef1(const Instance& inst, const Owners& owner) {
  const int n = inst.num_agents();
  for (int h = 0; h < n; ++h) {
    bool nonempty = false;
    bool found = false;
    for (int g = 0; g < inst.num_goods() && !found; ++g) {
      if (owner[g] != h) continue;
      nonempty = true;
      bool all = true;
      for (int i = 0; i < n && all; ++i) {
        all = value_of(inst, owner, i, i) >= value_of(inst, owner, i, h) -
                                                 (i == h ? 0 : inst.value(i, g));
      }
      found = all;
    }
    if (nonempty && !found) return false;
  }
  return true;
}

inline bool has_unenvied_agent(const Instance& inst, const Owners& owner) {
  const int n = inst.num_agents();
  for (int h = 0; h < n; ++h) {
    bool envied = false;
    for (int i = 0; i < n && !envied; ++i) {
      envied = i != h && value_of(inst, owner, i, h) > value_of(inst, owner, i, i);
    }
    if (!envied) return true;
  }
  return false;
}

// Calls fn(owner) for every assignment of m goods to n agents.
inline void for_each_allocation(int n, int m, const std::function<bool(const Owners&)>& fn) {
  Owners owner(m, 0);
  for (;;) {
    if (!fn(owner)) return;
    int g = m - 1;
    while (g >= 0 && owner[g] == n - 1) owner[g--] = 0;
    if (g < 0) return;
    ++owner[g];
  }
}

// Calls fn(subset) for every k-subset of [0, m) in lexicographic order.
inline bool for_each_subset(int m, int k, const std::function<bool(const std::vector<int>&)>& fn) {
  if (k > m) return true;
  std::vector<int> idx(k);
  std::iota(idx.begin(), idx.end(), 0);
  for (;;) {
    if (!fn(idx)) return false;
    int t = k - 1;
    while (t >= 0 && idx[t] == m - k + t) --t;
    if (t < 0) return true;
    ++idx[t];
    for (int u = t + 1; u < k; ++u) idx[u] = idx[u - 1] + 1;
  }
}

// Lexicographically first smallest hidden set making the allocation envy-free.
inline std::vector<int> min_hidden_set(const Instance& inst, const Owners& owner,
                                       int max_size = 1 << 20) {
  const int m = inst.num_goods();
  std::vector<int> best;
  for (int k = 0; k <= std::min(m, max_size); ++k) {
    bool found = false;
    for_each_subset(m, k, [&](const std::vector<int>& s) {
      Mask mask(m, 0);
      for (int g : s) mask[g] = 1;
      if (residual(inst, owner, mask) == 0) {
        best = s;
        found = true;
        return false;
      }
      return true;
    });
    if (found) return best;
  }
  return std::vector<int>(m + 1, -1);  // sentinel: larger than any real set
}

inline int kappa(const Instance& inst, const Owners& owner) {
  return static_cast<int>(min_hidden_set(inst, owner).size());
}

// Some hidden set with at most one good per bundle and at most k goods.
inline bool uhef(const Instance& inst, const Owners& owner, int k) {
  const int n = inst.num_agents();
  const int m = inst.num_goods();
  std::vector<std::vector<int>> bundles(n);
  for (int g = 0; g < m; ++g) bundles[owner[g]].push_back(g);
  std::vector<int> pick(n, -1);  // index into bundle, -1 for none
  std::function<bool(int, int)> rec = [&](int agent, int used) {
    if (agent == n) {
      Mask mask(m, 0);
      for (int a = 0; a < n; ++a) {
        if (pick[a] >= 0) mask[bundles[a][pick[a]]] = 1;
      }
      return residual(inst, owner, mask) == 0;
    }
    pick[agent] = -1;
    if (rec(agent + 1, used)) return true;
    if (used == k) return false;
    for (std::size_t t = 0; t < bundles[agent].size(); ++t) {
      pick[agent] = static_cast<int>(t);
      if (rec(agent + 1, used + 1)) return true;
    }
    pick[agent] = -1;
    return false;
  };
  return rec(0, 0);
}

inline std::vector<Value> utilities(const Instance& inst, const Owners& owner) {
  std::vector<Value> u(inst.num_agents(), 0);
  for (int g = 0; g < inst.num_goods(); ++g) u[owner[g]] += inst.value(owner[g], g);
  return u;
}

// Visits all n^m allocations, keeping utilities up to date along the way.
inline bool is_pareto_optimal(const Instance& inst, const Owners& owner) {
  const int n = inst.num_agents();
  const int m = inst.num_goods();
  const auto base = utilities(inst, owner);
  std::vector<Value> u(n, 0);
  std::function<bool(int)> dominated = [&](int g) {
    if (g == m) {
      bool gt = false;
      for (int i = 0; i < n; ++i) {
        if (u[i] < base[i]) return false;
        gt = gt || u[i] > base[i];
      }
      return gt;
    }
    for (int a = 0; a < n; ++a) {
      u[a] += inst.value(a, g);
      const bool d = dominated(g + 1);
      u[a] -= inst.value(a, g);
      if (d) return true;
    }
    return false;
  };
  return !dominated(0);
}

// Nash optimum: most positive agents, then largest product, then the
// lexicographically smallest owner vector.
inline Owners nash_optimum(const Instance& inst) {
  using boost::multiprecision::cpp_int;
  Owners best;
  int best_count = -1;
  cpp_int best_product = 0;
  for_each_allocation(inst.num_agents(), inst.num_goods(), [&](const Owners& owner) {
    const auto u = utilities(inst, owner);
    int count = 0;
    cpp_int product = 1;
    for (Value x : u) {
      if (x > 0) {
        ++count;
        product *= x;
      }
    }
    if (count > best_count || (count == best_count && product > best_product)) {
      best = owner;
      best_count = count;
      best_product = product;
    }
    return true;
  });
  return best;
}

inline int kappa_opt(const Instance& inst) {
  int best = inst.num_goods();
  for_each_allocation(inst.num_agents(), inst.num_goods(), [&](const Owners& owner) {
    best = std::min(best, static_cast<int>(min_hidden_set(inst, owner, best).size()));
    return best > 0;
  });
  return best;
}

inline bool has_ef_allocation(const Instance& inst) {
  bool found = false;
  for_each_allocation(inst.num_agents(), inst.num_goods(), [&](const Owners& owner) {
    found = is_ef(inst, owner);
    return !found;
  });
  return found;
}

// Exhaustive envy-free allocation search for larger gadgets. Goods valued by
// the most agents are branched first. Pruning:
//  - i's envy towards h that i's remaining goods cannot cover,
//  - total outstanding need (envy and proportional share) exceeding what the
//    remaining goods can supply,
//  - identical agents are opened in index order and identical goods that are
//    adjacent in branching order take non-decreasing owners (lex-leader).
inline std::optional<Owners> ef_allocation(const Instance& inst) {
  const int n = inst.num_agents();
  const int m = inst.num_goods();
  std::vector<int> order(m);
  std::iota(order.begin(), order.end(), 0);
  auto valuers = [&](int g) {
    int c = 0;
    for (int i = 0; i < n; ++i) c += inst.value(i, g) > 0;
    return c;
  };
  auto column = [&](int g) {
    std::vector<Value> c(n);
    for (int i = 0; i < n; ++i) c[i] = inst.value(i, g);
    return c;
  };
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
    const int va = valuers(a);
    const int vb = valuers(b);
    if (va != vb) return va > vb;
    return column(a) > column(b);
  });
  std::vector<char> same_as_prev(m, 0);
  for (int t = 1; t < m; ++t) same_as_prev[t] = column(order[t]) == column(order[t - 1]);
  std::vector<int> agent_class(n);
  for (int i = 0; i < n; ++i) {
    agent_class[i] = i;
    for (int j = 0; j < i; ++j) {
      bool same = true;
      for (int g = 0; g < m && same; ++g) same = inst.value(i, g) == inst.value(j, g);
      if (same) {
        agent_class[i] = agent_class[j];
        break;
      }
    }
  }

  std::vector<Value> total(n, 0);
  for (int i = 0; i < n; ++i) {
    for (int g = 0; g < m; ++g) total[i] += inst.value(i, g);
  }
  std::vector<Value> view(static_cast<std::size_t>(n) * n, 0);  // v_i(A_h)
  std::vector<Value> rem = total;
  std::vector<Value> suffix_supply(m + 1, 0);
  for (int t = m - 1; t >= 0; --t) {
    Value best = 0;
    for (int i = 0; i < n; ++i) best = std::max(best, inst.value(i, order[t]));
    suffix_supply[t] = suffix_supply[t + 1] + best;
  }
  std::vector<int> count(n, 0);
  Owners owner(m, -1);
  auto at = [&](int i, int h) -> Value& { return view[static_cast<std::size_t>(i) * n + h]; };

  auto feasible = [&](int t) {
    Value need_total = 0;
    for (int i = 0; i < n; ++i) {
      const Value own = at(i, i);
      Value need = std::max<Value>(0, (total[i] + n - 1) / n - own);
      for (int h = 0; h < n; ++h) need = std::max(need, at(i, h) - own);
      if (need > rem[i]) return false;
      need_total += need;
    }
    return need_total <= suffix_supply[t];
  };

  std::function<bool(int)> rec = [&](int t) {
    if (!feasible(t)) return false;
    if (t == m) return true;
    const int g = order[t];
    const int lo = same_as_prev[t] ? owner[order[t - 1]] : 0;
    for (int a = lo; a < n; ++a) {
      if (count[a] == 0) {
        bool earlier_empty = false;
        for (int b = 0; b < a && !earlier_empty; ++b) {
          earlier_empty = agent_class[b] == agent_class[a] && count[b] == 0;
        }
        if (earlier_empty) continue;
      }
      owner[g] = a;
      ++count[a];
      for (int i = 0; i < n; ++i) {
        at(i, a) += inst.value(i, g);
        rem[i] -= inst.value(i, g);
      }
      if (rec(t + 1)) return true;
      for (int i = 0; i < n; ++i) {
        at(i, a) -= inst.value(i, g);
        rem[i] += inst.value(i, g);
      }
      --count[a];
      owner[g] = -1;
    }
    return false;
  };
  if (!rec(0)) return std::nullopt;
  if (!is_ef(inst, owner)) throw std::logic_error("ef_allocation returned a non-EF allocation");
  return owner;
}

// ---- source problems of the reductions ----

inline std::optional<std::vector<int>> partition(const std::vector<Value>& values) {
  const int n = static_cast<int>(values.size());
  const Value sum = std::accumulate(values.begin(), values.end(), Value{0});
  if (sum % 2 != 0) return std::nullopt;
  for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
    Value s = 0;
    std::vector<int> y;
    for (int i = 0; i < n; ++i) {
      if (mask >> i & 1) {
        s += values[i];
        y.push_back(i);
      }
    }
    if (2 * s == sum) return y;
  }
  return std::nullopt;
}

inline std::optional<std::vector<int>> hitting_set(int p,
                                                  const std::vector<std::vector<int>>& families,
                                                  int k) {
  for (std::uint32_t mask = 0; mask < (1u << p); ++mask) {
    if (__builtin_popcount(mask) > k) continue;
    bool hits = true;
    for (const auto& f : families) {
      bool any = false;
      for (int x : f) any = any || (mask >> x & 1);
      hits = hits && any;
    }
    if (hits) {
      std::vector<int> y;
      for (int x = 0; x < p; ++x) {
        if (mask >> x & 1) y.push_back(x);
      }
      return y;
    }
  }
  return std::nullopt;
}

inline std::optional<std::vector<int>> equitable_coloring(
    int n, const std::vector<std::pair<int, int>>& edges, int colors) {
  if (n % colors != 0) return std::nullopt;
  const int size = n / colors;
  std::vector<std::vector<int>> adj(n);
  for (auto [u, v] : edges) {
    adj[u].push_back(v);
    adj[v].push_back(u);
  }
  std::vector<int> color(n, -1);
  std::vector<int> used(colors, 0);
  std::function<bool(int)> rec = [&](int v) {
    if (v == n) return true;
    for (int c = 0; c < colors; ++c) {
      if (used[c] == size) continue;
      bool clash = false;
      for (int u : adj[v]) clash = clash || color[u] == c;
      if (clash) continue;
      color[v] = c;
      ++used[c];
      if (rec(v + 1)) return true;
      --used[c];
      color[v] = -1;
    }
    return false;
  };
  if (rec(0)) return color;
  return std::nullopt;
}

// ---- random inputs ----

enum class Dist { kBer05, kBer07, kUniform10 };

inline Instance random_instance(hefk::Rng& rng, int n, int m, Dist dist) {
  std::vector<std::vector<Value>> rows(n, std::vector<Value>(m, 0));
  for (auto& row : rows) {
    for (auto& v : row) {
      switch (dist) {
        case Dist::kBer05: v = rng.bernoulli(0.5); break;
        case Dist::kBer07: v = rng.bernoulli(0.7); break;
        case Dist::kUniform10: v = static_cast<Value>(rng.below(11)); break;
      }
    }
  }
  return Instance(n, m, rows);
}

inline Owners random_owners(hefk::Rng& rng, int n, int m) {
  Owners owner(m);
  for (auto& o : owner) o = static_cast<int>(rng.below(n));
  return owner;
}

inline int uniform_int(hefk::Rng& rng, int lo, int hi) {
  return lo + static_cast<int>(rng.below(static_cast<std::uint64_t>(hi - lo + 1)));
}

}  // namespace oracle
