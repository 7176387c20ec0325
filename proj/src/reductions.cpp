#include "hefk/reductions.hpp"

#include <algorithm>
#include <numeric>
#include <set>

namespace hefk {

namespace {

std::string label(const char* kind, int index) {
  return std::string(kind) + ":" + std::to_string(index);
}

}  // namespace

PartitionGadget partition_gadget(const PartitionInput& input) {
  if (input.values.empty()) throw PreconditionError("partition input is empty");
  if (input.k < 0) throw PreconditionError("k must be non-negative");
  Value sum = 0;
  for (Value x : input.values) {
    if (x <= 0) throw PreconditionError("partition values must be positive");
    sum += x;
  }
  PartitionGadget out{Instance(1, 1, {{0}}), (sum + 1) / 2, {}};
  const int agents = input.k + 3;
  std::vector<Value> row = input.values;
  row.push_back(out.target);
  for (int d = 0; d < input.k; ++d) row.push_back(4 * out.target);
  out.instance = Instance(agents, static_cast<int>(row.size()),
                          std::vector<std::vector<Value>>(agents, row));
  for (int a = 0; a < agents; ++a) out.manifest.agents.push_back(label("agent", a));
  for (std::size_t j = 0; j < input.values.size(); ++j) {
    out.manifest.goods.push_back(label("main", static_cast<int>(j)));
  }
  out.manifest.goods.push_back("target");
  for (int d = 0; d < input.k; ++d) out.manifest.goods.push_back(label("dummy", d));
  return out;
}

std::pair<Allocation, HiddenSet> partition_witness(const PartitionInput& input,
                                                   const std::vector<int>& subset) {
  const int n = static_cast<int>(input.values.size());
  const int agents = input.k + 3;
  std::vector<int> owner(n + 1 + input.k, 1);
  for (int j : subset) {
    if (j < 0 || j >= n) throw IndexError("subset index out of range");
    owner[j] = 0;
  }
  owner[n] = 2;
  std::vector<int> hidden;
  for (int d = 0; d < input.k; ++d) {
    owner[n + 1 + d] = 3 + d;
    hidden.push_back(n + 1 + d);
  }
  return {Allocation::from_owners(owner, agents), HiddenSet(std::move(hidden))};
}

HittingSetGadget hitting_set_gadget(const HittingSetInput& input) {
  const int p = input.universe_size;
  const int q = static_cast<int>(input.families.size());
  if (p <= 0) throw PreconditionError("universe must be non-empty");
  int m = p;
  for (const auto& f : input.families) {
    std::set<int> unique(f.begin(), f.end());
    if (f.empty() || unique.size() != f.size()) {
      throw PreconditionError("families must be non-empty sets");
    }
    for (int x : f) {
      if (x < 0 || x >= p) throw PreconditionError("family element outside the universe");
    }
    m += static_cast<int>(f.size()) - 1;
  }
  std::vector<std::vector<Value>> vals(q + 1, std::vector<Value>(m, 0));
  std::vector<int> owner(m, q);
  Manifest manifest;
  for (int j = 0; j < p; ++j) {
    vals[q][j] = 1;
    manifest.goods.push_back(label("main", j));
  }
  int next = p;
  for (int i = 0; i < q; ++i) {
    for (int x : input.families[i]) vals[i][x] = 1;
    for (std::size_t t = 0; t + 1 < input.families[i].size(); ++t) {
      vals[i][next] = 1;
      owner[next] = i;
      manifest.goods.push_back(label("dummy", i));
      ++next;
    }
    manifest.agents.push_back(label("family", i));
  }
  manifest.agents.push_back("main");
  Instance inst(q + 1, m, vals);
  return {inst, Allocation::from_owners(owner, q + 1), std::move(manifest)};
}

HiddenSet hitting_set_witness(const std::vector<int>& elements) {
  return HiddenSet(elements);
}

std::vector<int> hitting_set_from_hidden(const HittingSetInput& input,
                                         const HiddenSet& hidden) {
  std::vector<int> out;
  for (int g : hidden.goods()) {
    if (g < input.universe_size) out.push_back(g);
  }
  return out;
}

bool is_connected(const Graph& g) {
  if (g.num_vertices <= 1) return true;
  std::vector<std::vector<int>> adj(g.num_vertices);
  for (auto [u, v] : g.edges) {
    adj[u].push_back(v);
    adj[v].push_back(u);
  }
  std::vector<char> seen(g.num_vertices, 0);
  std::vector<int> stack{0};
  seen[0] = 1;
  int count = 1;
  while (!stack.empty()) {
    const int u = stack.back();
    stack.pop_back();
    for (int v : adj[u]) {
      if (!seen[v]) {
        seen[v] = 1;
        ++count;
        stack.push_back(v);
      }
    }
  }
  return count == g.num_vertices;
}

namespace {

void validate(const Graph& g) {
  if (g.num_vertices <= 0) throw PreconditionError("graph has no vertices");
  std::set<std::pair<int, int>> seen;
  for (auto [u, v] : g.edges) {
    if (u < 0 || v < 0 || u >= g.num_vertices || v >= g.num_vertices) {
      throw PreconditionError("edge endpoint out of range");
    }
    if (u == v) throw PreconditionError("self-loops are not allowed");
    if (!seen.insert({std::min(u, v), std::max(u, v)}).second) {
      throw PreconditionError("duplicate edge");
    }
  }
}

class Augmenter {
 public:
  explicit Augmenter(ColoringGadget& out) : out_(out) {}

  int add_vertex() {
    out_.added_vertices.push_back(out_.graph.num_vertices);
    return out_.graph.num_vertices++;
  }
  void add_edge(int u, int v) {
    out_.graph.edges.emplace_back(u, v);
    out_.added_edges.emplace_back(u, v);
  }
  std::vector<int> add_clique(int size) {
    std::vector<int> clique;
    for (int t = 0; t < size; ++t) clique.push_back(add_vertex());
    for (int a = 0; a < size; ++a) {
      for (int b = a + 1; b < size; ++b) add_edge(clique[a], clique[b]);
    }
    return clique;
  }

 private:
  ColoringGadget& out_;
};

}  // namespace

ColoringGadget coloring_gadget(const ColoringInput& input) {
  if (input.colors < 3) throw PreconditionError("at least three colors are required");
  validate(input.graph);
  ColoringGadget out{Instance(1, 1, {{0}}), input.graph, input.colors, false, {}, {}, {}};
  Augmenter aug(out);
  if (!is_connected(out.graph)) {
    const int n = out.graph.num_vertices;
    const int l = out.colors;
    const auto clique = aug.add_clique(l);
    const int hubs = n / l + 1;
    for (int t = 0; t < hubs; ++t) {
      const int y = aug.add_vertex();
      for (int x : clique) aug.add_edge(y, x);
      for (int v = 0; v < n; ++v) aug.add_edge(y, v);
    }
    out.colors = l + 1;
    out.connectivity_added = true;
  }
  const int l = out.colors;
  for (bool changed = true; changed;) {
    changed = false;
    std::vector<int> degree(out.graph.num_vertices, 0);
    for (auto [u, v] : out.graph.edges) {
      ++degree[u];
      ++degree[v];
    }
    for (int v = 0; v < static_cast<int>(degree.size()); ++v) {
      if (degree[v] >= 2) continue;
      const auto clique = aug.add_clique(l);
      for (int t = 1; t + 1 < l; ++t) aug.add_edge(v, clique[t]);
      changed = true;
      break;
    }
  }

  const int nv = out.graph.num_vertices;
  const int ne = static_cast<int>(out.graph.edges.size());
  const int agents = ne + l;
  const int goods = nv + ne;
  std::vector<std::vector<Value>> vals(agents, std::vector<Value>(goods, 0));
  for (int e = 0; e < ne; ++e) {
    for (int f = 0; f < ne; ++f) vals[e][nv + f] = 1;
    vals[e][out.graph.edges[e].first] = 1;
    vals[e][out.graph.edges[e].second] = 1;
    out.manifest.agents.push_back(label("edge", e));
  }
  for (int d = 0; d < l; ++d) {
    for (int v = 0; v < nv; ++v) vals[ne + d][v] = 1;
    out.manifest.agents.push_back(label("color", d));
  }
  for (int v = 0; v < nv; ++v) out.manifest.goods.push_back(label("vertex", v));
  for (int e = 0; e < ne; ++e) out.manifest.goods.push_back(label("edge", e));
  out.instance = Instance(agents, goods, vals);
  return out;
}

Allocation coloring_witness(const ColoringGadget& gadget,
                            const std::vector<int>& coloring) {
  const int nv = gadget.graph.num_vertices;
  const int ne = static_cast<int>(gadget.graph.edges.size());
  if (static_cast<int>(coloring.size()) != nv) {
    throw PreconditionError("coloring must cover every vertex");
  }
  std::vector<int> owner(nv + ne);
  for (int v = 0; v < nv; ++v) {
    if (coloring[v] < 0 || coloring[v] >= gadget.colors) {
      throw PreconditionError("color out of range");
    }
    owner[v] = ne + coloring[v];
  }
  for (int e = 0; e < ne; ++e) owner[nv + e] = e;
  return Allocation::from_owners(owner, ne + gadget.colors);
}

std::optional<std::vector<int>> coloring_from_allocation(const ColoringGadget& gadget,
                                                         const Allocation& alloc) {
  const int nv = gadget.graph.num_vertices;
  const int ne = static_cast<int>(gadget.graph.edges.size());
  std::vector<int> colors(nv);
  for (int v = 0; v < nv; ++v) {
    const int a = alloc.owner(v);
    if (a < ne) return std::nullopt;
    colors[v] = a - ne;
  }
  return colors;
}

}  // namespace hefk
