#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "hefk/core.hpp"

namespace hefk {

// Labels tying gadget agents and goods back to source-problem elements, e.g.
// "main:2", "dummy:0", "edge:3", "vertex:1".
struct Manifest {
  std::vector<std::string> agents;
  std::vector<std::string> goods;
};

// ---- Partition -> HEF-k existence (identical valuations) ----

struct PartitionInput {
  std::vector<Value> values;  // positive
  int k = 0;
};

struct PartitionGadget {
  Instance instance;
  Value target = 0;  // T, rounded up for odd sums
  Manifest manifest;
};

// k + 3 agents; goods x_1..x_n, one good worth T, then k dummies worth 4T.
PartitionGadget partition_gadget(const PartitionInput& input);

// HEF-k witness from a half-sum subset Y (indices into values): Y to agent 0,
// the rest to agent 1, the T good to agent 2, one dummy each to the others,
// all dummies hidden.
std::pair<Allocation, HiddenSet> partition_witness(const PartitionInput& input,
                                                   const std::vector<int>& subset);

// ---- Hitting set -> HEF-k verification (binary valuations) ----

struct HittingSetInput {
  int universe_size = 0;                   // p
  std::vector<std::vector<int>> families;  // non-empty subsets of [0, p)
  int k = 0;
};

struct HittingSetGadget {
  Instance instance;
  Allocation allocation;  // main agent holds all main goods
  Manifest manifest;
};

// Agents: one dummy per family, then the main agent. Goods: the p main goods,
// then |F_i| - 1 dummy goods per family in family order.
HittingSetGadget hitting_set_gadget(const HittingSetInput& input);

// Main goods for the elements of a hitting set, and back.
HiddenSet hitting_set_witness(const std::vector<int>& elements);
std::vector<int> hitting_set_from_hidden(const HittingSetInput& input,
                                         const HiddenSet& hidden);

// ---- Equitable coloring -> EF existence (binary valuations) ----

struct Graph {
  int num_vertices = 0;
  std::vector<std::pair<int, int>> edges;  // u != v, no duplicates
};

struct ColoringInput {
  Graph graph;
  int colors = 3;  // ℓ
};

struct ColoringGadget {
  Instance instance;
  Graph graph;             // after preprocessing
  int colors = 0;          // after preprocessing
  bool connectivity_added = false;
  std::vector<int> added_vertices;
  std::vector<std::pair<int, int>> added_edges;
  Manifest manifest;
};

// Disconnected graphs first get an ℓ-clique plus ⌊n/ℓ⌋ + 1 hub vertices
// (colors becomes ℓ + 1); then every vertex of degree below two gets an
// ℓ-clique gadget attached. Agents: one per edge, then one dummy per color.
// Goods: one per vertex, then one per edge. Throws PreconditionError for
// fewer than three colors or a malformed graph.
ColoringGadget coloring_gadget(const ColoringInput& input);

// EF allocation of the gadget from a proper equitable coloring of the
// preprocessed graph (colors in [0, colors)).
Allocation coloring_witness(const ColoringGadget& gadget,
                            const std::vector<int>& coloring);

// Vertex colors read from the dummy agents' vertex goods; nullopt if some
// vertex good is held by an edge agent.
std::optional<std::vector<int>> coloring_from_allocation(const ColoringGadget& gadget,
                                                         const Allocation& alloc);

bool is_connected(const Graph& g);

}  // namespace hefk
