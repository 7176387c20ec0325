#pragma once

// Minimum hidden subset of a single bundle. Internal to the library.

#include <cstdint>
#include <optional>
#include <vector>

#include "hefk/core.hpp"

namespace hefk::detail {

struct Demand {
  int agent;
  Value deficit;  // > 0
};

// Lexicographically smallest T ⊆ candidates of minimum size with
// v_i(T) >= deficit_i for every demand, or nullopt if that size exceeds
// max_size. `candidates` must be sorted. `nodes` accumulates search nodes.
std::optional<std::vector<int>> min_bundle_cover(
    const Instance& inst, const std::vector<int>& candidates,
    const std::vector<Demand>& demands, int max_size, std::int64_t& nodes);

}  // namespace hefk::detail
