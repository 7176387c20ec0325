#pragma once

#include <filesystem>
#include <string>

#include <nlohmann/json.hpp>

#include "hefk/core.hpp"
#include "hefk/reductions.hpp"

namespace hefk::io {

using nlohmann::json;

// {"n": <int>, "m": <int>, "valuations": [[...], ...]}
Instance instance_from_json(const json& j);
json to_json(const Instance& inst);

// {"bundles": [[goods of agent 0], ...]}, goods 0-indexed.
Allocation allocation_from_json(const json& j, int num_goods);
json to_json(const Allocation& alloc);

json to_json(const HiddenSet& hidden);

// Throws StructuralError when the file is missing or not valid JSON.
json read_json_file(const std::filesystem::path& path);
// Pretty-printed with two-space indent and a trailing newline.
void write_json_file(const std::filesystem::path& path, const json& j);

Instance read_instance(const std::filesystem::path& path);
// Validates against the instance dimensions.
Allocation read_allocation(const std::filesystem::path& path,
                           const Instance& inst);

// Source-problem inputs of the reductions; elements and vertices 0-indexed.
// {"values": [...], "k": K}
PartitionInput partition_input_from_json(const json& j);
// {"p": P, "families": [[...], ...], "k": K}
HittingSetInput hitting_set_input_from_json(const json& j);
// {"edges": [[u, v], ...], "l": L} with optional "n" for isolated vertices.
ColoringInput coloring_input_from_json(const json& j);

json to_json(const Manifest& manifest);
// Manifest plus the preprocessing applied to the graph.
json coloring_metadata(const ColoringGadget& gadget);

}  // namespace hefk::io
