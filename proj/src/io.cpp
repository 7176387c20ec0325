#include "hefk/io.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

namespace hefk::io {

namespace {

const json& require(const json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) {
    throw StructuralError(std::string("missing field \"") + key + "\"");
  }
  return j.at(key);
}

long long require_int(const json& j, const char* key) {
  const json& v = require(j, key);
  if (!v.is_number_integer()) {
    throw StructuralError(std::string("field \"") + key + "\" must be an integer");
  }
  return v.get<long long>();
}

}  // namespace

Instance instance_from_json(const json& j) {
  const long long n = require_int(j, "n");
  const long long m = require_int(j, "m");
  const json& rows = require(j, "valuations");
  if (!rows.is_array()) throw StructuralError("\"valuations\" must be an array");
  std::vector<std::vector<Value>> vals;
  for (const json& row : rows) {
    if (!row.is_array()) throw StructuralError("valuation rows must be arrays");
    std::vector<Value> r;
    for (const json& x : row) {
      if (!x.is_number_integer()) {
        throw StructuralError("valuations must be integers");
      }
      r.push_back(x.get<Value>());
    }
    vals.push_back(std::move(r));
  }
  return Instance(static_cast<int>(n), static_cast<int>(m), vals);
}

json to_json(const Instance& inst) {
  return json{{"n", inst.num_agents()},
              {"m", inst.num_goods()},
              {"valuations", inst.rows()}};
}

Allocation allocation_from_json(const json& j, int num_goods) {
  const json& bundles = require(j, "bundles");
  if (!bundles.is_array()) throw StructuralError("\"bundles\" must be an array");
  std::vector<std::vector<int>> out;
  for (const json& b : bundles) {
    if (!b.is_array()) throw StructuralError("bundles must be arrays");
    std::vector<int> goods;
    for (const json& g : b) {
      if (!g.is_number_integer()) throw StructuralError("good ids must be integers");
      goods.push_back(g.get<int>());
    }
    out.push_back(std::move(goods));
  }
  return Allocation(std::move(out), num_goods);
}

json to_json(const Allocation& alloc) {
  return json{{"bundles", alloc.bundles()}};
}

json to_json(const HiddenSet& hidden) { return json(hidden.goods()); }

json read_json_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw StructuralError("cannot open " + path.string());
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw StructuralError(path.string() + ": " + e.what());
  }
}

void write_json_file(const std::filesystem::path& path, const json& j) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << j.dump(2) << '\n';
}

Instance read_instance(const std::filesystem::path& path) {
  return instance_from_json(read_json_file(path));
}

Allocation read_allocation(const std::filesystem::path& path,
                           const Instance& inst) {
  Allocation alloc = allocation_from_json(read_json_file(path), inst.num_goods());
  check_compatible(inst, alloc);
  return alloc;
}

namespace {

std::vector<int> int_list(const json& j, const char* what) {
  if (!j.is_array()) throw StructuralError(std::string(what) + " must be an array");
  std::vector<int> out;
  for (const json& x : j) {
    if (!x.is_number_integer()) {
      throw StructuralError(std::string(what) + " must hold integers");
    }
    out.push_back(x.get<int>());
  }
  return out;
}

}  // namespace

PartitionInput partition_input_from_json(const json& j) {
  PartitionInput in;
  const json& values = require(j, "values");
  if (!values.is_array()) throw StructuralError("\"values\" must be an array");
  for (const json& x : values) {
    if (!x.is_number_integer()) throw StructuralError("values must be integers");
    in.values.push_back(x.get<Value>());
  }
  in.k = static_cast<int>(require_int(j, "k"));
  return in;
}

HittingSetInput hitting_set_input_from_json(const json& j) {
  HittingSetInput in;
  in.universe_size = static_cast<int>(require_int(j, "p"));
  const json& families = require(j, "families");
  if (!families.is_array()) throw StructuralError("\"families\" must be an array");
  for (const json& f : families) in.families.push_back(int_list(f, "a family"));
  in.k = static_cast<int>(require_int(j, "k"));
  return in;
}

ColoringInput coloring_input_from_json(const json& j) {
  ColoringInput in;
  in.colors = static_cast<int>(require_int(j, "l"));
  const json& edges = require(j, "edges");
  if (!edges.is_array()) throw StructuralError("\"edges\" must be an array");
  int n = 0;
  for (const json& e : edges) {
    const auto uv = int_list(e, "an edge");
    if (uv.size() != 2) throw StructuralError("edges must have two endpoints");
    in.graph.edges.emplace_back(uv[0], uv[1]);
    n = std::max({n, uv[0] + 1, uv[1] + 1});
  }
  in.graph.num_vertices = j.contains("n") ? static_cast<int>(require_int(j, "n")) : n;
  return in;
}

json to_json(const Manifest& manifest) {
  return json{{"agents", manifest.agents}, {"goods", manifest.goods}};
}

json coloring_metadata(const ColoringGadget& gadget) {
  json edges = json::array();
  for (auto [u, v] : gadget.graph.edges) edges.push_back({u, v});
  json added = json::array();
  for (auto [u, v] : gadget.added_edges) added.push_back({u, v});
  return json{{"manifest", to_json(gadget.manifest)},
              {"graph", {{"n", gadget.graph.num_vertices}, {"edges", edges}}},
              {"l", gadget.colors},
              {"connectivity_added", gadget.connectivity_added},
              {"added_vertices", gadget.added_vertices},
              {"added_edges", added}};
}

}  // namespace hefk::io
