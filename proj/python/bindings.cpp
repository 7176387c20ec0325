#include <sstream>

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "hefk/algorithms.hpp"
#include "hefk/core.hpp"
#include "hefk/experiments.hpp"
#include "hefk/hiding.hpp"
#include "hefk/io.hpp"
#include "hefk/reductions.hpp"

namespace py = pybind11;
using namespace hefk;

namespace {

using Rows = std::vector<std::vector<Value>>;
using Bundles = std::vector<std::vector<int>>;

Allocation to_alloc(const Instance& inst, const Bundles& bundles) {
  Allocation alloc(bundles, inst.num_goods());
  check_compatible(inst, alloc);
  return alloc;
}

py::dict hiding_dict(const HidingResult& r) {
  py::dict d;
  d["hidden"] = r.hidden.goods();
  d["residual"] = r.residual;
  d["optimal"] = r.optimal;
  d["trace"] = r.trace;
  return d;
}

Algorithm algorithm(const std::string& name) {
  auto a = parse_algorithm(name);
  if (!a) throw PreconditionError("unknown algorithm \"" + name + "\"");
  return *a;
}

}  // namespace

PYBIND11_MODULE(_hefk, m) {
  m.doc() = "Envy-freeness up to hidden goods";

  py::register_exception<CapacityError>(m, "CapacityError", PyExc_RuntimeError);
  py::register_exception<StructuralError>(m, "StructuralError", PyExc_ValueError);
  py::register_exception<PreconditionError>(m, "PreconditionError", PyExc_ValueError);

  py::class_<Instance>(m, "Instance")
      .def(py::init([](const Rows& rows) { return Instance::from_rows(rows); }),
           py::arg("valuations"))
      .def_property_readonly("num_agents", &Instance::num_agents)
      .def_property_readonly("num_goods", &Instance::num_goods)
      .def("value", &Instance::value_at, py::arg("agent"), py::arg("good"))
      .def("rows", &Instance::rows)
      .def("__repr__", [](const Instance& i) {
        return "Instance(n=" + std::to_string(i.num_agents()) +
               ", m=" + std::to_string(i.num_goods()) + ")";
      });

  m.def(
      "run_algorithm",
      [](const std::string& name, const Instance& inst, std::optional<std::uint64_t> seed) {
        SolverConfig config;
        if (seed) config = SolverConfig::shuffled(inst.num_agents(), inst.num_goods(), *seed);
        return run_algorithm(algorithm(name), inst, config).bundles();
      },
      py::arg("algorithm"), py::arg("instance"), py::arg("seed") = py::none(),
      "Bundles computed by round-robin, envy-graph, mnw or ef1-po.");

  m.def("is_ef", [](const Instance& i, const Bundles& b) { return is_ef(i, to_alloc(i, b)); });
  m.def("is_ef1", [](const Instance& i, const Bundles& b) { return is_ef1(i, to_alloc(i, b)); });
  m.def("is_sef1", [](const Instance& i, const Bundles& b) { return is_sef1(i, to_alloc(i, b)); });
  m.def("is_hef", [](const Instance& i, const Bundles& b, const std::vector<int>& hidden) {
    return is_hef(i, to_alloc(i, b), HiddenSet(hidden));
  });
  m.def("is_uhef", [](const Instance& i, const Bundles& b, int k) {
    return is_uhef(i, to_alloc(i, b), k);
  });
  m.def("is_pareto_optimal", [](const Instance& i, const Bundles& b) {
    return is_pareto_optimal(i, to_alloc(i, b));
  });
  m.def(
      "aggregate_envy",
      [](const Instance& i, const Bundles& b, const std::vector<int>& hidden) {
        return envy_report(i, to_alloc(i, b), HiddenSet(hidden)).aggregate;
      },
      py::arg("instance"), py::arg("bundles"), py::arg("hidden") = std::vector<int>{});

  m.def("greedy_hide", [](const Instance& i, const Bundles& b) {
    return hiding_dict(greedy_hide(ResidualEnvyOracle(i, to_alloc(i, b))));
  });
  m.def(
      "exact_min_hide",
      [](const Instance& i, const Bundles& b, std::optional<int> max_k) -> py::object {
        const auto r = exact_min_hide(ResidualEnvyOracle(i, to_alloc(i, b)), max_k);
        if (!r) return py::none();
        return hiding_dict(*r);
      },
      py::arg("instance"), py::arg("bundles"), py::arg("max_k") = py::none());
  m.def("kappa", [](const Instance& i, const Bundles& b) { return kappa(i, to_alloc(i, b)); });
  m.def(
      "optimal_kappa",
      [](const Instance& i, std::optional<int> max_k, std::int64_t budget) -> py::object {
        const auto r = optimal_kappa(i, OptimalOptions{max_k, budget});
        if (!r) return py::none();
        py::dict d;
        d["kappa"] = r->kappa;
        d["witness"] = r->witness.bundles();
        d["hidden"] = r->hidden.goods();
        d["nodes"] = r->nodes;
        return d;
      },
      py::arg("instance"), py::arg("max_k") = py::none(),
      py::arg("node_budget") = OptimalOptions{}.node_budget);
  m.def("normalized_regret", [](int n, int k, int kopt) {
    return regret_from_kappa(n, k, kopt).normalized();
  });

  m.def("generate_bernoulli", &generate_bernoulli, py::arg("n"), py::arg("m"),
        py::arg("p"), py::arg("seed"), py::arg("instance_id") = 0);

  m.def(
      "reduce",
      [](const std::string& problem, const std::string& input) {
        const auto j = nlohmann::json::parse(input);
        nlohmann::json out;
        if (problem == "partition") {
          const auto g = partition_gadget(io::partition_input_from_json(j));
          out = {{"instance", io::to_json(g.instance)}, {"manifest", io::to_json(g.manifest)}};
        } else if (problem == "hitting-set") {
          const auto g = hitting_set_gadget(io::hitting_set_input_from_json(j));
          out = {{"instance", io::to_json(g.instance)},
                 {"allocation", io::to_json(g.allocation)},
                 {"manifest", io::to_json(g.manifest)}};
        } else if (problem == "coloring") {
          const auto g = coloring_gadget(io::coloring_input_from_json(j));
          out = io::coloring_metadata(g);
          out["instance"] = io::to_json(g.instance);
        } else {
          throw PreconditionError("unknown problem \"" + problem + "\"");
        }
        return out.dump();
      },
      py::arg("problem"), py::arg("input_json"));

  m.def(
      "run_sweep",
      [](const std::string& config_json) {
        const auto config = sweep_config_from_json(nlohmann::json::parse(config_json));
        std::vector<ExperimentRecord> records;
        {
          py::gil_scoped_release release;
          records = run_sweep(config);
        }
        std::ostringstream csv;
        write_csv(csv, records);
        return py::make_tuple(csv.str(), aggregate(records).dump());
      },
      py::arg("config_json"), "CSV text and summary JSON text of a sweep.");
}
