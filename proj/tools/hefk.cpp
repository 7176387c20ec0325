// hefk: allocation solvers, hidden-goods verification and optimization,
// reductions and experiment sweeps from the command line.
//
// Exit codes: 0 success or property true, 1 property false, 2 usage or input
// error, 3 resource limit reached.

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <string>

#include "hefk/algorithms.hpp"
#include "hefk/core.hpp"
#include "hefk/experiments.hpp"
#include "hefk/hiding.hpp"
#include "hefk/io.hpp"
#include "hefk/reductions.hpp"

namespace {

using hefk::io::json;

constexpr int kExitFalse = 1;
constexpr int kExitUsage = 2;
constexpr int kExitCapacity = 3;

// Relevant-good count up to which `verify` and `solve` run the exact search.
constexpr int kExactLimit = 20;

void print(const json& j) { std::cout << j.dump(2) << '\n'; }

json hiding_json(const hefk::ResidualEnvyOracle& oracle, bool exact) {
  const bool use_exact =
      exact && static_cast<int>(oracle.relevant_goods().size()) <= kExactLimit;
  json out;
  out["aggregate_envy"] = oracle.aggregate_envy();
  out["relevant_goods"] = oracle.relevant_goods().size();
  if (use_exact) {
    const auto r = hefk::exact_min_hide(oracle);
    out["mode"] = "exact";
    out["approximate"] = false;
    out["hidden"] = r->hidden.goods();
    out["k"] = r->hidden.size();
    out["residual"] = r->residual;
    out["steps"] = r->steps;
  } else {
    const auto r = hefk::greedy_hide(oracle);
    out["mode"] = "greedy";
    out["approximate"] = exact;  // exact was asked for but not affordable
    out["hidden"] = r.hidden.goods();
    out["k"] = r.hidden.size();
    out["residual"] = r.residual;
    out["steps"] = r.steps;
    out["trace"] = r.trace;
  }
  return out;
}

struct SolveArgs {
  std::string instance;
  std::string algorithm;
  std::optional<std::uint64_t> seed;
  std::string out;
};

int run_solve(const SolveArgs& a) {
  const auto inst = hefk::io::read_instance(a.instance);
  const auto alg = *hefk::parse_algorithm(a.algorithm);
  hefk::SolverConfig config;
  if (a.seed) {
    config = hefk::SolverConfig::shuffled(inst.num_agents(), inst.num_goods(), *a.seed);
  }
  const auto alloc = hefk::run_algorithm(alg, inst, config);
  if (!a.out.empty()) hefk::io::write_json_file(a.out, hefk::io::to_json(alloc));
  const hefk::ResidualEnvyOracle oracle(inst, alloc);
  const json hiding = hiding_json(oracle, true);
  print(json{{"algorithm", a.algorithm},
             {"bundles", alloc.bundles()},
             {"aggregate_envy", oracle.aggregate_envy()},
             {"kappa", hiding["k"]},
             {"kappa_approximate", hiding["mode"] == "greedy"},
             {"is_ef", hefk::is_ef(inst, alloc)},
             {"is_ef1", hefk::is_ef1(inst, alloc)},
             {"is_sef1", hefk::is_sef1(inst, alloc)}});
  return 0;
}

struct VerifyArgs {
  std::string instance;
  std::string allocation;
  bool exact = false;
  bool greedy = false;
};

int run_verify(const VerifyArgs& a) {
  const auto inst = hefk::io::read_instance(a.instance);
  const auto alloc = hefk::io::read_allocation(a.allocation, inst);
  const hefk::ResidualEnvyOracle oracle(inst, alloc);
  if (a.exact) {
    const auto r = hefk::exact_min_hide(oracle);
    print(json{{"mode", "exact"},
               {"approximate", false},
               {"aggregate_envy", oracle.aggregate_envy()},
               {"hidden", r->hidden.goods()},
               {"k", r->hidden.size()},
               {"residual", r->residual},
               {"steps", r->steps}});
    return 0;
  }
  if (a.greedy) {
    const auto r = hefk::greedy_hide(oracle);
    print(json{{"mode", "greedy"},
               {"approximate", true},
               {"aggregate_envy", oracle.aggregate_envy()},
               {"hidden", r.hidden.goods()},
               {"k", r.hidden.size()},
               {"residual", r.residual},
               {"steps", r.steps},
               {"trace", r.trace}});
    return 0;
  }
  print(hiding_json(oracle, true));
  return 0;
}

struct OptimalArgs {
  std::string instance;
  std::optional<int> max_k;
  std::int64_t node_budget = hefk::OptimalOptions{}.node_budget;
  std::string out;
};

int run_optimal(const OptimalArgs& a) {
  const auto inst = hefk::io::read_instance(a.instance);
  hefk::OptimalOptions options;
  options.max_k = a.max_k;
  options.node_budget = a.node_budget;
  const auto r = hefk::optimal_kappa(inst, options);
  if (!r) {
    print(json{{"kappa", nullptr}, {"exceeds", *a.max_k}});
    return kExitFalse;
  }
  if (!a.out.empty()) hefk::io::write_json_file(a.out, hefk::io::to_json(r->witness));
  print(json{{"kappa", r->kappa},
             {"bundles", r->witness.bundles()},
             {"hidden", r->hidden.goods()},
             {"nodes", r->nodes}});
  return 0;
}

struct CheckArgs {
  std::string instance;
  std::string allocation;
  std::string property;
};

int run_check(const CheckArgs& a) {
  const auto inst = hefk::io::read_instance(a.instance);
  const auto alloc = hefk::io::read_allocation(a.allocation, inst);
  const std::string& p = a.property;
  bool result = false;
  auto parse_k = [&](std::size_t prefix) {
    const std::string digits = p.substr(prefix);
    if (digits.empty() || digits.find_first_not_of("0123456789") != std::string::npos) {
      throw CLI::ValidationError("--property", "expected a non-negative integer after ':'");
    }
    return std::stoi(digits);
  };
  if (p == "ef") {
    result = hefk::is_ef(inst, alloc);
  } else if (p == "ef1") {
    result = hefk::is_ef1(inst, alloc);
  } else if (p == "sef1") {
    result = hefk::is_sef1(inst, alloc);
  } else if (p == "po") {
    result = hefk::is_pareto_optimal(inst, alloc);
  } else if (p.rfind("uhef:", 0) == 0) {
    result = hefk::is_uhef(inst, alloc, parse_k(5));
  } else if (p.rfind("hef:", 0) == 0) {
    const int k = parse_k(4);
    result = hefk::exact_min_hide(hefk::ResidualEnvyOracle(inst, alloc), k).has_value();
  } else {
    throw CLI::ValidationError("--property", "unknown property \"" + p + "\"");
  }
  std::cout << (result ? "true" : "false") << '\n';
  return result ? 0 : kExitFalse;
}

struct ExperimentArgs {
  std::string config;
  std::string out;
  std::string summary;
  bool quiet = false;
};

int run_experiment(const ExperimentArgs& a) {
  const auto config = hefk::sweep_config_from_json(hefk::io::read_json_file(a.config));
  int last_percent = -1;
  const auto records = hefk::run_sweep(config, [&](int done, int total) {
    if (a.quiet) return;
    const int percent = 100 * done / total;
    if (percent != last_percent) {
      last_percent = percent;
      std::cerr << "\r" << done << "/" << total << " instances" << std::flush;
    }
  });
  if (!a.quiet) std::cerr << '\n';
  std::ofstream csv(a.out);
  if (!csv) throw std::runtime_error("cannot write " + a.out);
  hefk::write_csv(csv, records);
  if (!a.summary.empty()) hefk::io::write_json_file(a.summary, hefk::aggregate(records));
  std::cout << records.size() << " records written to " << a.out << '\n';
  return 0;
}

struct ReduceArgs {
  std::string problem;
  std::string input;
  std::string out;
  std::string allocation_out;
  std::string manifest_out;
};

int run_reduce(const ReduceArgs& a) {
  const json in = hefk::io::read_json_file(a.input);
  json meta;
  if (a.problem == "partition") {
    const auto g = hefk::partition_gadget(hefk::io::partition_input_from_json(in));
    hefk::io::write_json_file(a.out, hefk::io::to_json(g.instance));
    meta = json{{"manifest", hefk::io::to_json(g.manifest)}, {"target", g.target}};
  } else if (a.problem == "hitting-set") {
    const auto g = hefk::hitting_set_gadget(hefk::io::hitting_set_input_from_json(in));
    hefk::io::write_json_file(a.out, hefk::io::to_json(g.instance));
    if (!a.allocation_out.empty()) {
      hefk::io::write_json_file(a.allocation_out, hefk::io::to_json(g.allocation));
    }
    meta = json{{"manifest", hefk::io::to_json(g.manifest)},
                {"bundles", g.allocation.bundles()}};
  } else {
    const auto g = hefk::coloring_gadget(hefk::io::coloring_input_from_json(in));
    hefk::io::write_json_file(a.out, hefk::io::to_json(g.instance));
    meta = hefk::io::coloring_metadata(g);
  }
  if (!a.manifest_out.empty()) hefk::io::write_json_file(a.manifest_out, meta);
  print(meta);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Fair allocation of indivisible goods with hidden goods"};
  app.require_subcommand(1);

  std::vector<std::string> algorithms;
  for (auto a : hefk::kAllAlgorithms) algorithms.emplace_back(hefk::algorithm_name(a));

  SolveArgs solve;
  auto* solve_cmd = app.add_subcommand("solve", "Run an allocation algorithm");
  solve_cmd->add_option("--instance", solve.instance, "Instance JSON")
      ->required()
      ->check(CLI::ExistingFile);
  solve_cmd->add_option("--algorithm", solve.algorithm, "Algorithm name")
      ->required()
      ->check(CLI::IsMember(algorithms));
  solve_cmd->add_option("--seed", solve.seed, "Shuffle agent and good orders with this seed");
  solve_cmd->add_option("--out", solve.out, "Write the allocation JSON here");

  VerifyArgs verify;
  auto* verify_cmd = app.add_subcommand("verify", "Find a hidden set for an allocation");
  verify_cmd->add_option("--instance", verify.instance, "Instance JSON")
      ->required()
      ->check(CLI::ExistingFile);
  verify_cmd->add_option("--allocation", verify.allocation, "Allocation JSON")
      ->required()
      ->check(CLI::ExistingFile);
  auto* exact_flag = verify_cmd->add_flag("--exact", verify.exact, "Minimum hidden set");
  auto* greedy_flag = verify_cmd->add_flag("--greedy", verify.greedy, "Greedy hidden set");
  exact_flag->excludes(greedy_flag);

  OptimalArgs optimal;
  auto* optimal_cmd =
      app.add_subcommand("optimal", "Smallest number of hidden goods over all allocations");
  optimal_cmd->add_option("--instance", optimal.instance, "Instance JSON")
      ->required()
      ->check(CLI::ExistingFile);
  optimal_cmd->add_option("--max-k", optimal.max_k, "Give up above this many hidden goods")
      ->check(CLI::NonNegativeNumber);
  optimal_cmd->add_option("--node-budget", optimal.node_budget, "Search node cap")
      ->check(CLI::PositiveNumber);
  optimal_cmd->add_option("--out", optimal.out, "Write the witness allocation JSON here");

  CheckArgs check;
  auto* check_cmd = app.add_subcommand("check", "Test a fairness property");
  check_cmd->add_option("--instance", check.instance, "Instance JSON")
      ->required()
      ->check(CLI::ExistingFile);
  check_cmd->add_option("--allocation", check.allocation, "Allocation JSON")
      ->required()
      ->check(CLI::ExistingFile);
  check_cmd->add_option("--property", check.property, "ef|ef1|sef1|po|uhef:K|hef:K")
      ->required();

  ExperimentArgs experiment;
  auto* experiment_cmd = app.add_subcommand("experiment", "Run a synthetic sweep");
  experiment_cmd->add_option("--config", experiment.config, "Sweep config JSON")
      ->required()
      ->check(CLI::ExistingFile);
  experiment_cmd->add_option("--out", experiment.out, "CSV output")->required();
  experiment_cmd->add_option("--summary", experiment.summary, "Summary JSON output");
  experiment_cmd->add_flag("--quiet", experiment.quiet, "No progress output");

  ReduceArgs reduce;
  auto* reduce_cmd = app.add_subcommand("reduce", "Build a reduction gadget");
  reduce_cmd->add_option("problem", reduce.problem, "partition|hitting-set|coloring")
      ->required()
      ->check(CLI::IsMember({"partition", "hitting-set", "coloring"}));
  reduce_cmd->add_option("--input", reduce.input, "Source problem JSON")
      ->required()
      ->check(CLI::ExistingFile);
  reduce_cmd->add_option("--out", reduce.out, "Instance JSON output")->required();
  reduce_cmd->add_option("--allocation-out", reduce.allocation_out,
                         "Input allocation JSON output (hitting-set)");
  reduce_cmd->add_option("--manifest-out", reduce.manifest_out, "Manifest JSON output");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (*solve_cmd) return run_solve(solve);
    if (*verify_cmd) return run_verify(verify);
    if (*optimal_cmd) return run_optimal(optimal);
    if (*check_cmd) return run_check(check);
    if (*experiment_cmd) return run_experiment(experiment);
    if (*reduce_cmd) return run_reduce(reduce);
  } catch (const hefk::CapacityError& e) {
    std::cerr << "capacity: " << e.what();
    if (e.lower_bound() >= 0) std::cerr << " (lower bound " << e.lower_bound() << ")";
    std::cerr << '\n';
    return kExitCapacity;
  } catch (const CLI::ValidationError& e) {
    std::cerr << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  }
  return kExitUsage;
}
