#include "hefk/experiments.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstdio>
#include <map>
#include <mutex>
#include <ostream>
#include <thread>
#include <tuple>

#include "hefk/hiding.hpp"
#include "hefk/rng.hpp"

namespace hefk {

Instance generate_bernoulli(int n, int m, double p, std::uint64_t seed,
                            std::uint64_t instance_id) {
  if (!(p > 0.0 && p < 1.0)) throw PreconditionError("p must lie in (0, 1)");
  Rng rng(hash_seed({seed, static_cast<std::uint64_t>(n),
                     static_cast<std::uint64_t>(m), instance_id}));
  std::vector<std::vector<Value>> rows(n, std::vector<Value>(m, 0));
  for (auto& row : rows) {
    for (auto& v : row) v = rng.bernoulli(p) ? 1 : 0;
  }
  return Instance(n, m, rows);
}

void SweepConfig::validate() const {
  if (agents_min < 1 || agents_max < agents_min) {
    throw PreconditionError("agent range must be non-empty and positive");
  }
  if (goods_min < 0 || goods_max < goods_min) {
    throw PreconditionError("good range must be non-empty");
  }
  if (instances_per_cell <= 0) throw PreconditionError("instances_per_cell must be positive");
  if (!(bernoulli_p > 0.0 && bernoulli_p < 1.0)) {
    throw PreconditionError("bernoulli_p must lie in (0, 1)");
  }
  if (node_budget <= 0) throw PreconditionError("node_budget must be positive");
  if (parallelism <= 0) throw PreconditionError("parallelism must be positive");
}

namespace {

std::pair<int, int> read_range(const nlohmann::json& j, const char* key,
                               std::pair<int, int> fallback) {
  if (!j.contains(key)) return fallback;
  const auto& r = j.at(key);
  if (!r.is_array() || r.size() != 2 || !r[0].is_number_integer() ||
      !r[1].is_number_integer()) {
    throw StructuralError(std::string("\"") + key + "\" must be [lo, hi]");
  }
  return {r[0].get<int>(), r[1].get<int>()};
}

template <typename T>
void read_field(const nlohmann::json& j, const char* key, T& out) {
  if (!j.contains(key)) return;
  try {
    out = j.at(key).get<T>();
  } catch (const nlohmann::json::exception&) {
    throw StructuralError(std::string("bad value for \"") + key + "\"");
  }
}

}  // namespace

SweepConfig sweep_config_from_json(const nlohmann::json& j) {
  if (!j.is_object()) throw StructuralError("sweep config must be a JSON object");
  static const char* const known[] = {
      "agent_range", "good_range",   "instances_per_cell", "bernoulli_p",
      "algorithms",  "rng_seed",     "compute_optimal",    "node_budget",
      "parallelism", "record_runtime"};
  for (const auto& item : j.items()) {
    if (std::find_if(std::begin(known), std::end(known), [&](const char* k) {
          return item.key() == k;
        }) == std::end(known)) {
      throw StructuralError("unknown sweep config key \"" + item.key() + "\"");
    }
  }
  SweepConfig c;
  std::tie(c.agents_min, c.agents_max) =
      read_range(j, "agent_range", {c.agents_min, c.agents_max});
  std::tie(c.goods_min, c.goods_max) =
      read_range(j, "good_range", {c.goods_min, c.goods_max});
  read_field(j, "instances_per_cell", c.instances_per_cell);
  read_field(j, "bernoulli_p", c.bernoulli_p);
  read_field(j, "rng_seed", c.rng_seed);
  read_field(j, "compute_optimal", c.compute_optimal);
  read_field(j, "node_budget", c.node_budget);
  read_field(j, "parallelism", c.parallelism);
  read_field(j, "record_runtime", c.record_runtime);
  if (j.contains("algorithms")) {
    std::vector<std::string> names;
    read_field(j, "algorithms", names);
    c.algorithms.clear();
    for (const auto& name : names) {
      auto a = parse_algorithm(name);
      if (!a) throw StructuralError("unknown algorithm \"" + name + "\"");
      c.algorithms.push_back(*a);
    }
  }
  c.validate();
  return c;
}

nlohmann::json to_json(const SweepConfig& c) {
  std::vector<std::string> names;
  for (Algorithm a : c.algorithms) names.emplace_back(algorithm_name(a));
  return {{"agent_range", {c.agents_min, c.agents_max}},
          {"good_range", {c.goods_min, c.goods_max}},
          {"instances_per_cell", c.instances_per_cell},
          {"bernoulli_p", c.bernoulli_p},
          {"algorithms", names},
          {"rng_seed", c.rng_seed},
          {"compute_optimal", c.compute_optimal},
          {"node_budget", c.node_budget},
          {"parallelism", c.parallelism},
          {"record_runtime", c.record_runtime}};
}

namespace {

using Clock = std::chrono::steady_clock;

double elapsed_ms(Clock::time_point start) {
  return std::chrono::duration<double, std::milli>(Clock::now() - start).count();
}

}  // namespace

std::vector<ExperimentRecord> evaluate_instance(const Instance& inst,
                                                int instance_id,
                                                const SweepConfig& config) {
  const int n = inst.num_agents();
  const int m = inst.num_goods();
  std::optional<OptimalResult> opt;
  std::optional<double> opt_ms;
  if (config.compute_optimal) {
    const auto start = Clock::now();
    try {
      OptimalOptions options;
      options.node_budget = config.node_budget;
      opt = optimal_kappa(inst, options);
    } catch (const CapacityError&) {
      opt.reset();
    }
    opt_ms = elapsed_ms(start);
  }

  std::vector<ExperimentRecord> out;
  for (Algorithm a : config.algorithms) {
    ExperimentRecord r;
    r.n = n;
    r.m = m;
    r.instance_id = instance_id;
    r.algorithm = std::string(algorithm_name(a));
    const auto start = Clock::now();
    try {
      const Allocation alloc = run_algorithm(a, inst);
      const ResidualEnvyOracle oracle(inst, alloc);
      const int k = exact_min_hide(oracle)->hidden.size();
      r.k_hidden = k;
      r.aggregate_envy = oracle.aggregate_envy();
      r.is_ef = oracle.aggregate_envy() == 0;
      r.greedy_hidden = greedy_hide(oracle).hidden.size();
      if (opt) {
        const Regret reg = regret_from_kappa(n, k, opt->kappa);
        r.k_opt = opt->kappa;
        r.regret = reg.value;
        r.normalized_regret = reg.normalized();
      }
    } catch (const CapacityError&) {
      // Left blank: the algorithm could not finish within its budget.
    }
    if (config.record_runtime) r.runtime_ms = elapsed_ms(start);
    out.push_back(std::move(r));
  }
  if (config.compute_optimal) {
    ExperimentRecord r;
    r.n = n;
    r.m = m;
    r.instance_id = instance_id;
    r.algorithm = kOptimalName;
    if (opt) {
      r.k_hidden = opt->kappa;
      r.k_opt = opt->kappa;
      r.regret = 0;
      r.normalized_regret = 0.0;
      r.aggregate_envy = envy_report(inst, opt->witness).aggregate;
      r.is_ef = opt->kappa == 0;
    }
    if (config.record_runtime) r.runtime_ms = opt_ms;
    out.push_back(std::move(r));
  }
  return out;
}

std::vector<ExperimentRecord> run_sweep(
    const SweepConfig& config,
    const std::function<void(int done, int total)>& progress) {
  config.validate();
  struct Task {
    int n, m, id;
  };
  std::vector<Task> tasks;
  for (int n = config.agents_min; n <= config.agents_max; ++n) {
    for (int m = std::max(config.goods_min, n); m <= config.goods_max; ++m) {
      for (int id = 0; id < config.instances_per_cell; ++id) tasks.push_back({n, m, id});
    }
  }
  std::vector<std::vector<ExperimentRecord>> results(tasks.size());
  std::atomic<std::size_t> next{0};
  std::atomic<int> done{0};
  std::mutex progress_mutex;
  auto worker = [&] {
    for (;;) {
      const std::size_t t = next.fetch_add(1);
      if (t >= tasks.size()) return;
      const Task& task = tasks[t];
      const Instance inst = generate_bernoulli(task.n, task.m, config.bernoulli_p,
                                               config.rng_seed, task.id);
      results[t] = evaluate_instance(inst, task.id, config);
      const int finished = ++done;
      if (progress) {
        std::lock_guard<std::mutex> lock(progress_mutex);
        progress(finished, static_cast<int>(tasks.size()));
      }
    }
  };
  const int threads = std::min<int>(config.parallelism, std::max<int>(1, tasks.size()));
  std::vector<std::thread> pool;
  for (int t = 1; t < threads; ++t) pool.emplace_back(worker);
  worker();
  for (auto& th : pool) th.join();

  std::vector<ExperimentRecord> out;
  for (auto& r : results) {
    for (auto& rec : r) out.push_back(std::move(rec));
  }
  return out;
}

const char* const kCsvHeader =
    "n,m,instance_id,algorithm,k_hidden,k_opt,regret,normalized_regret,"
    "aggregate_envy,is_ef,runtime_ms";

namespace {

template <typename T>
std::string field(const std::optional<T>& v) {
  return v ? std::to_string(*v) : std::string();
}

std::string fixed(const std::optional<double>& v, int digits) {
  if (!v) return {};
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", digits, *v);
  return buf;
}

}  // namespace

void write_csv(std::ostream& out, const std::vector<ExperimentRecord>& records) {
  out << kCsvHeader << '\n';
  for (const auto& r : records) {
    out << r.n << ',' << r.m << ',' << r.instance_id << ',' << r.algorithm << ','
        << field(r.k_hidden) << ',' << field(r.k_opt) << ',' << field(r.regret)
        << ',' << fixed(r.normalized_regret, 6) << ',' << field(r.aggregate_envy)
        << ',' << (r.is_ef ? (*r.is_ef ? "1" : "0") : "") << ','
        << fixed(r.runtime_ms, 3) << '\n';
  }
}

namespace {

nlohmann::json mean_or_null(double sum, int count) {
  if (count == 0) return nullptr;
  return sum / count;
}

template <typename T>
nlohmann::json opt_json(const std::optional<T>& v) {
  if (!v) return nullptr;
  return *v;
}

}  // namespace

nlohmann::json aggregate(const std::vector<ExperimentRecord>& records) {
  // κ^opt per instance, from the "optimal" rows or any algorithm row.
  std::map<std::tuple<int, int, int>, int> kopt;
  std::vector<std::string> names;
  int max_n = 0;
  for (const auto& r : records) {
    if (r.k_opt) kopt[{r.n, r.m, r.instance_id}] = *r.k_opt;
    if (std::find(names.begin(), names.end(), r.algorithm) == names.end()) {
      names.push_back(r.algorithm);
    }
    max_n = std::max(max_n, r.n);
  }

  struct Cell {
    int instances = 0;
    int with_kopt = 0;
    double regret_sum = 0;
    int regret_count = 0;
    double non_ef_sum = 0;
    int non_ef_count = 0;
    int ef_count = 0;
    int hidden_count = 0;
    std::optional<int> worst_regret;
    std::optional<double> worst_normalized;
    std::optional<int> worst_k_hidden;
    std::optional<int> k_opt_worst;
  };
  std::map<std::tuple<int, int, std::size_t>, Cell> cells;
  for (const auto& r : records) {
    const std::size_t alg =
        std::find(names.begin(), names.end(), r.algorithm) - names.begin();
    Cell& c = cells[{r.n, r.m, alg}];
    ++c.instances;
    const auto it = kopt.find({r.n, r.m, r.instance_id});
    if (it != kopt.end()) {
      ++c.with_kopt;
      c.k_opt_worst = std::max(c.k_opt_worst.value_or(0), it->second);
    }
    if (r.normalized_regret) {
      c.regret_sum += *r.normalized_regret;
      ++c.regret_count;
      c.worst_normalized = std::max(c.worst_normalized.value_or(0.0), *r.normalized_regret);
    }
    if (r.regret) c.worst_regret = std::max(c.worst_regret.value_or(0), *r.regret);
    if (r.k_hidden) {
      ++c.hidden_count;
      c.worst_k_hidden = std::max(c.worst_k_hidden.value_or(0), *r.k_hidden);
      if (*r.k_hidden == 0) ++c.ef_count;
      if (it != kopt.end() && it->second >= 1) {
        c.non_ef_sum += *r.k_hidden;
        ++c.non_ef_count;
      }
    }
  }

  nlohmann::json out;
  out["cells"] = nlohmann::json::array();
  for (const auto& [key, c] : cells) {
    const auto& [n, m, alg] = key;
    out["cells"].push_back({
        {"n", n},
        {"m", m},
        {"algorithm", names[alg]},
        {"instances", c.instances},
        {"mean_normalized_regret", mean_or_null(c.regret_sum, c.regret_count)},
        {"mean_k_hidden_non_ef", mean_or_null(c.non_ef_sum, c.non_ef_count)},
        {"ef_frequency", mean_or_null(c.ef_count, c.hidden_count)},
        {"worst_regret", opt_json(c.worst_regret)},
        {"worst_normalized_regret", opt_json(c.worst_normalized)},
        {"worst_k_hidden", opt_json(c.worst_k_hidden)},
        {"k_opt_worst", opt_json(c.k_opt_worst)},
        {"coverage", c.instances == 0 ? 0.0
                                      : static_cast<double>(c.with_kopt) / c.instances},
    });
  }

  const int kmax = std::max(max_n - 1, 0);
  std::vector<int> ks(kmax + 1);
  for (int k = 0; k <= kmax; ++k) ks[k] = k;
  nlohmann::json series = nlohmann::json::object();
  for (std::size_t a = 0; a < names.size(); ++a) {
    std::vector<int> hist(kmax + 1, 0);
    int total = 0;
    for (const auto& r : records) {
      if (r.algorithm != names[a] || !r.k_hidden) continue;
      ++total;
      for (int k = std::min(*r.k_hidden, kmax + 1); k <= kmax; ++k) ++hist[k];
    }
    std::vector<double> cdf(kmax + 1, 0.0);
    for (int k = 0; k <= kmax; ++k) {
      cdf[k] = total == 0 ? 0.0 : static_cast<double>(hist[k]) / total;
    }
    series[names[a]] = cdf;
  }
  out["cdf"] = {{"k", ks}, {"series", series}};
  return out;
}

}  // namespace hefk
