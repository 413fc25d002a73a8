#include <algorithm>
#include <atomic>
#include <thread>

#include "mtea/bench.hpp"

namespace mtea::bench {

std::string to_string(Algorithm a) {
  switch (a) {
    case Algorithm::MteaAst:
      return "mtea-ast";
    case Algorithm::MteaAstNoTS:
      return "mtea-ast-nots";
    case Algorithm::Sto:
      return "sto";
    case Algorithm::Mfea:
      return "mfea";
  }
  return "?";
}

Algorithm algorithm_from_string(const std::string& text) {
  for (Algorithm a : {Algorithm::MteaAst, Algorithm::MteaAstNoTS, Algorithm::Sto, Algorithm::Mfea})
    if (to_string(a) == text) return a;
  throw ContractViolation("unknown algorithm '" + text + "' (mtea-ast, mtea-ast-nots, sto, mfea)");
}

void ExperimentConfig::validate() const {
  if (runs < 1) throw ContractViolation("runs must be at least 1");
  if (benchmark.empty() && files.empty()) throw ContractViolation("no benchmark or instance files given");
  if (!(rmp >= 0.0 && rmp <= 1.0)) throw ContractViolation("rmp must lie in [0, 1]");
  for (const auto& f : files)
    if (!fs::exists(f)) throw std::runtime_error("instance file not found: " + f.string());
}

std::vector<ProblemInstance> load_experiment_instances(const ExperimentConfig& config) {
  config.validate();
  if (!config.benchmark.empty()) return assemble_benchmark(config.benchmark, config.data_dir);
  std::vector<ProblemInstance> out;
  for (const auto& f : config.files) {
    ProblemInstance inst = problems::load_instance(f);
    inst.validate();
    out.push_back(std::move(inst));
  }
  return out;
}

MultitaskRun run_once(const ExperimentConfig& config, const std::vector<ProblemInstance>& instances,
                      std::uint64_t seed) {
  orchestrator::MultitaskConfig mc = config.params;
  mc.instances = instances;
  mc.seed = seed;
  switch (config.algorithm) {
    case Algorithm::MteaAst:
      mc.no_seed_selection = false;
      return orchestrator::run_mtea_ast(mc);
    case Algorithm::MteaAstNoTS:
      mc.no_seed_selection = true;
      return orchestrator::run_mtea_ast(mc);
    case Algorithm::Mfea:
      return orchestrator::run_mfea_baseline(mc, config.rmp);
    case Algorithm::Sto:
      break;
  }
  if (instances.empty()) throw ContractViolation("at least one task is required");
  if (mc.generations < 1) throw ContractViolation("generations must be at least 1");
  mc.evo_params().validate();
  const int k = static_cast<int>(instances.size());
  MultitaskRun run;
  run.seed = seed;
  run.interactions.assign(static_cast<std::size_t>(k), std::vector<long long>(static_cast<std::size_t>(k), 0));
  for (int t = 0; t < k; ++t) {
    Rng rng(orchestrator::task_seed(seed, t));
    auto single = evolution::run_sto(instances[t], mc.evo_params(), mc.generations, rng);
    run.task_names.push_back(instances[t].name);
    run.traces.push_back(std::move(single.traces[0]));
    run.best.push_back(std::move(single.best[0]));
    run.evaluations.push_back(single.evaluations[0]);
    run.transfer_evaluations.push_back(0);
    run.wall_seconds += single.wall_seconds;
  }
  return run;
}

std::vector<MultitaskRun> run_experiment(const ExperimentConfig& config,
                                         const std::vector<ProblemInstance>& instances, unsigned threads) {
  config.validate();
  const auto n = static_cast<std::size_t>(config.runs);
  std::vector<MultitaskRun> runs(n);
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, n));
  std::atomic<std::size_t> next{0};
  std::vector<std::exception_ptr> errors(n);
  auto worker = [&] {
    for (std::size_t r = next++; r < n; r = next++) {
      try {
        runs[r] = run_once(config, instances, run_seed(config.params.seed, static_cast<int>(r)));
      } catch (...) {
        errors[r] = std::current_exception();
      }
    }
  };
  if (threads <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (unsigned i = 0; i < threads; ++i) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
  return runs;
}

}  // namespace mtea::bench
