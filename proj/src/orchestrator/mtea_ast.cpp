#include <chrono>

#include "mtea/orchestrator.hpp"

namespace mtea::orchestrator {

evolution::EvoParams MultitaskConfig::evo_params() const {
  evolution::EvoParams p;
  p.pop_size = pop_size;
  p.mutation_prob = mutation_prob;
  p.ls_budget = ls_budget;
  return p;
}

void MultitaskConfig::validate() const {
  if (instances.empty()) throw ContractViolation("at least one task is required");
  for (const auto& inst : instances) inst.validate();
  evo_params().validate();
  const long long k = static_cast<long long>(instances.size());
  if (generations < 1) throw ContractViolation("generations must be at least 1");
  if (alpha < 1) throw ContractViolation("transfer frequency alpha must be at least 1");
  if (lambda < 1) throw ContractViolation("seed count lambda must be at least 1");
  if (eps < lambda) throw ContractViolation("need lambda <= eps");
  if (eps > k * pop_size) throw ContractViolation("need eps <= K * N");
  if (growth_budget && *growth_budget < 0) throw ContractViolation("growth budget must be non-negative");
}

MultitaskRun run_mtea_ast(const MultitaskConfig& config, RunProbe* probe) {
  config.validate();
  const auto start = std::chrono::steady_clock::now();
  const auto& instances = config.instances;
  const int k = static_cast<int>(instances.size());
  const auto params = config.evo_params();

  MultitaskRun run;
  run.seed = config.seed;
  run.traces.assign(static_cast<std::size_t>(k), {});
  run.interactions.assign(static_cast<std::size_t>(k), std::vector<long long>(static_cast<std::size_t>(k), 0));
  run.evaluations.assign(static_cast<std::size_t>(k), 0);
  run.transfer_evaluations.assign(static_cast<std::size_t>(k), 0);

  std::vector<Rng> rngs;
  std::vector<evolution::Population> pops;
  for (int t = 0; t < k; ++t) {
    run.task_names.push_back(instances[t].name);
    rngs.emplace_back(task_seed(config.seed, t));
    pops.push_back(evolution::random_population(instances[t], config.pop_size, rngs[t]));
    run.evaluations[t] += config.pop_size;
    run.traces[t].push_back(pops[t].best().fitness);
  }

  for (int g = 1; g <= config.generations; ++g) {
    if (k > 1 && g % config.alpha == 0) {
      const std::vector<evolution::Population> snapshot = pops;
      std::vector<Permutation> bests;
      for (const auto& p : snapshot) bests.push_back(p.best().genome);
      unification::OpCounter sim_ops;
      auto sim = unification::build_similarity_matrix(bests, instances, &sim_ops);
      for (int t = 0; t < k; ++t) {
        const auto plan = unification::plan_transfer(sim, t, config.eps, config.lambda);
        auto outcome = config.no_seed_selection
                           ? transfer::direct_transfer_round(t, snapshot, instances, plan)
                           : transfer::transfer_round(t, snapshot, instances, plan, config.growth_budget);
        pops[t] = std::move(outcome.population);
        for (int s = 0; s < k; ++s) run.interactions[t][s] += outcome.seeds_per_source[s];
        run.transfer_evaluations[t] += outcome.evaluations;
      }
      run.similarity.push_back(std::move(sim));
      if (probe) probe->unify_positions.push_back(sim_ops.positions);
    } else {
      for (int t = 0; t < k; ++t)
        pops[t] = evolution::generation_step(pops[t], instances[t], params, rngs[t], &run.evaluations[t]);
    }
    for (int t = 0; t < k; ++t) run.traces[t].push_back(pops[t].best().fitness);
  }
  for (const auto& p : pops) run.best.push_back(p.best());
  run.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return run;
}

}  // namespace mtea::orchestrator
