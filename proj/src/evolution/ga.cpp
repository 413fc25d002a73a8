#include <algorithm>
#include <chrono>

#include "mtea/evolution.hpp"

namespace mtea::evolution {

int binary_tournament(const Population& pop, Rng& rng) {
  const auto n = static_cast<std::size_t>(pop.size());
  const int i = static_cast<int>(uniform_index(rng, n));
  const int j = static_cast<int>(uniform_index(rng, n));
  const auto& a = pop.members[i];
  const auto& b = pop.members[j];
  if (a.fitness != b.fitness) return a.fitness < b.fitness ? i : j;
  return std::min(i, j);
}

Population generation_step(const Population& pop, const ProblemInstance& instance,
                           const EvoParams& params, Rng& rng, long long* evaluations) {
  const int n = pop.size();
  const int budget = params.ls_budget_for(instance.dimension);
  std::vector<Individual> offspring;
  offspring.reserve(static_cast<std::size_t>(n));
  while (static_cast<int>(offspring.size()) < n) {
    const Permutation& p1 = pop.members[binary_tournament(pop, rng)].genome;
    const Permutation& p2 = pop.members[binary_tournament(pop, rng)].genome;
    auto [c1, c2] = order_crossover(p1, p2, rng);
    for (Permutation* child : {&c1, &c2}) {
      if (static_cast<int>(offspring.size()) == n) break;
      if (instance.dimension >= 2 && uniform_unit(rng) < params.mutation_prob)
        *child = swap_mutation(*child, rng);
      Permutation improved = local_search(*child, instance, budget);
      const double f = problems::evaluate(instance, improved);
      if (evaluations) ++*evaluations;
      offspring.push_back({std::move(improved), f});
    }
  }
  Population next;
  next.members.reserve(static_cast<std::size_t>(2 * n));
  next.members = pop.members;
  for (auto& o : offspring) next.members.push_back(std::move(o));
  next.sort();
  next.members.resize(static_cast<std::size_t>(n));
  return next;
}

MultitaskRun run_sto(const ProblemInstance& instance, const EvoParams& params, int generations,
                     Rng& rng) {
  params.validate();
  if (generations < 0) throw ContractViolation("generations must be non-negative");
  const auto start = std::chrono::steady_clock::now();
  MultitaskRun run;
  run.task_names = {instance.name};
  run.traces.assign(1, {});
  run.interactions.assign(1, std::vector<long long>(1, 0));
  run.evaluations.assign(1, 0);
  run.transfer_evaluations.assign(1, 0);

  Population pop = random_population(instance, params.pop_size, rng);
  run.evaluations[0] += params.pop_size;
  run.traces[0].push_back(pop.best().fitness);
  for (int g = 1; g <= generations; ++g) {
    pop = generation_step(pop, instance, params, rng, &run.evaluations[0]);
    run.traces[0].push_back(pop.best().fitness);
  }
  run.best.push_back(pop.best());
  run.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return run;
}

}  // namespace mtea::evolution
