#include <algorithm>
#include <limits>

#include "mtea/transfer.hpp"

namespace mtea::transfer {

int factorial_rank(double value, const Population& pop) {
  int rank = 1;
  for (const auto& m : pop.members)
    if (m.fitness < value) ++rank;
  return rank;
}

double ability_fitness(const Individual& ind, const Population& source_pop, const Population& target_pop,
                       const ProblemInstance& target, SeedCandidate* mapped,
                       unification::OpCounter* counter) {
  const double v_source = ability(factorial_rank(ind.fitness, source_pop));
  Permutation genome = unification::unify_dimension(ind.genome, target, counter);
  const double f = problems::evaluate(target, genome);
  const double v_target = ability(factorial_rank(f, target_pop));
  const double af = (v_source + v_target) / 2.0;
  if (mapped) {
    mapped->genome = std::move(genome);
    mapped->target_fitness = f;
    mapped->ability_fitness = af;
  }
  return af;
}

std::vector<SeedCandidate> select_candidates(const Population& source_pop, const Population& target_pop,
                                             const ProblemInstance& target, int p_st, int source_task,
                                             long long* evaluations, unification::OpCounter* counter) {
  if (p_st < 1) throw ContractViolation("select_candidates needs p >= 1");
  const int pool = std::min(2 * p_st, source_pop.size());
  std::vector<SeedCandidate> out(static_cast<std::size_t>(pool));
  for (int i = 0; i < pool; ++i) {
    ability_fitness(source_pop.members[i], source_pop, target_pop, target, &out[i], counter);
    out[i].source_task = source_task;
  }
  if (evaluations) *evaluations += pool;
  std::stable_sort(out.begin(), out.end(), [](const SeedCandidate& a, const SeedCandidate& b) {
    return a.ability_fitness > b.ability_fitness;
  });
  out.resize(static_cast<std::size_t>(std::min(p_st, pool)));
  return out;
}

Permutation grow_seed(const Permutation& genome, const ProblemInstance& target,
                      std::optional<int> growth_budget) {
  const int budget = growth_budget.value_or(default_growth_budget(target.dimension));
  if (budget < 0) throw ContractViolation("growth budget must be non-negative");
  return evolution::local_search(genome, target, budget);
}

Population insert_seeds(const Population& target_pop, std::span<const Individual> seeds,
                        problems::ProblemKind kind, std::vector<int>* replaced) {
  const int n = target_pop.size();
  if (static_cast<int>(seeds.size()) > n)
    throw ContractViolation("more seeds than population members");
  Population out = target_pop;
  std::vector<char> taken(static_cast<std::size_t>(n), 0);
  if (replaced) replaced->assign(seeds.size(), -1);
  const double incumbent = n > 0 ? target_pop.members[0].fitness : 0.0;
  for (std::size_t i = 0; i < seeds.size(); ++i) {
    const Individual& seed = seeds[i];
    int pick = -1;
    int pick_dist = std::numeric_limits<int>::max();
    for (int j = 0; j < n; ++j) {
      if (taken[j]) continue;
      if (j == 0 && seed.fitness > incumbent) continue;
      const Individual& m = target_pop.members[j];
      const int dist = unification::hamming_count(seed.genome, m.genome, kind);
      const bool better = pick < 0 || dist < pick_dist ||
                          (dist == pick_dist && m.fitness > target_pop.members[pick].fitness);
      if (better) {
        pick = j;
        pick_dist = dist;
      }
    }
    if (pick < 0) continue;
    taken[pick] = 1;
    out.members[pick] = seed;
    if (replaced) (*replaced)[i] = pick;
  }
  out.sort();
  return out;
}

namespace {

RoundOutcome commit(int target_idx, std::span<const Population> populations,
                    std::span<const ProblemInstance> instances, std::vector<Individual> seeds,
                    const std::vector<int>& origin, RoundOutcome out) {
  std::vector<int> replaced;
  out.population = insert_seeds(populations[target_idx], seeds, instances[target_idx].kind, &replaced);
  for (std::size_t i = 0; i < seeds.size(); ++i)
    if (replaced[i] >= 0) ++out.seeds_per_source[origin[i]];
  return out;
}

}  // namespace

RoundOutcome transfer_round(int target_idx, std::span<const Population> populations,
                            std::span<const ProblemInstance> instances, const TransferPlan& plan,
                            std::optional<int> growth_budget, unification::OpCounter* counter) {
  const int k = static_cast<int>(populations.size());
  RoundOutcome out;
  out.seeds_per_source.assign(static_cast<std::size_t>(k), 0);
  const ProblemInstance& target = instances[target_idx];
  const Population& target_pop = populations[target_idx];

  std::vector<SeedCandidate> pool;
  for (int s = 0; s < k; ++s) {
    if (s == target_idx || plan.strengths[s] <= 0) continue;
    auto cands = select_candidates(populations[s], target_pop, target, plan.strengths[s], s,
                                   &out.evaluations, counter);
    for (auto& c : cands) pool.push_back(std::move(c));
  }
  if (pool.empty()) {
    out.population = target_pop;
    return out;
  }
  std::stable_sort(pool.begin(), pool.end(), [](const SeedCandidate& a, const SeedCandidate& b) {
    return a.ability_fitness > b.ability_fitness;
  });
  const std::size_t count = std::min<std::size_t>(static_cast<std::size_t>(std::max(plan.lambda, 0)), pool.size());
  std::vector<Individual> seeds;
  std::vector<int> origin;
  for (std::size_t i = 0; i < count; ++i) {
    Permutation grown = grow_seed(pool[i].genome, target, growth_budget);
    const double f = problems::evaluate(target, grown);
    ++out.evaluations;
    seeds.push_back({std::move(grown), f});
    origin.push_back(pool[i].source_task);
  }
  return commit(target_idx, populations, instances, std::move(seeds), origin, std::move(out));
}

RoundOutcome direct_transfer_round(int target_idx, std::span<const Population> populations,
                                   std::span<const ProblemInstance> instances, const TransferPlan& plan,
                                   unification::OpCounter* counter) {
  const int k = static_cast<int>(populations.size());
  RoundOutcome out;
  out.seeds_per_source.assign(static_cast<std::size_t>(k), 0);
  const ProblemInstance& target = instances[target_idx];
  const int capacity = populations[target_idx].size();
  std::vector<Individual> seeds;
  std::vector<int> origin;
  for (int s = 0; s < k; ++s) {
    if (s == target_idx || plan.strengths[s] <= 0) continue;
    const int take = std::min(plan.strengths[s], populations[s].size());
    for (int i = 0; i < take && static_cast<int>(seeds.size()) < capacity; ++i) {
      Permutation g = unification::unify_dimension(populations[s].members[i].genome, target, counter);
      const double f = problems::evaluate(target, g);
      ++out.evaluations;
      seeds.push_back({std::move(g), f});
      origin.push_back(s);
    }
  }
  if (seeds.empty()) {
    out.population = populations[target_idx];
    return out;
  }
  return commit(target_idx, populations, instances, std::move(seeds), origin, std::move(out));
}

}  // namespace mtea::transfer
