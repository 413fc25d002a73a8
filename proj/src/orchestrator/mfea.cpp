#include <algorithm>
#include <chrono>
#include <limits>
#include <numeric>

#include "mtea/orchestrator.hpp"

namespace mtea::orchestrator {

Permutation decode_unified(const Permutation& genome, int task_dim) {
  return unification::shrink_to(genome, task_dim);
}

Permutation encode_unified(const Permutation& genome, const Permutation& decoded) {
  const int dim = decoded.size();
  std::vector<int> out = genome.order();
  int next = 0;
  for (int& v : out)
    if (v <= dim) v = decoded[next++];
  if (next != dim) throw ContractViolation("encode_unified: decoded length does not match genome");
  return Permutation::unchecked(std::move(out));
}

std::vector<std::vector<int>> factorial_ranks(const std::vector<std::vector<double>>& costs) {
  const std::size_t n = costs.size();
  const std::size_t k = n ? costs.front().size() : 0;
  std::vector<std::vector<int>> ranks(n, std::vector<int>(k, 0));
  std::vector<std::size_t> order(n);
  for (std::size_t t = 0; t < k; ++t) {
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return costs[a][t] < costs[b][t]; });
    for (std::size_t r = 0; r < n; ++r) ranks[order[r]][t] = static_cast<int>(r) + 1;
  }
  return ranks;
}

int skill_factor(const std::vector<int>& ranks) {
  return static_cast<int>(std::min_element(ranks.begin(), ranks.end()) - ranks.begin());
}

namespace {

constexpr double inf = std::numeric_limits<double>::infinity();

struct Member {
  Permutation genome;
  std::vector<double> cost;
  int skill = 0;
  double scalar = 0.0;
};

/// Recomputes skill factors and scalar fitness, then keeps the best `keep`.
void select(std::vector<Member>& pool, std::size_t keep) {
  std::vector<std::vector<double>> costs;
  costs.reserve(pool.size());
  for (const auto& m : pool) costs.push_back(m.cost);
  const auto ranks = factorial_ranks(costs);
  for (std::size_t i = 0; i < pool.size(); ++i) {
    pool[i].skill = skill_factor(ranks[i]);
    pool[i].scalar = 1.0 / ranks[i][pool[i].skill];
  }
  std::stable_sort(pool.begin(), pool.end(),
                   [](const Member& a, const Member& b) { return a.scalar > b.scalar; });
  pool.resize(keep);
}

std::size_t tournament(const std::vector<Member>& pop, Rng& rng) {
  const auto i = uniform_index(rng, pop.size());
  const auto j = uniform_index(rng, pop.size());
  if (pop[i].scalar != pop[j].scalar) return pop[i].scalar > pop[j].scalar ? i : j;
  return std::min(i, j);
}

}  // namespace

MultitaskRun run_mfea_baseline(const MultitaskConfig& config, double rmp) {
  config.validate();
  if (!(rmp >= 0.0 && rmp <= 1.0)) throw ContractViolation("rmp must lie in [0, 1]");
  const auto start = std::chrono::steady_clock::now();
  const auto& instances = config.instances;
  const int k = static_cast<int>(instances.size());
  int dmax = 0;
  for (const auto& inst : instances) dmax = std::max(dmax, inst.dimension);
  const std::size_t size = static_cast<std::size_t>(k) * static_cast<std::size_t>(config.pop_size);

  MultitaskRun run;
  run.seed = config.seed;
  run.traces.assign(static_cast<std::size_t>(k), {});
  run.interactions.assign(static_cast<std::size_t>(k), std::vector<long long>(static_cast<std::size_t>(k), 0));
  run.evaluations.assign(static_cast<std::size_t>(k), 0);
  run.transfer_evaluations.assign(static_cast<std::size_t>(k), 0);
  for (const auto& inst : instances) run.task_names.push_back(inst.name);

  Rng rng(task_seed(config.seed, 0));
  std::vector<Member> pop(size);
  for (auto& m : pop) {
    m.genome = Permutation::random(dmax, rng);
    m.cost.resize(static_cast<std::size_t>(k));
    for (int t = 0; t < k; ++t) {
      m.cost[t] = problems::evaluate(instances[t], decode_unified(m.genome, instances[t].dimension));
      ++run.evaluations[t];
    }
  }
  select(pop, size);

  std::vector<evolution::Individual> best(static_cast<std::size_t>(k));
  auto record = [&]() {
    for (int t = 0; t < k; ++t) {
      const Member* top = nullptr;
      for (const auto& m : pop)
        if (m.cost[t] < inf && (!top || m.cost[t] < top->cost[t])) top = &m;
      if (top && (best[t].genome.size() == 0 || top->cost[t] < best[t].fitness))
        best[t] = {decode_unified(top->genome, instances[t].dimension), top->cost[t]};
      run.traces[t].push_back(best[t].fitness);
    }
  };
  record();

  auto finish_child = [&](Permutation genome, int skill, bool may_mutate) {
    const ProblemInstance& inst = instances[skill];
    if (may_mutate && dmax >= 2 && uniform_unit(rng) < config.mutation_prob)
      genome = evolution::swap_mutation(genome, rng);
    const Permutation decoded = decode_unified(genome, inst.dimension);
    const Permutation improved =
        evolution::local_search(decoded, inst, config.ls_budget.value_or(inst.dimension));
    Member child;
    child.genome = encode_unified(genome, improved);
    child.cost.assign(static_cast<std::size_t>(k), inf);
    child.cost[skill] = problems::evaluate(inst, improved);
    ++run.evaluations[skill];
    child.skill = skill;
    return child;
  };

  for (int g = 1; g <= config.generations; ++g) {
    std::vector<Member> offspring;
    offspring.reserve(size);
    while (offspring.size() < size) {
      const Member& a = pop[tournament(pop, rng)];
      const Member& b = pop[tournament(pop, rng)];
      if (a.skill == b.skill || uniform_unit(rng) < rmp) {
        auto [c1, c2] = evolution::order_crossover(a.genome, b.genome, rng);
        for (Permutation* c : {&c1, &c2}) {
          if (offspring.size() == size) break;
          const int skill = a.skill == b.skill ? a.skill : (uniform_unit(rng) < 0.5 ? a.skill : b.skill);
          offspring.push_back(finish_child(std::move(*c), skill, true));
        }
      } else {
        for (const Member* parent : {&a, &b}) {
          if (offspring.size() == size) break;
          Permutation c = dmax >= 2 ? evolution::swap_mutation(parent->genome, rng) : parent->genome;
          offspring.push_back(finish_child(std::move(c), parent->skill, false));
        }
      }
    }
    for (auto& o : offspring) pop.push_back(std::move(o));
    select(pop, size);
    record();
  }
  run.best = best;
  run.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return run;
}

}  // namespace mtea::orchestrator
