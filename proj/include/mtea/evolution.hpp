#pragma once

/// @file evolution.hpp
/// @brief Permutation operators, problem-matched local search and the
/// single-task hybrid GA.

#include <cstdint>
#include <limits>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "mtea/problems.hpp"

namespace mtea::evolution {

using problems::Permutation;
using problems::ProblemInstance;
using problems::SquareMatrix;

/// Budget value meaning "run to local optimality".
inline constexpr int unlimited = std::numeric_limits<int>::max();

struct Individual {
  Permutation genome;
  double fitness = 0.0;
};

/// Fixed-size set of individuals, ascending by fitness.
struct Population {
  std::vector<Individual> members;

  int size() const noexcept { return static_cast<int>(members.size()); }
  const Individual& best() const { return members.front(); }
  /// Stable ascending sort by fitness.
  void sort();
  bool is_sorted() const;
};

struct EvoParams {
  int pop_size = 30;
  double mutation_prob = 0.1;
  /// Improving moves per local-search call; unset means D.
  std::optional<int> ls_budget;

  void validate() const;
  int ls_budget_for(int dimension) const { return ls_budget.value_or(dimension); }
};

/// Random initial population of `n` evaluated permutations, sorted.
Population random_population(const ProblemInstance& instance, int n, Rng& rng);

// --- variation ------------------------------------------------------------------

/// OX with fixed inclusive cut points a <= b (0-based).
std::pair<Permutation, Permutation> order_crossover(const Permutation& p1, const Permutation& p2,
                                                    int a, int b);
/// OX with random cut points.
std::pair<Permutation, Permutation> order_crossover(const Permutation& p1, const Permutation& p2,
                                                    Rng& rng);

Permutation swap_positions(const Permutation& s, int i, int j);
/// Exchanges two distinct random positions.
Permutation swap_mutation(const Permutation& s, Rng& rng);

// --- local search -----------------------------------------------------------------

/// First-improvement 2-opt on the (giant) tour; TSP and CVRP.
Permutation two_opt(const Permutation& s, const ProblemInstance& instance, int budget);
/// First-improvement pairwise position swaps; QAP.
Permutation swap_local_search(const Permutation& s, const ProblemInstance& instance, int budget);
/// First-improvement remove-and-reinsert; LOP.
Permutation insertion_local_search(const Permutation& s, const ProblemInstance& instance, int budget);

/// Picks the neighborhood matching the problem kind. `moves`, when given,
/// receives the number of improving moves applied.
Permutation local_search(const Permutation& s, const ProblemInstance& instance, int budget,
                         int* moves = nullptr);

// --- GA ---------------------------------------------------------------------------

/// Index of the binary tournament winner (lower fitness, then lower index).
int binary_tournament(const Population& pop, Rng& rng);

/// One generation: N offspring by tournament + OX + swap mutation + local
/// search, then the best N of parents and offspring. `evaluations` is
/// incremented once per offspring.
Population generation_step(const Population& pop, const ProblemInstance& instance,
                           const EvoParams& params, Rng& rng, long long* evaluations = nullptr);

/// Trajectory of a (multi)task run.
struct MultitaskRun {
  std::vector<std::string> task_names;
  /// traces[k][g] = best fitness of task k after generation g; g = 0 is the
  /// initial population.
  std::vector<std::vector<double>> traces;
  std::vector<Individual> best;
  /// One K x K matrix per transfer round; entry (t, s) = sim of source s
  /// mapped onto target t.
  std::vector<SquareMatrix> similarity;
  /// interactions[t][s] = seeds moved from s into t.
  std::vector<std::vector<long long>> interactions;
  /// Fitness evaluations spent by evolution, per task.
  std::vector<long long> evaluations;
  /// Fitness evaluations spent by transfer (ability vectors, seeds), per task.
  std::vector<long long> transfer_evaluations;
  std::uint64_t seed = 0;
  double wall_seconds = 0.0;
};

/// Single-task hybrid GA.
MultitaskRun run_sto(const ProblemInstance& instance, const EvoParams& params, int generations,
                     Rng& rng);

}  // namespace mtea::evolution
