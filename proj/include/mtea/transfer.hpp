#pragma once

/// @file transfer.hpp
/// @brief Seed selection by ability fitness, seed growth and nearest-Hamming
/// insertion into a target population.

#include <optional>
#include <span>
#include <vector>

#include "mtea/evolution.hpp"
#include "mtea/unification.hpp"

namespace mtea::transfer {

using evolution::Individual;
using evolution::Population;
using problems::Permutation;
using problems::ProblemInstance;
using unification::TransferPlan;

/// Source member already mapped to the target label set.
struct SeedCandidate {
  Permutation genome;
  /// Target objective of `genome` before growth.
  double target_fitness = 0.0;
  int source_task = 0;
  double ability_fitness = 0.0;
};

/// 1 + number of members with strictly smaller fitness.
int factorial_rank(double value, const Population& pop);

/// f(r) = 1 / r.
inline double ability(int rank) { return 1.0 / rank; }

/// Mean ability over the source and target ranks. `mapped`, when given,
/// receives the unified genome and its target fitness.
double ability_fitness(const Individual& ind, const Population& source_pop, const Population& target_pop,
                       const ProblemInstance& target, SeedCandidate* mapped = nullptr,
                       unification::OpCounter* counter = nullptr);

/// Best `p_st` by ability fitness among the first 2*p_st source members.
/// Ties keep source order. `evaluations` counts target evaluations.
std::vector<SeedCandidate> select_candidates(const Population& source_pop, const Population& target_pop,
                                             const ProblemInstance& target, int p_st, int source_task = 0,
                                             long long* evaluations = nullptr,
                                             unification::OpCounter* counter = nullptr);

/// Default growth budget: 50 neighborhood passes of D improving moves.
inline int default_growth_budget(int dimension) { return 50 * dimension; }

/// Problem-matched local search with the (large) growth budget.
Permutation grow_seed(const Permutation& genome, const ProblemInstance& target,
                      std::optional<int> growth_budget = std::nullopt);

/// Each seed replaces the closest not-yet-replaced original member (ties:
/// worse fitness, then lower index). The original best is only replaced by a
/// seed that is no worse. Returns the re-sorted population. `replaced[i]` is
/// the member index taken by seed i, or -1 if no member was eligible.
Population insert_seeds(const Population& target_pop, std::span<const Individual> seeds,
                        problems::ProblemKind kind, std::vector<int>* replaced = nullptr);

struct RoundOutcome {
  Population population;
  /// seeds inserted per source task.
  std::vector<int> seeds_per_source;
  long long evaluations = 0;
};

/// One target's transfer round over a snapshot of all populations.
RoundOutcome transfer_round(int target_idx, std::span<const Population> populations,
                            std::span<const ProblemInstance> instances, const TransferPlan& plan,
                            std::optional<int> growth_budget = std::nullopt,
                            unification::OpCounter* counter = nullptr);

/// Ablation round: the first p(s,t) members of each source by source fitness
/// are unified and inserted as they are.
RoundOutcome direct_transfer_round(int target_idx, std::span<const Population> populations,
                                   std::span<const ProblemInstance> instances, const TransferPlan& plan,
                                   unification::OpCounter* counter = nullptr);

}  // namespace mtea::transfer
