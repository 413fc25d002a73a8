#pragma once

/// @file orchestrator.hpp
/// @brief Multitask main loops: MTEA-AST (and its direct-insertion ablation)
/// and the MFEA baseline over a unified search space.

#include <cstdint>
#include <optional>
#include <vector>

#include "mtea/evolution.hpp"
#include "mtea/transfer.hpp"
#include "mtea/unification.hpp"

namespace mtea::orchestrator {

using evolution::MultitaskRun;
using problems::Permutation;
using problems::ProblemInstance;

struct MultitaskConfig {
  std::vector<ProblemInstance> instances;
  int pop_size = 30;
  int generations = 300;
  int eps = 10;
  int lambda = 3;
  int alpha = 10;
  double mutation_prob = 0.1;
  std::optional<int> ls_budget;
  std::optional<int> growth_budget;
  /// Ablation: insert the top p(s,t) source members directly, no seed
  /// selection or growth.
  bool no_seed_selection = false;
  std::uint64_t seed = 1;

  evolution::EvoParams evo_params() const;
  /// Throws ContractViolation on any violated constraint.
  void validate() const;
};

/// Per-task RNG stream seed.
inline std::uint64_t task_seed(std::uint64_t master, int task) {
  return derive_seed(master, static_cast<std::uint64_t>(task));
}

/// Optional instrumentation of a run.
struct RunProbe {
  /// Unification positions per transfer round.
  std::vector<long long> unify_positions;
};

MultitaskRun run_mtea_ast(const MultitaskConfig& config, RunProbe* probe = nullptr);

/// Labels <= task_dim of a unified genome, order preserved.
Permutation decode_unified(const Permutation& genome, int task_dim);

/// Writes the decoded order of a task-local permutation back into the
/// positions its labels occupy in the unified genome.
Permutation encode_unified(const Permutation& genome, const Permutation& decoded);

/// Factorial ranks (1-based; ties to the lower index) of each individual on
/// each task from costs[i][k]; +inf costs rank last.
std::vector<std::vector<int>> factorial_ranks(const std::vector<std::vector<double>>& costs);

/// argmin over a rank row, ties to the lower task index.
int skill_factor(const std::vector<int>& ranks);

MultitaskRun run_mfea_baseline(const MultitaskConfig& config, double rmp = 0.9);

}  // namespace mtea::orchestrator
