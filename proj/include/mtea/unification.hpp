#pragma once

/// @file unification.hpp
/// @brief Mapping solutions between tasks of different dimension, solution
/// similarity and per-target transfer strengths.

#include <span>
#include <utility>
#include <vector>

#include "mtea/problems.hpp"

namespace mtea::unification {

using problems::Permutation;
using problems::ProblemInstance;
using problems::ProblemKind;
using problems::SquareMatrix;

/// Counts candidate insertion positions tried by unify_dimension.
struct OpCounter {
  long long positions = 0;
};

/// Maps `x` (labels 1..Ds) onto the label set 1..Dt of `target`.
///
/// Growing inserts Ds+1..Dt in ascending order, each at the position of least
/// objective increase on the partial solution (ties: lowest position).
/// Shrinking drops labels above Dt keeping order. `positions`, if given,
/// receives the chosen insertion index of each inserted label.
Permutation unify_dimension(const Permutation& x, const ProblemInstance& target,
                            OpCounter* counter = nullptr, std::vector<int>* positions = nullptr);

/// Labels <= dim of `x`, order preserved.
Permutation shrink_to(const Permutation& x, int dim);

/// Unordered edge {u, v} with u <= v.
using Edge = std::pair<int, int>;
/// Sorted edges of the closed tour.
using EdgeSet = std::vector<Edge>;

EdgeSet to_edge_set(const Permutation& s);

/// Kind-specific mismatch count: size of the edge-set symmetric difference for
/// tour kinds (at most 2D), differing positions for QAP/LOP (at most D).
/// Sizes must agree.
int hamming_count(const Permutation& a, const Permutation& b, ProblemKind kind);

/// 1 - normalized Hamming distance, in [0, 1].
double hamming_similarity(const Permutation& a, const Permutation& b, ProblemKind kind);

/// sim(t, s) = hamming_similarity(unify(best_s -> t), best_t); diagonal 1.
SquareMatrix build_similarity_matrix(std::span<const Permutation> bests,
                                     std::span<const ProblemInstance> instances,
                                     OpCounter* counter = nullptr);

/// Sources below this similarity get no transfer.
inline constexpr double similarity_threshold = 0.1;

/// Integer split of `eps` among sources proportional to similarity, largest
/// remainder, ties to lower index. All zero if no source passes the filter.
std::vector<int> transfer_strengths(std::span<const double> sims, int eps);

struct TransferPlan {
  int target = 0;
  /// strengths[s] = candidates drawn from source s; 0 for the target itself.
  std::vector<int> strengths;
  int eps = 0;
  int lambda = 0;

  int total() const;
};

/// Plan for row `target` of `sim`; the target's own column is excluded.
TransferPlan plan_transfer(const SquareMatrix& sim, int target, int eps, int lambda);

}  // namespace mtea::unification
