#pragma once

/// Small random integer-valued instances for property tests.

#include <cmath>
#include <string>

#include "mtea/problems.hpp"
#include "mtea/random.hpp"

namespace fixtures {

using mtea::Rng;
using mtea::problems::ProblemInstance;
using mtea::problems::ProblemKind;
using mtea::problems::SquareMatrix;

inline int rand_int(Rng& rng, int lo, int hi) {
  return lo + static_cast<int>(mtea::uniform_index(rng, static_cast<std::size_t>(hi - lo + 1)));
}

/// nint Euclidean matrix of `n` random points in [0,100]^2.
inline SquareMatrix euclid(int n, Rng& rng) {
  std::vector<double> x(n), y(n);
  for (int i = 0; i < n; ++i) {
    x[i] = rand_int(rng, 0, 100);
    y[i] = rand_int(rng, 0, 100);
  }
  SquareMatrix d(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      d(i, j) = i == j ? 0.0 : std::floor(std::hypot(x[i] - x[j], y[i] - y[j]) + 0.5);
  return d;
}

inline SquareMatrix random_matrix(int n, Rng& rng, int lo, int hi, bool zero_diagonal) {
  SquareMatrix m(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) m(i, j) = (zero_diagonal && i == j) ? 0.0 : rand_int(rng, lo, hi);
  return m;
}

inline ProblemInstance random_tsp(int n, Rng& rng) {
  return mtea::problems::make_tsp("tsp" + std::to_string(n), euclid(n, rng));
}

inline ProblemInstance random_cvrp(int n, Rng& rng) {
  std::vector<double> demand(n);
  for (auto& q : demand) q = rand_int(rng, 0, 10);
  return mtea::problems::make_cvrp("cvrp" + std::to_string(n), euclid(n + 1, rng), demand, 15.0);
}

inline ProblemInstance random_qap(int n, Rng& rng) {
  return mtea::problems::make_qap("qap" + std::to_string(n), random_matrix(n, rng, 0, 9, true),
                                  random_matrix(n, rng, 0, 9, true));
}

inline ProblemInstance random_lop(int n, Rng& rng) {
  return mtea::problems::make_lop("lop" + std::to_string(n), random_matrix(n, rng, 0, 20, false));
}

inline ProblemInstance random_instance(ProblemKind kind, int n, Rng& rng) {
  switch (kind) {
    case ProblemKind::TSP:
      return random_tsp(n, rng);
    case ProblemKind::CVRP:
      return random_cvrp(n, rng);
    case ProblemKind::QAP:
      return random_qap(n, rng);
    case ProblemKind::LOP:
      return random_lop(n, rng);
  }
  return {};
}

inline constexpr ProblemKind all_kinds[] = {ProblemKind::TSP, ProblemKind::CVRP, ProblemKind::QAP,
                                            ProblemKind::LOP};

}  // namespace fixtures
