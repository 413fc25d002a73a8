#include <algorithm>
#include <cmath>
#include <numeric>

#include "mtea/unification.hpp"

namespace mtea::unification {

namespace {

/// Position in 0..m minimizing the cost of inserting `c` into `cur`.
int best_position(const std::vector<int>& cur, int c, const ProblemInstance& target) {
  const int m = static_cast<int>(cur.size());
  int best = 0;
  double best_cost = 0.0;
  auto consider = [&](int k, double cost) {
    if (k == 0 || cost < best_cost) {
      best = k;
      best_cost = cost;
    }
  };
  switch (target.kind) {
    case ProblemKind::TSP: {
      if (m == 0) return 0;
      const SquareMatrix& d = target.dist;
      for (int k = 0; k <= m; ++k) {
        const int prev = cur[(k - 1 + m) % m] - 1;
        const int next = cur[k % m] - 1;
        consider(k, d(prev, c - 1) + d(c - 1, next) - d(prev, next));
      }
      break;
    }
    case ProblemKind::LOP: {
      const SquareMatrix& w = target.weight;
      std::vector<double> after(static_cast<std::size_t>(m) + 1, 0.0);
      for (int q = m - 1; q >= 0; --q) after[q] = after[q + 1] + w(c - 1, cur[q] - 1);
      double before = 0.0;
      for (int k = 0; k <= m; ++k) {
        consider(k, -(before + after[k] + w(c - 1, c - 1)));
        if (k < m) before += w(cur[k] - 1, c - 1);
      }
      break;
    }
    case ProblemKind::CVRP:
    case ProblemKind::QAP: {
      std::vector<int> trial(cur.size() + 1);
      for (int k = 0; k <= m; ++k) {
        std::copy(cur.begin(), cur.begin() + k, trial.begin());
        trial[k] = c;
        std::copy(cur.begin() + k, cur.end(), trial.begin() + k + 1);
        consider(k, problems::evaluate_labels(target, trial));
      }
      break;
    }
  }
  return best;
}

}  // namespace

Permutation shrink_to(const Permutation& x, int dim) {
  std::vector<int> out;
  out.reserve(static_cast<std::size_t>(std::min(dim, x.size())));
  for (int v : x)
    if (v <= dim) out.push_back(v);
  if (static_cast<int>(out.size()) != dim) throw ContractViolation("shrink_to: dimension exceeds source");
  return Permutation::unchecked(std::move(out));
}

Permutation unify_dimension(const Permutation& x, const ProblemInstance& target, OpCounter* counter,
                            std::vector<int>* positions) {
  const int ds = x.size();
  const int dt = target.dimension;
  if (positions) positions->clear();
  if (ds == dt) return x;
  if (ds > dt) return shrink_to(x, dt);
  std::vector<int> cur = x.order();
  cur.reserve(static_cast<std::size_t>(dt));
  for (int c = ds + 1; c <= dt; ++c) {
    const int k = best_position(cur, c, target);
    if (counter) counter->positions += static_cast<long long>(cur.size()) + 1;
    if (positions) positions->push_back(k);
    cur.insert(cur.begin() + k, c);
  }
  return Permutation::unchecked(std::move(cur));
}

EdgeSet to_edge_set(const Permutation& s) {
  const int n = s.size();
  EdgeSet edges;
  edges.reserve(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    const int u = s[i];
    const int v = s[(i + 1) % n];
    edges.emplace_back(std::min(u, v), std::max(u, v));
  }
  std::sort(edges.begin(), edges.end());
  return edges;
}

namespace {

/// neighbors[2*(c-1)], neighbors[2*(c-1)+1] = tour neighbors of city c.
std::vector<int> tour_neighbors(const Permutation& s) {
  const int n = s.size();
  std::vector<int> nb(static_cast<std::size_t>(2 * n));
  for (int i = 0; i < n; ++i) {
    const int c = s[i] - 1;
    nb[2 * c] = s[(i - 1 + n) % n];
    nb[2 * c + 1] = s[(i + 1) % n];
  }
  return nb;
}

}  // namespace

int hamming_count(const Permutation& a, const Permutation& b, ProblemKind kind) {
  if (a.size() != b.size()) throw ContractViolation("hamming distance needs equal dimensions");
  const int n = a.size();
  int count = 0;
  if (problems::is_permutation_based(kind)) {
    const auto na = tour_neighbors(a);
    const auto nb = tour_neighbors(b);
    for (int c = 0; c < n; ++c) {
      bool used0 = false, used1 = false;
      for (int side = 0; side < 2; ++side) {
        const int x = na[2 * c + side];
        if (!used0 && x == nb[2 * c]) {
          used0 = true;
        } else if (!used1 && x == nb[2 * c + 1]) {
          used1 = true;
        } else {
          ++count;
        }
      }
    }
  } else {
    for (int i = 0; i < n; ++i) count += a[i] != b[i];
  }
  return count;
}

double hamming_similarity(const Permutation& a, const Permutation& b, ProblemKind kind) {
  const int count = hamming_count(a, b, kind);
  const int n = a.size();
  if (n == 0) return 1.0;
  const double scale = problems::is_permutation_based(kind) ? 2.0 * n : static_cast<double>(n);
  return 1.0 - count / scale;
}

SquareMatrix build_similarity_matrix(std::span<const Permutation> bests,
                                     std::span<const ProblemInstance> instances, OpCounter* counter) {
  if (bests.size() != instances.size()) throw ContractViolation("one best solution per task required");
  const int k = static_cast<int>(bests.size());
  SquareMatrix sim(k, 0.0);
  for (int t = 0; t < k; ++t) {
    for (int s = 0; s < k; ++s) {
      if (s == t) {
        sim(t, s) = 1.0;
        continue;
      }
      const Permutation mapped = unify_dimension(bests[s], instances[t], counter);
      sim(t, s) = hamming_similarity(mapped, bests[t], instances[t].kind);
    }
  }
  return sim;
}

std::vector<int> transfer_strengths(std::span<const double> sims, int eps) {
  if (eps < 1) throw ContractViolation("seed-candidate budget must be at least 1");
  const std::size_t k = sims.size();
  std::vector<int> p(k, 0);
  double total = 0.0;
  for (double s : sims)
    if (s >= similarity_threshold) total += s;
  if (total <= 0.0) return p;
  std::vector<double> remainder(k, -1.0);
  int assigned = 0;
  for (std::size_t s = 0; s < k; ++s) {
    if (sims[s] < similarity_threshold) continue;
    const double quota = eps * sims[s] / total;
    p[s] = static_cast<int>(std::floor(quota + 1e-9));
    remainder[s] = quota - p[s];
    assigned += p[s];
  }
  std::vector<std::size_t> order(k);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return remainder[a] > remainder[b]; });
  for (std::size_t i = 0; assigned < eps && i < k; ++i) {
    if (sims[order[i]] < similarity_threshold) break;
    ++p[order[i]];
    ++assigned;
  }
  return p;
}

int TransferPlan::total() const { return std::accumulate(strengths.begin(), strengths.end(), 0); }

TransferPlan plan_transfer(const SquareMatrix& sim, int target, int eps, int lambda) {
  const int k = sim.size();
  std::vector<double> row(static_cast<std::size_t>(k), 0.0);
  for (int s = 0; s < k; ++s) row[s] = s == target ? 0.0 : sim(target, s);
  TransferPlan plan;
  plan.target = target;
  plan.eps = eps;
  plan.lambda = lambda;
  plan.strengths = transfer_strengths(row, eps);
  return plan;
}

}  // namespace mtea::unification
