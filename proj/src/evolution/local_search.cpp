#include <algorithm>
#include <cmath>

#include "mtea/evolution.hpp"

namespace mtea::evolution {

namespace {

using problems::ProblemKind;

bool improves(double delta, double current) {
  return delta < -(1e-10 + 1e-12 * std::abs(current));
}

int tsp_two_opt(std::vector<int>& s, const SquareMatrix& d, int budget) {
  const int n = static_cast<int>(s.size());
  int moves = 0;
  if (n < 4 || budget <= 0) return 0;
  bool improved = true;
  while (improved) {
    improved = false;
    for (int i = 0; i + 2 < n; ++i) {
      for (int j = i + 2; j < n; ++j) {
        if (i == 0 && j == n - 1) continue;
        const int a = s[i] - 1, b = s[i + 1] - 1, c = s[j] - 1, e = s[(j + 1) % n] - 1;
        const double delta = d(a, c) + d(b, e) - d(a, b) - d(c, e);
        if (improves(delta, d(a, b) + d(c, e))) {
          std::reverse(s.begin() + i + 1, s.begin() + j + 1);
          improved = true;
          if (++moves >= budget) return moves;
        }
      }
    }
  }
  return moves;
}

/// Split-decoder state after a prefix of the giant tour.
struct SplitState {
  double cost = 0.0;
  double load = 0.0;
  int prev = 0;
};

struct CvrpWalker {
  const ProblemInstance& inst;

  void step(SplitState& st, int c) const {
    const double q = inst.demands[c - 1];
    if (st.prev != 0 && st.load + q > inst.capacity) {
      st.cost += inst.dist(st.prev, 0);
      st.prev = 0;
      st.load = 0.0;
    }
    st.cost += inst.dist(st.prev, c);
    st.load += q;
    st.prev = c;
  }
  double finish(const SplitState& st) const {
    return st.prev != 0 ? st.cost + inst.dist(st.prev, 0) : st.cost;
  }
};

int cvrp_two_opt(std::vector<int>& s, const ProblemInstance& inst, int budget) {
  const int n = static_cast<int>(s.size());
  if (n < 2 || budget <= 0) return 0;
  const CvrpWalker walk{inst};
  std::vector<SplitState> prefix(static_cast<std::size_t>(n) + 1);
  auto rebuild = [&](int from) {
    for (int k = from; k < n; ++k) {
      prefix[k + 1] = prefix[k];
      walk.step(prefix[k + 1], s[k]);
    }
  };
  rebuild(0);
  double current = walk.finish(prefix[n]);
  int moves = 0;
  bool improved = true;
  while (improved) {
    improved = false;
    for (int l = 0; l + 1 < n; ++l) {
      for (int r = l + 1; r < n; ++r) {
        SplitState st = prefix[l];
        for (int k = r; k >= l; --k) walk.step(st, s[k]);
        for (int k = r + 1; k < n; ++k) walk.step(st, s[k]);
        const double cost = walk.finish(st);
        if (improves(cost - current, current)) {
          std::reverse(s.begin() + l, s.begin() + r + 1);
          rebuild(l);
          current = cost;
          improved = true;
          if (++moves >= budget) return moves;
        }
      }
    }
  }
  return moves;
}

double qap_swap_delta(const std::vector<int>& p, const ProblemInstance& inst, int r, int t) {
  const SquareMatrix& F = inst.flow;
  const SquareMatrix& D = inst.dist;
  const int n = static_cast<int>(p.size());
  const int a = p[r] - 1, b = p[t] - 1;
  double delta = (D(r, r) - D(t, t)) * (F(b, b) - F(a, a)) + (D(r, t) - D(t, r)) * (F(b, a) - F(a, b));
  for (int k = 0; k < n; ++k) {
    if (k == r || k == t) continue;
    const int c = p[k] - 1;
    delta += (D(k, r) - D(k, t)) * (F(c, b) - F(c, a)) + (D(r, k) - D(t, k)) * (F(b, c) - F(a, c));
  }
  return delta;
}

int qap_swap(std::vector<int>& p, const ProblemInstance& inst, int budget) {
  const int n = static_cast<int>(p.size());
  if (n < 2 || budget <= 0) return 0;
  double current = problems::evaluate_labels(inst, p);
  int moves = 0;
  bool improved = true;
  while (improved) {
    improved = false;
    for (int r = 0; r + 1 < n; ++r) {
      for (int t = r + 1; t < n; ++t) {
        const double delta = qap_swap_delta(p, inst, r, t);
        if (improves(delta, current)) {
          std::swap(p[r], p[t]);
          current += delta;
          improved = true;
          if (++moves >= budget) return moves;
        }
      }
    }
  }
  return moves;
}

void move_element(std::vector<int>& s, int from, int to) {
  const int x = s[from];
  if (from < to)
    std::copy(s.begin() + from + 1, s.begin() + to + 1, s.begin() + from);
  else
    std::copy_backward(s.begin() + to, s.begin() + from, s.begin() + from + 1);
  s[to] = x;
}

int lop_insertion(std::vector<int>& s, const ProblemInstance& inst, int budget) {
  const int n = static_cast<int>(s.size());
  if (n < 2 || budget <= 0) return 0;
  const SquareMatrix& w = inst.weight;
  double current = problems::evaluate_labels(inst, s);
  int moves = 0;
  bool improved = true;
  while (improved) {
    improved = false;
    for (int i = 0; i < n; ++i) {
      const int x = s[i] - 1;
      int target = -1;
      double best_delta = 0.0;
      double delta = 0.0;
      for (int j = i + 1; j < n && target < 0; ++j) {
        const int y = s[j] - 1;
        delta += w(x, y) - w(y, x);
        if (improves(delta, current)) target = j, best_delta = delta;
      }
      delta = 0.0;
      for (int j = i - 1; j >= 0 && target < 0; --j) {
        const int y = s[j] - 1;
        delta += w(y, x) - w(x, y);
        if (improves(delta, current)) target = j, best_delta = delta;
      }
      if (target >= 0) {
        move_element(s, i, target);
        current += best_delta;
        improved = true;
        if (++moves >= budget) return moves;
      }
    }
  }
  return moves;
}

void require_kind(const ProblemInstance& inst, bool ok, const char* op) {
  if (!ok)
    throw ContractViolation(std::string(op) + " does not apply to " +
                            std::string(problems::to_string(inst.kind)) + " instances");
}

void require_size(const Permutation& s, const ProblemInstance& inst) {
  if (s.size() != inst.dimension) throw ContractViolation("permutation length does not match dimension");
}

}  // namespace

Permutation two_opt(const Permutation& s, const ProblemInstance& instance, int budget) {
  require_kind(instance, problems::is_permutation_based(instance.kind), "two_opt");
  require_size(s, instance);
  std::vector<int> order = s.order();
  if (instance.kind == ProblemKind::TSP)
    tsp_two_opt(order, instance.dist, budget);
  else
    cvrp_two_opt(order, instance, budget);
  return Permutation::unchecked(std::move(order));
}

Permutation swap_local_search(const Permutation& s, const ProblemInstance& instance, int budget) {
  require_kind(instance, instance.kind == ProblemKind::QAP, "swap_local_search");
  require_size(s, instance);
  std::vector<int> order = s.order();
  qap_swap(order, instance, budget);
  return Permutation::unchecked(std::move(order));
}

Permutation insertion_local_search(const Permutation& s, const ProblemInstance& instance, int budget) {
  require_kind(instance, instance.kind == ProblemKind::LOP, "insertion_local_search");
  require_size(s, instance);
  std::vector<int> order = s.order();
  lop_insertion(order, instance, budget);
  return Permutation::unchecked(std::move(order));
}

Permutation local_search(const Permutation& s, const ProblemInstance& instance, int budget, int* moves) {
  require_size(s, instance);
  std::vector<int> order = s.order();
  int applied = 0;
  switch (instance.kind) {
    case ProblemKind::TSP:
      applied = tsp_two_opt(order, instance.dist, budget);
      break;
    case ProblemKind::CVRP:
      applied = cvrp_two_opt(order, instance, budget);
      break;
    case ProblemKind::QAP:
      applied = qap_swap(order, instance, budget);
      break;
    case ProblemKind::LOP:
      applied = lop_insertion(order, instance, budget);
      break;
    default:
      throw ContractViolation("local_search: unknown problem kind");
  }
  if (moves) *moves = applied;
  return Permutation::unchecked(std::move(order));
}

}  // namespace mtea::evolution
