#include <algorithm>

#include "mtea/evolution.hpp"

namespace mtea::evolution {

void Population::sort() {
  std::stable_sort(members.begin(), members.end(),
                   [](const Individual& a, const Individual& b) { return a.fitness < b.fitness; });
}

bool Population::is_sorted() const {
  return std::is_sorted(members.begin(), members.end(),
                        [](const Individual& a, const Individual& b) { return a.fitness < b.fitness; });
}

void EvoParams::validate() const {
  if (pop_size < 2) throw ContractViolation("population size must be at least 2");
  if (!(mutation_prob >= 0.0 && mutation_prob <= 1.0))
    throw ContractViolation("mutation probability must lie in [0, 1]");
  if (ls_budget && *ls_budget < 0) throw ContractViolation("local-search budget must be non-negative");
}

Population random_population(const ProblemInstance& instance, int n, Rng& rng) {
  Population pop;
  pop.members.reserve(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    Permutation p = Permutation::random(instance.dimension, rng);
    const double f = problems::evaluate(instance, p);
    pop.members.push_back({std::move(p), f});
  }
  pop.sort();
  return pop;
}

namespace {

// Child keeps `keep[a..b]` in place; the other slots take `fill` in order.
Permutation ox_child(const Permutation& keep, const Permutation& fill, int a, int b) {
  const int n = keep.size();
  std::vector<int> child(static_cast<std::size_t>(n), 0);
  std::vector<char> used(static_cast<std::size_t>(n) + 1, 0);
  for (int i = a; i <= b; ++i) {
    child[i] = keep[i];
    used[keep[i]] = 1;
  }
  int slot = 0;
  for (int v : fill) {
    if (used[v]) continue;
    while (slot >= a && slot <= b) ++slot;
    child[slot++] = v;
  }
  return Permutation::unchecked(std::move(child));
}

}  // namespace

std::pair<Permutation, Permutation> order_crossover(const Permutation& p1, const Permutation& p2,
                                                    int a, int b) {
  if (p1.size() != p2.size()) throw ContractViolation("order_crossover: parent lengths differ");
  if (a < 0 || b < a || b >= p1.size()) throw ContractViolation("order_crossover: bad cut points");
  return {ox_child(p1, p2, a, b), ox_child(p2, p1, a, b)};
}

std::pair<Permutation, Permutation> order_crossover(const Permutation& p1, const Permutation& p2,
                                                    Rng& rng) {
  if (p1.size() != p2.size()) throw ContractViolation("order_crossover: parent lengths differ");
  if (p1.size() == 0) return {p1, p2};
  const auto n = static_cast<std::size_t>(p1.size());
  int a = static_cast<int>(uniform_index(rng, n));
  int b = static_cast<int>(uniform_index(rng, n));
  if (a > b) std::swap(a, b);
  return order_crossover(p1, p2, a, b);
}

Permutation swap_positions(const Permutation& s, int i, int j) {
  std::vector<int> order = s.order();
  std::swap(order.at(static_cast<std::size_t>(i)), order.at(static_cast<std::size_t>(j)));
  return Permutation::unchecked(std::move(order));
}

Permutation swap_mutation(const Permutation& s, Rng& rng) {
  const auto n = static_cast<std::size_t>(s.size());
  if (n < 2) throw ContractViolation("swap_mutation needs at least two elements");
  const auto i = uniform_index(rng, n);
  auto j = uniform_index(rng, n - 1);
  if (j >= i) ++j;
  return swap_positions(s, static_cast<int>(i), static_cast<int>(j));
}

}  // namespace mtea::evolution
