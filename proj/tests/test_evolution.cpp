#include <doctest.h>

#include <algorithm>
#include <filesystem>

#include "fixtures.hpp"
#include "mtea/evolution.hpp"
#include "oracles.hpp"

using namespace mtea;
using namespace mtea::evolution;
using problems::ProblemKind;

namespace {

int differing_positions(const Permutation& a, const Permutation& b) {
  int n = 0;
  for (int i = 0; i < a.size(); ++i) n += a[i] != b[i];
  return n;
}

/// Best objective over the full one-move neighborhood of `s`.
double best_neighbor(const Permutation& s, const ProblemInstance& inst) {
  const auto& p = s.order();
  const int n = static_cast<int>(p.size());
  double best = oracle::objective(inst, p);
  auto consider = [&](const std::vector<int>& q) { best = std::min(best, oracle::objective(inst, q)); };
  switch (inst.kind) {
    case ProblemKind::TSP:
    case ProblemKind::CVRP:
      for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
          auto q = p;
          std::reverse(q.begin() + i, q.begin() + j + 1);
          consider(q);
        }
      break;
    case ProblemKind::QAP:
      for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
          auto q = p;
          std::swap(q[i], q[j]);
          consider(q);
        }
      break;
    case ProblemKind::LOP:
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
          if (i == j) continue;
          auto q = p;
          const int v = q[i];
          q.erase(q.begin() + i);
          q.insert(q.begin() + j, v);
          consider(q);
        }
      break;
  }
  return best;
}

ProblemInstance square() {
  // corners (0,0), (0,10), (10,0), (10,10); [1,3,2,4] crosses
  const double xy[4][2] = {{0, 0}, {0, 10}, {10, 10}, {10, 0}};
  problems::SquareMatrix d(4);
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j)
      d(i, j) = std::floor(std::hypot(xy[i][0] - xy[j][0], xy[i][1] - xy[j][1]) + 0.5);
  return problems::make_tsp("square", d);
}

std::filesystem::path kroa100() { return std::filesystem::path(MTEA_TEST_DATA_DIR) / "tsplib" / "kroA100.tsp"; }

}  // namespace

TEST_SUITE("evolution") {
  TEST_CASE("order crossover with fixed cuts") {
    const Permutation p1({1, 2, 3, 4, 5}), p2({5, 4, 3, 2, 1});
    const auto [c1, c2] = order_crossover(p1, p2, 1, 3);
    CHECK(c1 == Permutation({5, 2, 3, 4, 1}));
    CHECK(c2 == Permutation({1, 4, 3, 2, 5}));
    const auto [d1, d2] = order_crossover(p1, p1, 0, 4);
    CHECK(d1 == p1);
    CHECK(d2 == p1);
    const auto [e1, e2] = order_crossover(Permutation({1, 2}), Permutation({2, 1}), 0, 0);
    CHECK(e1 == Permutation({1, 2}));
    CHECK(e2 == Permutation({2, 1}));
    CHECK_THROWS_AS(order_crossover(p1, Permutation({1, 2, 3}), 0, 1), ContractViolation);
    CHECK_THROWS_AS(order_crossover(p1, p2, 3, 1), ContractViolation);
  }

  TEST_CASE("property: random OX keeps the p1 segment and p2 order") {
    Rng rng(21);
    for (int trial = 0; trial < 300; ++trial) {
      const int n = 2 + static_cast<int>(uniform_index(rng, 12));
      const auto p1 = Permutation::random(n, rng), p2 = Permutation::random(n, rng);
      const int a = static_cast<int>(uniform_index(rng, n));
      const int b = a + static_cast<int>(uniform_index(rng, n - a));
      const auto [c1, c2] = order_crossover(p1, p2, a, b);
      CHECK(Permutation::is_valid(c1.labels()));
      CHECK(Permutation::is_valid(c2.labels()));
      for (int i = a; i <= b; ++i) {
        CHECK(c1[i] == p1[i]);
        CHECK(c2[i] == p2[i]);
      }
      std::vector<int> rest, expected;
      for (int i = 0; i < n; ++i)
        if (i < a || i > b) rest.push_back(c1[i]);
      for (int v : p2)
        if (std::find(p1.begin() + a, p1.begin() + b + 1, v) == p1.begin() + b + 1) expected.push_back(v);
      CHECK(rest == expected);
      const auto [r1, r2] = order_crossover(p1, p2, rng);
      CHECK(Permutation::is_valid(r1.labels()));
      CHECK(Permutation::is_valid(r2.labels()));
    }
  }

  TEST_CASE("swap mutation") {
    CHECK(swap_positions(Permutation({1, 2, 3}), 0, 2) == Permutation({3, 2, 1}));
    Rng rng(22);
    CHECK(swap_mutation(Permutation({1, 2}), rng) == Permutation({2, 1}));
    for (int trial = 0; trial < 200; ++trial) {
      const int n = 2 + static_cast<int>(uniform_index(rng, 20));
      const auto s = Permutation::random(n, rng);
      const auto m = swap_mutation(s, rng);
      CHECK(Permutation::is_valid(m.labels()));
      CHECK(differing_positions(s, m) == 2);
    }
  }

  TEST_CASE("two_opt uncrosses a square") {
    const auto sq = square();
    const Permutation crossing({1, 3, 2, 4});
    const auto out = two_opt(crossing, sq, unlimited);
    CHECK(problems::evaluate(sq, out) == 40.0);
    CHECK(problems::evaluate(sq, crossing) > 40.0);
    int moves = -1;
    local_search(crossing, sq, unlimited, &moves);
    CHECK(moves == 1);
    CHECK(two_opt(crossing, sq, 0) == crossing);
  }

  TEST_CASE("small swap and insertion cases") {
    problems::SquareMatrix f(2), d(2);
    f(0, 1) = 3;
    f(1, 0) = 1;
    d(0, 1) = 1;
    d(1, 0) = 5;
    const auto qap = problems::make_qap("q2", f, d);
    int moves = -1;
    const auto q = local_search(Permutation({1, 2}), qap, unlimited, &moves);
    CHECK(moves <= 1);
    CHECK(problems::evaluate(qap, q) == std::min(problems::evaluate(qap, Permutation({1, 2})),
                                                 problems::evaluate(qap, Permutation({2, 1}))));

    problems::SquareMatrix w(2);
    w(0, 1) = 5;
    w(1, 0) = 3;
    const auto lop = problems::make_lop("l2", w);
    const auto l = insertion_local_search(Permutation({2, 1}), lop, unlimited);
    CHECK(l == Permutation({1, 2}));
    CHECK(problems::evaluate(lop, l) == -5.0);
    CHECK(insertion_local_search(Permutation({2, 1}), lop, 0) == Permutation({2, 1}));
    CHECK(swap_local_search(Permutation({2, 1}), qap, 0) == Permutation({2, 1}));
  }

  TEST_CASE("property: unlimited local search reaches a neighborhood optimum") {
    Rng rng(23);
    for (auto kind : fixtures::all_kinds) {
      for (int trial = 0; trial < 25; ++trial) {
        const int n = kind == ProblemKind::TSP ? 8 : 6;
        const auto inst = fixtures::random_instance(kind, n, rng);
        const auto s = Permutation::random(n, rng);
        const auto out = local_search(s, inst, unlimited);
        REQUIRE(Permutation::is_valid(out.labels()));
        const double f = problems::evaluate(inst, out);
        CHECK(f <= problems::evaluate(inst, s));
        CHECK(best_neighbor(out, inst) >= f);
      }
    }
  }

  TEST_CASE("property: local search respects its budget and never worsens") {
    Rng rng(24);
    for (auto kind : fixtures::all_kinds) {
      for (int trial = 0; trial < 40; ++trial) {
        const int n = 3 + static_cast<int>(uniform_index(rng, 12));
        const auto inst = fixtures::random_instance(kind, n, rng);
        const auto s = Permutation::random(n, rng);
        const int budget = static_cast<int>(uniform_index(rng, 4));
        int moves = -1;
        const auto out = local_search(s, inst, budget, &moves);
        CHECK(Permutation::is_valid(out.labels()));
        CHECK(moves >= 0);
        CHECK(moves <= budget);
        CHECK(problems::evaluate(inst, out) <= problems::evaluate(inst, s));
        if (moves == 0) CHECK(out == s);
        CHECK(local_search(s, inst, 0) == s);
      }
    }
  }

  TEST_CASE("binary tournament prefers the fitter member") {
    Population pop;
    pop.members = {{Permutation({1, 2}), 1.0}, {Permutation({2, 1}), 2.0}};
    Rng rng(25);
    int zero = 0;
    for (int i = 0; i < 200; ++i) zero += binary_tournament(pop, rng) == 0;
    CHECK(zero >= 100);
  }

  TEST_CASE("generation step keeps size, order and elitism") {
    Rng rng(26);
    EvoParams params;
    params.pop_size = 12;
    for (auto kind : fixtures::all_kinds) {
      const auto inst = fixtures::random_instance(kind, 10, rng);
      auto pop = random_population(inst, params.pop_size, rng);
      CHECK(pop.is_sorted());
      for (int g = 0; g < 5; ++g) {
        long long evals = 0;
        const auto next = generation_step(pop, inst, params, rng, &evals);
        CHECK(evals == params.pop_size);
        CHECK(next.size() == params.pop_size);
        CHECK(next.is_sorted());
        CHECK(next.best().fitness <= pop.best().fitness);
        for (const auto& m : next.members) {
          CHECK(Permutation::is_valid(m.genome.labels()));
          CHECK(m.fitness == problems::evaluate(inst, m.genome));
        }
        pop = next;
      }
    }
  }

  TEST_CASE("generation step on a uniform population without mutation or search") {
    Rng rng(27);
    const auto inst = fixtures::random_tsp(7, rng);
    const auto g = Permutation::random(7, rng);
    Population pop;
    pop.members.assign(6, {g, problems::evaluate(inst, g)});
    EvoParams params;
    params.pop_size = 6;
    params.mutation_prob = 0.0;
    params.ls_budget = 0;
    const auto next = generation_step(pop, inst, params, rng);
    for (const auto& m : next.members) CHECK(m.genome == g);
  }

  TEST_CASE("evo params validation") {
    EvoParams p;
    p.pop_size = 1;
    CHECK_THROWS_AS(p.validate(), ContractViolation);
    p.pop_size = 2;
    p.mutation_prob = 1.5;
    CHECK_THROWS_AS(p.validate(), ContractViolation);
    p.mutation_prob = 0.1;
    p.ls_budget = -1;
    CHECK_THROWS_AS(p.validate(), ContractViolation);
    p.ls_budget.reset();
    CHECK_NOTHROW(p.validate());
    CHECK(p.ls_budget_for(17) == 17);
  }

  TEST_CASE("run_sto traces") {
    Rng rng(28);
    const auto inst = fixtures::random_qap(9, rng);
    EvoParams params;
    params.pop_size = 10;
    Rng r0(5);
    const auto zero = run_sto(inst, params, 0, r0);
    CHECK(zero.traces.size() == 1);
    CHECK(zero.traces[0].size() == 1);
    Rng r1(5);
    const auto run = run_sto(inst, params, 25, r1);
    REQUIRE(run.traces[0].size() == 26);
    CHECK(run.traces[0][0] == zero.traces[0][0]);
    for (std::size_t g = 1; g < run.traces[0].size(); ++g) CHECK(run.traces[0][g] <= run.traces[0][g - 1]);
    CHECK(run.best[0].fitness == run.traces[0].back());
    CHECK(problems::evaluate(inst, run.best[0].genome) == run.best[0].fitness);
    CHECK(run.evaluations[0] == 10LL * 26);
    CHECK(run.interactions == std::vector<std::vector<long long>>{{0}});
    CHECK(run.similarity.empty());
  }

  TEST_CASE("run_sto is deterministic on kroA100") {
    const auto inst = problems::load_instance(kroa100());
    EvoParams params;
    Rng a(99), b(99);
    const auto r1 = run_sto(inst, params, 5, a);
    const auto r2 = run_sto(inst, params, 5, b);
    CHECK(r1.traces == r2.traces);
    CHECK(r1.best[0].genome == r2.best[0].genome);
  }
}
