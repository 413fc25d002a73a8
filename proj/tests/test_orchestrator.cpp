#include <doctest.h>

#include <cmath>
#include <numeric>

#include "fixtures.hpp"
#include "mtea/orchestrator.hpp"

using namespace mtea;
using namespace mtea::orchestrator;
using problems::ProblemInstance;

namespace {

MultitaskConfig small_config(std::vector<ProblemInstance> insts, int gens = 20) {
  MultitaskConfig c;
  c.instances = std::move(insts);
  c.pop_size = 10;
  c.generations = gens;
  c.eps = 10;
  c.lambda = 3;
  c.alpha = 5;
  c.seed = 7;
  return c;
}

std::vector<ProblemInstance> mixed(Rng& rng) {
  return {fixtures::random_tsp(12, rng), fixtures::random_cvrp(10, rng), fixtures::random_qap(9, rng),
          fixtures::random_lop(11, rng)};
}

double mean_off_diagonal(const std::vector<problems::SquareMatrix>& snaps) {
  double s = 0.0;
  int n = 0;
  for (const auto& m : snaps)
    for (int i = 0; i < m.size(); ++i)
      for (int j = 0; j < m.size(); ++j)
        if (i != j) s += m(i, j), ++n;
  return n ? s / n : 0.0;
}

}  // namespace

TEST_SUITE("orchestrator") {
  TEST_CASE("config validation") {
    Rng rng(51);
    auto c = small_config({fixtures::random_tsp(6, rng), fixtures::random_tsp(6, rng)});
    CHECK_NOTHROW(c.validate());
    auto bad = c;
    bad.alpha = 0;
    CHECK_THROWS_AS(bad.validate(), ContractViolation);
    bad = c;
    bad.lambda = 11;
    CHECK_THROWS_AS(bad.validate(), ContractViolation);
    bad = c;
    bad.eps = 21;
    CHECK_THROWS_AS(bad.validate(), ContractViolation);
    bad = c;
    bad.generations = 0;
    CHECK_THROWS_AS(bad.validate(), ContractViolation);
    bad = c;
    bad.pop_size = 1;
    CHECK_THROWS_AS(bad.validate(), ContractViolation);
    bad = c;
    bad.instances.clear();
    CHECK_THROWS_AS(bad.validate(), ContractViolation);
    bad = c;
    bad.growth_budget = -1;
    CHECK_THROWS_AS(run_mtea_ast(bad), ContractViolation);
  }

  TEST_CASE("a single task reduces to the single-task GA") {
    Rng rng(52);
    auto c = small_config({fixtures::random_qap(9, rng)}, 30);
    c.eps = 5;
    c.lambda = 2;
    const auto run = run_mtea_ast(c);
    Rng sto_rng(task_seed(c.seed, 0));
    const auto sto = evolution::run_sto(c.instances[0], c.evo_params(), c.generations, sto_rng);
    CHECK(run.traces == sto.traces);
    CHECK(run.best[0].genome == sto.best[0].genome);
    CHECK(run.evaluations == sto.evaluations);
    CHECK(run.similarity.empty());
    CHECK(run.interactions == std::vector<std::vector<long long>>{{0}});
  }

  TEST_CASE("mixed-kind run invariants") {
    Rng rng(53);
    for (bool nots : {false, true}) {
      auto c = small_config(mixed(rng), 23);
      c.no_seed_selection = nots;
      RunProbe probe;
      const auto run = run_mtea_ast(c, &probe);
      const int k = 4, rounds = c.generations / c.alpha;
      CHECK(static_cast<int>(run.similarity.size()) == rounds);
      CHECK(static_cast<int>(probe.unify_positions.size()) == rounds);
      for (long long ops : probe.unify_positions) CHECK(ops <= 16LL * 12 * 12);
      for (int t = 0; t < k; ++t) {
        REQUIRE(static_cast<int>(run.traces[t].size()) == c.generations + 1);
        for (std::size_t g = 1; g < run.traces[t].size(); ++g) CHECK(run.traces[t][g] <= run.traces[t][g - 1]);
        CHECK(run.best[t].fitness == run.traces[t].back());
        CHECK(problems::evaluate(c.instances[t], run.best[t].genome) == run.best[t].fitness);
        CHECK(run.evaluations[t] == static_cast<long long>(c.pop_size) * (1 + c.generations - rounds));
        long long row = 0;
        for (int s = 0; s < k; ++s) {
          CHECK(run.interactions[t][s] >= 0);
          row += run.interactions[t][s];
        }
        CHECK(run.interactions[t][t] == 0);
        if (!nots) CHECK(row <= static_cast<long long>(c.lambda) * rounds);
        CHECK(run.transfer_evaluations[t] >= 0);
      }
      for (const auto& m : run.similarity)
        for (int i = 0; i < k; ++i)
          for (int j = 0; j < k; ++j) {
            CHECK(m(i, j) >= 0.0);
            CHECK(m(i, j) <= 1.0);
          }
    }
  }

  TEST_CASE("runs are reproducible") {
    Rng rng(54);
    const auto c = small_config(mixed(rng), 15);
    const auto a = run_mtea_ast(c), b = run_mtea_ast(c);
    CHECK(a.traces == b.traces);
    CHECK(a.similarity == b.similarity);
    CHECK(a.interactions == b.interactions);
    CHECK(a.evaluations == b.evaluations);
    CHECK(a.transfer_evaluations == b.transfer_evaluations);
    for (int t = 0; t < 4; ++t) CHECK(a.best[t].genome == b.best[t].genome);
    const auto m1 = run_mfea_baseline(c), m2 = run_mfea_baseline(c);
    CHECK(m1.traces == m2.traces);
  }

  TEST_CASE("identical tasks look more alike than unrelated ones") {
    Rng rng(55);
    const auto t = fixtures::random_tsp(20, rng);
    const auto other = fixtures::random_tsp(20, rng);
    auto same = small_config({t, t}, 40);
    auto diff = small_config({t, other}, 40);
    same.ls_budget = diff.ls_budget = 2;
    CHECK(mean_off_diagonal(run_mtea_ast(same).similarity) >= mean_off_diagonal(run_mtea_ast(diff).similarity));
  }

  TEST_CASE("unified decoding") {
    CHECK(decode_unified(Permutation({4, 2, 5, 1, 3}), 3) == Permutation({2, 1, 3}));
    CHECK(decode_unified(Permutation({4, 2, 5, 1, 3}), 5) == Permutation({4, 2, 5, 1, 3}));
    CHECK(decode_unified(Permutation({1, 2, 3, 4, 5}), 3) == Permutation({1, 2, 3}));
    CHECK(encode_unified(Permutation({4, 2, 5, 1, 3}), Permutation({3, 1, 2})) == Permutation({4, 3, 5, 1, 2}));
    Rng rng(56);
    for (int trial = 0; trial < 200; ++trial) {
      const int dmax = 2 + static_cast<int>(uniform_index(rng, 20));
      const auto g = Permutation::random(dmax, rng);
      for (int d = 1; d <= dmax; ++d) {
        const auto x = decode_unified(g, d);
        CHECK(x.size() == d);
        CHECK(Permutation::is_valid(x.labels()));
        CHECK(encode_unified(g, x) == g);
        const auto y = Permutation::random(d, rng);
        const auto e = encode_unified(g, y);
        CHECK(Permutation::is_valid(e.labels()));
        CHECK(decode_unified(e, d) == y);
      }
    }
  }

  TEST_CASE("factorial ranks and skill factors on a toy table") {
    const double inf = std::numeric_limits<double>::infinity();
    const std::vector<std::vector<double>> costs{{10, 5}, {3, 8}, {7, 1}, {3, 9}, {inf, 2}, {12, inf}};
    const auto r = factorial_ranks(costs);
    const std::vector<std::vector<int>> expected{{4, 3}, {1, 4}, {3, 1}, {2, 5}, {6, 2}, {5, 6}};
    CHECK(r == expected);
    const std::vector<int> skills{1, 0, 1, 0, 1, 0};
    for (std::size_t i = 0; i < costs.size(); ++i) CHECK(skill_factor(r[i]) == skills[i]);
    CHECK(skill_factor({2, 2}) == 0);
  }

  TEST_CASE("MFEA run invariants") {
    Rng rng(57);
    SUBCASE("mixed kinds") {
      const auto c = small_config(mixed(rng), 12);
      const auto run = run_mfea_baseline(c, 0.9);
      const long long total = std::accumulate(run.evaluations.begin(), run.evaluations.end(), 0LL);
      CHECK(total == 4LL * 10 * 4 + 12LL * 4 * 10);
      for (int t = 0; t < 4; ++t) {
        REQUIRE(run.traces[t].size() == 13);
        for (std::size_t g = 1; g < run.traces[t].size(); ++g) CHECK(run.traces[t][g] <= run.traces[t][g - 1]);
        CHECK(run.best[t].genome.size() == c.instances[t].dimension);
        CHECK(problems::evaluate(c.instances[t], run.best[t].genome) == run.best[t].fitness);
        CHECK(run.best[t].fitness == run.traces[t].back());
      }
      CHECK(run.similarity.empty());
      CHECK_THROWS_AS(run_mfea_baseline(c, 1.5), ContractViolation);
    }
    SUBCASE("single task") {
      const auto c = small_config({fixtures::random_tsp(10, rng)}, 10);
      const auto run = run_mfea_baseline(c);
      CHECK(run.traces[0].back() <= run.traces[0].front());
    }
  }
}
