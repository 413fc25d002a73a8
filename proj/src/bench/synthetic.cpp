#include <charconv>
#include <cmath>
#include <limits>
#include <numbers>

#include "mtea/bench.hpp"

namespace mtea::bench {

SyntheticPair make_synthetic_pair(const ProblemInstance& base, const Permutation& base_optimum, double s,
                                  Rng& rng) {
  if (!(s >= 0.0 && s <= 1.0)) throw ContractViolation("target similarity must lie in [0, 1]");
  if (base.kind != problems::ProblemKind::TSP) throw ContractViolation("synthetic pairs need a TSP base");
  if (base_optimum.size() != base.dimension) throw ContractViolation("optimal tour does not match the base");
  const int n = base.dimension;

  // slot_city[k] = city at circle position k
  std::vector<int> slot_city = base_optimum.order();
  const int scrambled = std::min(n, static_cast<int>(std::ceil((1.0 - s) * n - 1e-9)));
  if (scrambled > 1) {
    const std::vector<int> unscrambled = slot_city;
    double best_gap = std::numeric_limits<double>::infinity();
    for (int attempt = 0; attempt < synthetic_max_draws; ++attempt) {
      std::vector<int> trial = unscrambled;
      const auto start = uniform_index(rng, static_cast<std::size_t>(n));
      std::vector<int> arc;
      for (int i = 0; i < scrambled; ++i) arc.push_back(trial[(start + i) % n]);
      shuffle_range(arc.begin(), arc.end(), rng);
      for (int i = 0; i < scrambled; ++i) trial[(start + i) % n] = arc[i];
      const double gap = std::abs(
          unification::hamming_similarity(base_optimum, Permutation::unchecked(trial), problems::ProblemKind::TSP) -
          s);
      if (gap < best_gap) {
        best_gap = gap;
        slot_city = std::move(trial);
      }
      if (n < synthetic_min_dimension || best_gap <= synthetic_tolerance + 1e-9) break;
    }
  }

  std::vector<double> x(static_cast<std::size_t>(n)), y(static_cast<std::size_t>(n));
  for (int k = 0; k < n; ++k) {
    const double angle = 2.0 * std::numbers::pi * k / n;
    x[slot_city[k] - 1] = std::cos(angle);
    y[slot_city[k] - 1] = std::sin(angle);
  }
  SquareMatrix d(n);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) d(i, j) = d(j, i) = std::hypot(x[i] - x[j], y[i] - y[j]);

  SyntheticPair pair;
  pair.base = base;
  pair.base_optimum = base_optimum;
  pair.derived = problems::make_tsp(base.name + "-circle", std::move(d));
  pair.derived_optimum = Permutation(slot_city);
  pair.target_similarity = s;
  pair.achieved_similarity =
      unification::hamming_similarity(base_optimum, pair.derived_optimum, problems::ProblemKind::TSP);
  return pair;
}

std::vector<double> parse_grid(const std::string& spec) {
  std::vector<double> parts;
  std::size_t start = 0;
  while (true) {
    const auto colon = spec.find(':', start);
    const std::string tok = spec.substr(start, colon == std::string::npos ? std::string::npos : colon - start);
    double v = 0.0;
    const auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
    if (tok.empty() || ec != std::errc() || ptr != tok.data() + tok.size())
      throw ContractViolation("bad grid '" + spec + "', expected lo:hi:step");
    parts.push_back(v);
    if (colon == std::string::npos) break;
    start = colon + 1;
  }
  if (parts.size() != 3 || parts[2] <= 0.0 || parts[1] < parts[0])
    throw ContractViolation("bad grid '" + spec + "', expected lo:hi:step with step > 0");
  const int steps = static_cast<int>(std::floor((parts[1] - parts[0]) / parts[2] + 1e-9));
  std::vector<double> grid;
  for (int i = 0; i <= steps; ++i) {
    // rounded to 12 decimals
    const double v = std::round((parts[0] + i * parts[2]) * 1e12) / 1e12;
    grid.push_back(std::min(v, parts[1]));
  }
  return grid;
}

}  // namespace mtea::bench
