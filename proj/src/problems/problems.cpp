#include "mtea/problems.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <numeric>

namespace mtea::problems {

std::string_view to_string(ProblemKind kind) {
  switch (kind) {
    case ProblemKind::TSP:
      return "TSP";
    case ProblemKind::CVRP:
      return "CVRP";
    case ProblemKind::QAP:
      return "QAP";
    case ProblemKind::LOP:
      return "LOP";
  }
  return "?";
}

ProblemKind kind_from_string(std::string_view text) {
  if (text == "TSP") return ProblemKind::TSP;
  if (text == "CVRP") return ProblemKind::CVRP;
  if (text == "QAP") return ProblemKind::QAP;
  if (text == "LOP") return ProblemKind::LOP;
  throw ContractViolation("unknown problem kind '" + std::string(text) + "'");
}

// --- Permutation --------------------------------------------------------------

bool Permutation::is_valid(std::span<const int> order) {
  const auto n = static_cast<int>(order.size());
  std::vector<char> seen(order.size() + 1, 0);
  for (int v : order) {
    if (v < 1 || v > n || seen[v]) return false;
    seen[v] = 1;
  }
  return true;
}

Permutation::Permutation(std::vector<int> order) : order_(std::move(order)) {
  if (!is_valid(order_)) throw ContractViolation("not a permutation of {1..n}");
}

Permutation Permutation::identity(int n) {
  std::vector<int> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), 1);
  return unchecked(std::move(order));
}

Permutation Permutation::random(int n, Rng& rng) {
  std::vector<int> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), 1);
  shuffle_range(order.begin(), order.end(), rng);
  return unchecked(std::move(order));
}

Permutation Permutation::unchecked(std::vector<int> order) {
  assert(is_valid(order));
  Permutation p;
  p.order_ = std::move(order);
  return p;
}

// --- ProblemInstance ------------------------------------------------------------

namespace {

void require(bool ok, const std::string& what) {
  if (!ok) throw ContractViolation(what);
}

bool symmetric_zero_diagonal(const SquareMatrix& m) {
  for (int i = 0; i < m.size(); ++i) {
    if (m(i, i) != 0.0) return false;
    for (int j = i + 1; j < m.size(); ++j)
      if (m(i, j) != m(j, i) || m(i, j) < 0.0) return false;
  }
  return true;
}

}  // namespace

void ProblemInstance::validate() const {
  require(dimension >= 1, name + ": dimension must be positive");
  switch (kind) {
    case ProblemKind::TSP:
      require(dist.size() == dimension, name + ": TSP distance matrix must be D x D");
      require(symmetric_zero_diagonal(dist),
              name + ": TSP distances must be symmetric, non-negative, zero diagonal");
      break;
    case ProblemKind::CVRP:
      require(dist.size() == dimension + 1, name + ": CVRP distance matrix must be (D+1) x (D+1)");
      require(symmetric_zero_diagonal(dist),
              name + ": CVRP distances must be symmetric, non-negative, zero diagonal");
      require(static_cast<int>(demands.size()) == dimension, name + ": need one demand per customer");
      require(capacity > 0.0, name + ": capacity must be positive");
      for (double q : demands) {
        require(q >= 0.0, name + ": negative demand");
        require(q <= capacity, name + ": a demand exceeds the vehicle capacity");
      }
      break;
    case ProblemKind::QAP:
      require(flow.size() == dimension && dist.size() == dimension,
              name + ": QAP matrices must be D x D");
      break;
    case ProblemKind::LOP:
      require(weight.size() == dimension, name + ": LOP matrix must be D x D");
      break;
  }
}

ProblemInstance make_tsp(std::string name, SquareMatrix dist) {
  ProblemInstance p;
  p.kind = ProblemKind::TSP;
  p.name = std::move(name);
  p.dimension = dist.size();
  p.dist = std::move(dist);
  p.validate();
  return p;
}

ProblemInstance make_cvrp(std::string name, SquareMatrix dist, std::vector<double> demands,
                          double capacity) {
  ProblemInstance p;
  p.kind = ProblemKind::CVRP;
  p.name = std::move(name);
  p.dimension = dist.size() - 1;
  p.dist = std::move(dist);
  p.demands = std::move(demands);
  p.capacity = capacity;
  p.validate();
  return p;
}

ProblemInstance make_qap(std::string name, SquareMatrix flow, SquareMatrix dist) {
  ProblemInstance p;
  p.kind = ProblemKind::QAP;
  p.name = std::move(name);
  p.dimension = flow.size();
  p.flow = std::move(flow);
  p.dist = std::move(dist);
  p.validate();
  return p;
}

ProblemInstance make_lop(std::string name, SquareMatrix weight) {
  ProblemInstance p;
  p.kind = ProblemKind::LOP;
  p.name = std::move(name);
  p.dimension = weight.size();
  p.weight = std::move(weight);
  p.validate();
  return p;
}

// --- objective --------------------------------------------------------------------

RouteSet decode_cvrp(const ProblemInstance& instance, std::span<const int> giant_tour) {
  if (instance.kind != ProblemKind::CVRP) throw ContractViolation("decode_cvrp needs a CVRP instance");
  RouteSet out;
  double load = 0.0;
  for (int c : giant_tour) {
    const double q = instance.demands[c - 1];
    if (out.routes.empty() || load + q > instance.capacity) {
      out.routes.emplace_back();
      load = 0.0;
    }
    out.routes.back().push_back(c);
    load += q;
  }
  return out;
}

namespace {

double tour_length(const SquareMatrix& d, std::span<const int> labels) {
  const std::size_t m = labels.size();
  if (m < 2) return 0.0;
  double total = 0.0;
  for (std::size_t i = 0; i + 1 < m; ++i) total += d(labels[i] - 1, labels[i + 1] - 1);
  total += d(labels[m - 1] - 1, labels[0] - 1);
  return total;
}

// Same split rule as decode_cvrp without materializing the routes.
double cvrp_cost(const ProblemInstance& inst, std::span<const int> labels) {
  const SquareMatrix& d = inst.dist;
  double total = 0.0;
  double load = 0.0;
  int prev = 0;
  for (int c : labels) {
    const double q = inst.demands[c - 1];
    if (prev != 0 && load + q > inst.capacity) {
      total += d(prev, 0);
      prev = 0;
      load = 0.0;
    }
    total += d(prev, c);
    load += q;
    prev = c;
  }
  if (prev != 0) total += d(prev, 0);
  return total;
}

double qap_cost(const ProblemInstance& inst, std::span<const int> labels) {
  const std::size_t m = labels.size();
  double total = 0.0;
  for (std::size_t i = 0; i < m; ++i) {
    const double* flow_row = inst.flow.row(labels[i] - 1);
    const double* dist_row = inst.dist.row(static_cast<int>(i));
    for (std::size_t j = 0; j < m; ++j) total += flow_row[labels[j] - 1] * dist_row[j];
  }
  return total;
}

double lop_cost(const ProblemInstance& inst, std::span<const int> labels) {
  const std::size_t m = labels.size();
  double total = 0.0;
  for (std::size_t i = 0; i < m; ++i) {
    const double* w = inst.weight.row(labels[i] - 1);
    for (std::size_t j = i; j < m; ++j) total += w[labels[j] - 1];
  }
  return -total;
}

}  // namespace

double evaluate_labels(const ProblemInstance& instance, std::span<const int> labels) {
  switch (instance.kind) {
    case ProblemKind::TSP:
      return tour_length(instance.dist, labels);
    case ProblemKind::CVRP:
      return cvrp_cost(instance, labels);
    case ProblemKind::QAP:
      return qap_cost(instance, labels);
    case ProblemKind::LOP:
      return lop_cost(instance, labels);
  }
  throw ContractViolation("unknown problem kind");
}

double evaluate(const ProblemInstance& instance, const Permutation& s) {
  if (s.size() != instance.dimension)
    throw ContractViolation("permutation length " + std::to_string(s.size()) +
                            " does not match dimension " + std::to_string(instance.dimension) +
                            " of " + instance.name);
  return evaluate_labels(instance, s.labels());
}

}  // namespace mtea::problems
