#pragma once

/// @file problems.hpp
/// @brief The four permutation-coded combinatorial problems (TSP, CVRP, QAP,
/// LOP), their instance formats and a uniform minimization objective.
///
/// Every solution is a Permutation of the labels {1..D}. How the labels are
/// read depends on the problem kind:
///   - TSP:  visiting order of the cities of a closed tour.
///   - CVRP: giant tour over the customers, split into routes by decode_cvrp.
///   - QAP:  order[k] is the facility placed at location k.
///   - LOP:  row/column order of the weight matrix.

#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "mtea/errors.hpp"
#include "mtea/random.hpp"

namespace mtea::problems {

enum class ProblemKind { TSP, CVRP, QAP, LOP };

std::string_view to_string(ProblemKind kind);
ProblemKind kind_from_string(std::string_view text);

/// TSP and CVRP solutions are tours (rotation/reversal matter only through
/// adjacency); QAP and LOP solutions are position-coded.
constexpr bool is_permutation_based(ProblemKind kind) {
  return kind == ProblemKind::TSP || kind == ProblemKind::CVRP;
}

/// Dense row-major square matrix.
class SquareMatrix {
 public:
  SquareMatrix() = default;
  explicit SquareMatrix(int n, double fill = 0.0)
      : n_(n), values_(static_cast<std::size_t>(n) * static_cast<std::size_t>(n), fill) {}

  int size() const noexcept { return n_; }
  bool empty() const noexcept { return n_ == 0; }

  double operator()(int i, int j) const noexcept {
    return values_[static_cast<std::size_t>(i) * n_ + j];
  }
  double& operator()(int i, int j) noexcept { return values_[static_cast<std::size_t>(i) * n_ + j]; }

  const double* row(int i) const noexcept { return values_.data() + static_cast<std::size_t>(i) * n_; }

  bool operator==(const SquareMatrix&) const = default;

 private:
  int n_ = 0;
  std::vector<double> values_;
};

/// An ordering of {1..D}.
class Permutation {
 public:
  Permutation() = default;

  /// Throws ContractViolation unless `order` is a bijection on {1..size}.
  explicit Permutation(std::vector<int> order);

  static Permutation identity(int n);
  static Permutation random(int n, Rng& rng);
  /// Caller guarantees validity; checked only in debug builds.
  static Permutation unchecked(std::vector<int> order);

  static bool is_valid(std::span<const int> order);

  int size() const noexcept { return static_cast<int>(order_.size()); }
  int operator[](std::size_t i) const noexcept { return order_[i]; }
  auto begin() const noexcept { return order_.begin(); }
  auto end() const noexcept { return order_.end(); }
  const std::vector<int>& order() const noexcept { return order_; }
  std::span<const int> labels() const noexcept { return order_; }

  bool operator==(const Permutation&) const = default;

 private:
  std::vector<int> order_;
};

struct ProblemInstance {
  ProblemKind kind = ProblemKind::TSP;
  std::string name;
  int dimension = 0;
  /// D x D for TSP, (D+1) x (D+1) for CVRP with the depot at index 0, D x D
  /// location distances for QAP.
  SquareMatrix dist;
  /// QAP only.
  SquareMatrix flow;
  /// LOP only.
  SquareMatrix weight;
  /// CVRP only; demands[c-1] belongs to customer label c.
  std::vector<double> demands;
  double capacity = 0.0;

  /// Checks the kind-specific invariants; throws ContractViolation.
  void validate() const;
};

ProblemInstance make_tsp(std::string name, SquareMatrix dist);
ProblemInstance make_cvrp(std::string name, SquareMatrix dist, std::vector<double> demands,
                          double capacity);
ProblemInstance make_qap(std::string name, SquareMatrix flow, SquareMatrix dist);
ProblemInstance make_lop(std::string name, SquareMatrix weight);

/// Capacity-feasible routes of a CVRP giant tour.
struct RouteSet {
  std::vector<std::vector<int>> routes;
};

// --- instance formats -------------------------------------------------------

/// TSPLIB symmetric TSP; EUC_2D (nint-rounded) or EXPLICIT FULL_MATRIX.
ProblemInstance parse_tsplib(std::string_view text);
/// CVRPLIB/TSPLIB-style CVRP with CAPACITY, NODE_COORD_SECTION,
/// DEMAND_SECTION and DEPOT_SECTION. The depot becomes matrix index 0.
ProblemInstance parse_cvrp(std::string_view text);
/// QAPLIB: n, flow matrix, distance matrix.
ProblemInstance parse_qaplib(std::string_view text);
/// LOLIB: optional name line, n, n x n weight matrix.
ProblemInstance parse_lolib(std::string_view text);

/// Reads a file and dispatches on extension (.tsp/.vrp/.dat) or content.
ProblemInstance load_instance(const std::filesystem::path& path);

/// TSPLIB TOUR file. `optimum` is read from an `OPTIMUM : <value>` header.
struct TourFile {
  std::string name;
  std::optional<double> optimum;
  Permutation tour;
};
TourFile parse_tour(std::string_view text);
TourFile load_tour(const std::filesystem::path& path);

/// EXPLICIT FULL_MATRIX TSPLIB text with round-trip precision.
std::string format_tsplib_explicit(const ProblemInstance& tsp);
std::string format_tour(const std::string& name, const Permutation& tour,
                        std::optional<double> optimum = std::nullopt);

// --- objective --------------------------------------------------------------

/// Minimization objective of a complete solution. Throws ContractViolation if
/// the permutation length differs from the instance dimension.
double evaluate(const ProblemInstance& instance, const Permutation& s);

/// Objective of a possibly partial label sequence (labels distinct, each in
/// 1..dimension). TSP: closed tour over the given cities. CVRP: decoded
/// routes. QAP: the sequence occupies locations 1..m. LOP: the sub-block of
/// present rows. With the full label set this equals evaluate().
double evaluate_labels(const ProblemInstance& instance, std::span<const int> labels);

/// Greedy sequential split: a new route opens whenever the next customer
/// would overflow the current vehicle.
RouteSet decode_cvrp(const ProblemInstance& instance, std::span<const int> giant_tour);

}  // namespace mtea::problems
