#pragma once

/// @file bench.hpp
/// @brief Experiment harness: benchmark sets, synthetic similarity pairs,
/// rank-sum statistics and result files.

#include <cstdint>
#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "mtea/orchestrator.hpp"

namespace mtea::bench {

namespace fs = std::filesystem;
using evolution::MultitaskRun;
using problems::Permutation;
using problems::ProblemInstance;
using problems::SquareMatrix;

// --- benchmark sets ---------------------------------------------------------------

/// TSP, CVRP, QAP, LOP, the six pairwise unions (e.g. TSP_CVRP) and ALL.
std::vector<std::string> benchmark_names();

/// Instance names of a benchmark, in task order. Throws ContractViolation on
/// an unknown name (case-insensitive).
std::vector<std::string> benchmark_instances(const std::string& name);

/// Case-insensitive recursive lookup of `<name>[.tsp|.vrp|.dat|.mat|.txt]`
/// under `data_dir`. LOLIB names also match without their "N-" prefix.
std::optional<fs::path> find_instance_file(const fs::path& data_dir, const std::string& name);

class MissingInstances : public std::runtime_error {
 public:
  MissingInstances(std::vector<std::string> names, const fs::path& data_dir);
  const std::vector<std::string>& names() const noexcept { return names_; }

 private:
  std::vector<std::string> names_;
};

/// Loads every instance of a benchmark; throws MissingInstances naming all
/// absent files.
std::vector<ProblemInstance> assemble_benchmark(const std::string& name, const fs::path& data_dir);

// --- synthetic pairs --------------------------------------------------------------

struct SyntheticPair {
  ProblemInstance base;
  Permutation base_optimum;
  /// Cities on the unit circle; optimum is the circle order.
  ProblemInstance derived;
  Permutation derived_optimum;
  double target_similarity = 0.0;
  /// Shared-edge fraction of the two optima.
  double achieved_similarity = 0.0;
};

/// Achieved similarity stays within this distance of the target for D at
/// least synthetic_min_dimension.
inline constexpr double synthetic_tolerance = 0.05;
inline constexpr int synthetic_min_dimension = 50;
/// Scramble draws tried before keeping the closest one.
inline constexpr int synthetic_max_draws = 1000;

/// Places the cities on a circle in base-optimum order, then permutes the
/// positions of ceil((1-s)D) cities forming a random contiguous arc. The arc
/// is redrawn while the achieved similarity misses the target by more than
/// synthetic_tolerance.
SyntheticPair make_synthetic_pair(const ProblemInstance& base, const Permutation& base_optimum, double s,
                                  Rng& rng);

/// "lo:hi:step" -> {lo, lo+step, ..., hi}.
std::vector<double> parse_grid(const std::string& spec);

// --- statistics -------------------------------------------------------------------

struct RankSum {
  /// Mann-Whitney U of the first sample.
  double u = 0.0;
  double p = 1.0;
  bool exact = false;
};

/// Two-sided rank-sum test; exact by enumeration when |a|+|b| <= 14.
RankSum wilcoxon_rank_sum(const std::vector<double>& a, const std::vector<double>& b);
/// Exact two-sided p by enumerating every split of the pooled midranks.
double rank_sum_exact_p(const std::vector<double>& a, const std::vector<double>& b);
/// Normal approximation, tie-corrected variance, continuity correction.
double rank_sum_normal_p(const std::vector<double>& a, const std::vector<double>& b);

inline constexpr std::size_t exact_limit = 14;
inline constexpr double significance = 0.05;

double mean(const std::vector<double>& v);
/// Sample standard deviation (n-1); 0 for fewer than two values.
double stddev(const std::vector<double>& v);

struct TaskStats {
  std::string task;
  double mean = 0.0;
  double std = 0.0;
  std::optional<double> reference_mean;
  std::optional<double> reference_std;
  std::optional<double> p_value;
  /// Reference relative to subject: "-" worse, "+" better, "≈" similar.
  std::string mark;
};

struct StatsSummary {
  std::vector<TaskStats> tasks;
};

/// finals[run][task].
StatsSummary summarize_finals(const std::vector<std::string>& task_names,
                              const std::vector<std::vector<double>>& subject,
                              const std::vector<std::vector<double>>* reference = nullptr);
StatsSummary summarize(const std::vector<MultitaskRun>& runs,
                       const std::vector<MultitaskRun>* reference = nullptr);

/// "-", "+" or "≈" for one task.
std::string significance_mark(const std::vector<double>& subject, const std::vector<double>& reference);

// --- experiments -----------------------------------------------------------------

enum class Algorithm { MteaAst, MteaAstNoTS, Sto, Mfea };
std::string to_string(Algorithm a);
Algorithm algorithm_from_string(const std::string& text);

struct ExperimentConfig {
  /// Benchmark name, or empty when `files` is used.
  std::string benchmark;
  std::vector<fs::path> files;
  Algorithm algorithm = Algorithm::MteaAst;
  int runs = 20;
  /// Run parameters; `instances` is filled by the harness.
  orchestrator::MultitaskConfig params;
  double rmp = 0.9;
  fs::path data_dir;

  void validate() const;
};

/// Seed of run `r` under a master seed.
inline std::uint64_t run_seed(std::uint64_t master, int r) {
  return derive_seed(master ^ 0x5EEDF00DULL, static_cast<std::uint64_t>(r));
}

/// Instances named by the config (benchmark or explicit files).
std::vector<ProblemInstance> load_experiment_instances(const ExperimentConfig& config);

/// One run of the configured algorithm with the given seed.
MultitaskRun run_once(const ExperimentConfig& config, const std::vector<ProblemInstance>& instances,
                      std::uint64_t seed);

/// `config.runs` independent runs, `threads` at a time (0 = hardware).
std::vector<MultitaskRun> run_experiment(const ExperimentConfig& config,
                                         const std::vector<ProblemInstance>& instances,
                                         unsigned threads = 0);

// --- result files ------------------------------------------------------------------

/// Shortest text that reads back to the same double.
std::string format_double(double v);
double parse_double(const std::string& text);

struct ConvergenceRow {
  int run = 0;
  int task = 0;
  int generation = 0;
  double best = 0.0;
};

/// Writes convergence.csv, interactions.csv (summed over runs),
/// summary.json, timing.json and run_<id>/{similarity_<round>.csv,
/// interactions.csv}. Throws std::runtime_error on I/O failure.
void write_outputs(const ExperimentConfig& config, const std::vector<MultitaskRun>& runs,
                   const fs::path& dir, const StatsSummary* reference_stats = nullptr);

std::vector<ConvergenceRow> read_convergence(const fs::path& file);
SquareMatrix read_matrix_csv(const fs::path& file);
std::vector<std::vector<long long>> read_counts_csv(const fs::path& file);

/// finals[run][task] and task names from a results directory.
struct ResultSet {
  std::vector<std::string> tasks;
  std::vector<std::vector<double>> finals;
};
ResultSet read_results(const fs::path& dir);

}  // namespace mtea::bench
