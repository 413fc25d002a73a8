/// mtea_bench: run experiments, build synthetic similarity pairs, compare
/// result directories.

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "mtea/bench.hpp"

namespace {

using namespace mtea;
namespace fs = std::filesystem;

fs::path default_data_dir() {
  if (const char* env = std::getenv("MTEA_DATA_DIR")) return env;
  return "data";
}

void add_run_params(CLI::App* cmd, orchestrator::MultitaskConfig& p, std::optional<int>& ls,
                    std::optional<int>& growth) {
  cmd->add_option("--pop", p.pop_size, "population size per task")->capture_default_str();
  cmd->add_option("--gens", p.generations, "generations")->capture_default_str();
  cmd->add_option("--eps", p.eps, "seed-candidate budget per target")->capture_default_str();
  cmd->add_option("--lambda", p.lambda, "seeds inserted per target and round")->capture_default_str();
  cmd->add_option("--alpha", p.alpha, "generations between transfer rounds")->capture_default_str();
  cmd->add_option("--mutation", p.mutation_prob, "swap mutation probability")->capture_default_str();
  cmd->add_option("--ls-budget", ls, "improving moves per local search (default D)");
  cmd->add_option("--growth-budget", growth, "improving moves per seed growth (default 50*D)");
  cmd->add_option("--seed", p.seed, "master seed")->capture_default_str();
}

void print_stats(const bench::StatsSummary& s, bool with_reference) {
  std::printf("%-14s %14s %12s", "task", "mean", "std");
  if (with_reference) std::printf(" %14s %12s %10s  mark", "ref_mean", "ref_std", "p");
  std::printf("\n");
  for (const auto& t : s.tasks) {
    std::printf("%-14s %14.2f %12.2f", t.task.c_str(), t.mean, t.std);
    if (t.reference_mean)
      std::printf(" %14.2f %12.2f %10.4g  %s", *t.reference_mean, *t.reference_std, *t.p_value, t.mark.c_str());
    std::printf("\n");
  }
}

bool is_benchmark_name(const std::string& s) {
  try {
    bench::benchmark_instances(s);
    return true;
  } catch (const ContractViolation&) {
    return false;
  }
}

int cmd_run(bench::ExperimentConfig& cfg, const std::string& bench_arg, const std::string& algo,
            const fs::path& out, const std::string& reference, unsigned threads) {
  if (is_benchmark_name(bench_arg)) {
    cfg.benchmark = bench_arg;
  } else {
    std::size_t start = 0;
    while (start <= bench_arg.size()) {
      const auto comma = bench_arg.find(',', start);
      const auto part = bench_arg.substr(start, comma == std::string::npos ? std::string::npos : comma - start);
      if (!part.empty()) cfg.files.emplace_back(part);
      if (comma == std::string::npos) break;
      start = comma + 1;
    }
  }
  cfg.algorithm = bench::algorithm_from_string(algo);
  const auto instances = bench::load_experiment_instances(cfg);
  std::fprintf(stderr, "%s on %zu task(s), %d run(s)\n", algo.c_str(), instances.size(), cfg.runs);
  const auto runs = bench::run_experiment(cfg, instances, threads);
  std::optional<bench::StatsSummary> stats;
  if (!reference.empty()) {
    const auto ref = bench::read_results(reference);
    std::vector<std::vector<double>> finals;
    for (const auto& r : runs) {
      std::vector<double> row;
      for (const auto& tr : r.traces) row.push_back(tr.back());
      finals.push_back(row);
    }
    stats = bench::summarize_finals(runs.front().task_names, finals, &ref.finals);
  } else {
    stats = bench::summarize(runs);
  }
  bench::write_outputs(cfg, runs, out, &*stats);
  print_stats(*stats, !reference.empty());
  return 0;
}

int cmd_synth(const fs::path& base_file, const fs::path& opt_file, const std::string& grid_spec,
              const fs::path& out, bench::ExperimentConfig cfg, unsigned threads) {
  const auto base = problems::load_instance(base_file);
  const auto tour = problems::load_tour(opt_file);
  const auto grid = bench::parse_grid(grid_spec);
  fs::create_directories(out);
  std::ofstream pairs(out / "pairs.csv", std::ios::binary);
  pairs << "level,target_similarity,achieved_similarity,instance,optimum_tour\n";
  Rng rng(cfg.params.seed);

  std::optional<std::vector<bench::MultitaskRun>> sto;
  std::ofstream results;
  if (cfg.runs > 0) {
    cfg.algorithm = bench::Algorithm::Sto;
    sto = bench::run_experiment(cfg, {base}, threads);
    bench::write_outputs(cfg, *sto, out / "sto");
    results.open(out / "results.csv", std::ios::binary);
    results << "level,target_similarity,achieved_similarity,mtea_mean,mtea_std,sto_mean,sto_std,p_value,mark\n";
  }
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const auto pair = bench::make_synthetic_pair(base, tour.tour, grid[i], rng);
    char tag[32];
    std::snprintf(tag, sizeof tag, "level_%02zu", i);
    const std::string stem = base.name + "_" + tag;
    {
      std::ofstream f(out / (stem + ".tsp"), std::ios::binary);
      auto derived = pair.derived;
      derived.name = stem;
      f << problems::format_tsplib_explicit(derived);
      std::ofstream t(out / (stem + ".opt.tour"), std::ios::binary);
      t << problems::format_tour(stem + ".opt.tour", pair.derived_optimum,
                                 problems::evaluate(pair.derived, pair.derived_optimum));
    }
    pairs << i << ',' << bench::format_double(grid[i]) << ',' << bench::format_double(pair.achieved_similarity)
          << ',' << stem << ".tsp," << stem << ".opt.tour\n";
    if (!sto) continue;
    cfg.algorithm = bench::Algorithm::MteaAst;
    const auto runs = bench::run_experiment(cfg, {base, pair.derived}, threads);
    bench::write_outputs(cfg, runs, out / tag);
    std::vector<double> m, s;
    for (const auto& r : runs) m.push_back(r.traces[0].back());
    for (const auto& r : *sto) s.push_back(r.traces[0].back());
    const auto rs = bench::wilcoxon_rank_sum(s, m);
    results << i << ',' << bench::format_double(grid[i]) << ',' << bench::format_double(pair.achieved_similarity)
            << ',' << bench::format_double(bench::mean(m)) << ',' << bench::format_double(bench::stddev(m)) << ','
            << bench::format_double(bench::mean(s)) << ',' << bench::format_double(bench::stddev(s)) << ','
            << bench::format_double(rs.p) << ',' << bench::significance_mark(m, s) << '\n';
    std::fprintf(stderr, "s=%.2f achieved=%.3f mtea=%.2f sto=%.2f p=%.3g\n", grid[i], pair.achieved_similarity,
                 bench::mean(m), bench::mean(s), rs.p);
  }
  return 0;
}

int cmd_stats(const fs::path& subject, const fs::path& reference, const fs::path& out) {
  const auto sub = bench::read_results(subject);
  const auto ref = bench::read_results(reference);
  if (sub.tasks != ref.tasks) throw std::runtime_error("subject and reference cover different tasks");
  const auto stats = bench::summarize_finals(sub.tasks, sub.finals, &ref.finals);
  print_stats(stats, true);
  if (!out.empty()) {
    std::ofstream f(out, std::ios::binary);
    f << "task,mean,std,reference_mean,reference_std,p_value,mark\n";
    for (const auto& t : stats.tasks)
      f << t.task << ',' << bench::format_double(t.mean) << ',' << bench::format_double(t.std) << ','
        << bench::format_double(*t.reference_mean) << ',' << bench::format_double(*t.reference_std) << ','
        << bench::format_double(*t.p_value) << ',' << t.mark << '\n';
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"MTEA-AST evolutionary multitasking benchmark driver"};
  app.require_subcommand(1);
  app.set_config("--config", "", "key=value file with [run]/[synth]/[stats] sections; flags override it");

  bench::ExperimentConfig cfg;
  cfg.data_dir = default_data_dir();
  std::optional<int> ls, growth;
  std::string bench_arg, algo = "mtea-ast", reference, grid = "0:1:0.05";
  fs::path out = "results", base, opt, subject, ref_dir, stats_out;
  unsigned threads = 0;

  auto* run = app.add_subcommand("run", "run an experiment");
  run->configurable();
  run->add_option("--benchmark", bench_arg, "benchmark name or comma-separated instance files")->required();
  run->add_option("--algo", algo, "mtea-ast | mtea-ast-nots | sto | mfea")->capture_default_str();
  run->add_option("--runs", cfg.runs, "independent runs")->capture_default_str();
  run->add_option("--rmp", cfg.rmp, "MFEA random mating probability")->capture_default_str();
  run->add_option("--out", out, "output directory")->capture_default_str();
  run->add_option("--data-dir", cfg.data_dir, "instance root (env MTEA_DATA_DIR)")->capture_default_str();
  run->add_option("--reference", reference, "results directory to compare against");
  run->add_option("--threads", threads, "parallel runs (0 = all cores)");
  add_run_params(run, cfg.params, ls, growth);

  bench::ExperimentConfig synth_cfg;
  synth_cfg.runs = 0;
  std::optional<int> synth_ls, synth_growth;
  auto* synth = app.add_subcommand("synth", "build synthetic similarity pairs from a TSP with known optimum");
  synth->configurable();
  synth->add_option("--base", base, "base TSPLIB instance")->required()->check(CLI::ExistingFile);
  synth->add_option("--opt", opt, "optimal tour of the base")->required()->check(CLI::ExistingFile);
  synth->add_option("--sim-grid", grid, "lo:hi:step")->capture_default_str();
  synth->add_option("--out", out, "output directory")->capture_default_str();
  synth->add_option("--runs", synth_cfg.runs, "runs per level for MTEA-AST vs STO (0 = only generate)")
      ->capture_default_str();
  synth->add_option("--threads", threads, "parallel runs (0 = all cores)");
  add_run_params(synth, synth_cfg.params, synth_ls, synth_growth);

  auto* stats = app.add_subcommand("stats", "rank-sum comparison of two results directories");
  stats->configurable();
  stats->add_option("--subject", subject, "results directory")->required()->check(CLI::ExistingDirectory);
  stats->add_option("--reference", ref_dir, "reference results directory")->required()->check(CLI::ExistingDirectory);
  stats->add_option("--out", stats_out, "write the comparison as CSV");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*run) {
      cfg.params.ls_budget = ls;
      cfg.params.growth_budget = growth;
      return cmd_run(cfg, bench_arg, algo, out, reference, threads);
    }
    if (*synth) {
      synth_cfg.params.ls_budget = synth_ls;
      synth_cfg.params.growth_budget = synth_growth;
      synth_cfg.files = {base};
      return cmd_synth(base, opt, grid, out, synth_cfg, threads);
    }
    if (*stats) return cmd_stats(subject, ref_dir, stats_out);
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
  return 0;
}
