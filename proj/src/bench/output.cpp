#include <charconv>
#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "mtea/bench.hpp"

namespace mtea::bench {

using json = nlohmann::ordered_json;

std::string format_double(double v) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, ptr);
}

double parse_double(const std::string& text) {
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc() || ptr != text.data() + text.size())
    throw std::runtime_error("not a number: '" + text + "'");
  return v;
}

namespace {

void write_file(const fs::path& file, const std::string& content) {
  std::ofstream out(file, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot write " + file.string());
  out << content;
  if (!out) throw std::runtime_error("write failed: " + file.string());
}

std::string read_file(const fs::path& file) {
  std::ifstream in(file, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + file.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::vector<std::vector<std::string>> read_csv(const fs::path& file, bool header) {
  std::istringstream in(read_file(file));
  std::vector<std::vector<std::string>> rows;
  std::string line;
  bool first = true;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (first && header) {
      first = false;
      continue;
    }
    first = false;
    if (line.empty()) continue;
    std::vector<std::string> cells;
    std::size_t start = 0;
    while (true) {
      const auto comma = line.find(',', start);
      cells.push_back(line.substr(start, comma == std::string::npos ? std::string::npos : comma - start));
      if (comma == std::string::npos) break;
      start = comma + 1;
    }
    rows.push_back(std::move(cells));
  }
  return rows;
}

std::string matrix_csv(const SquareMatrix& m) {
  std::string out;
  for (int i = 0; i < m.size(); ++i) {
    for (int j = 0; j < m.size(); ++j) {
      if (j) out += ',';
      out += format_double(m(i, j));
    }
    out += '\n';
  }
  return out;
}

std::string counts_csv(const std::vector<std::vector<long long>>& c) {
  std::string out;
  for (const auto& row : c) {
    for (std::size_t j = 0; j < row.size(); ++j) {
      if (j) out += ',';
      out += std::to_string(row[j]);
    }
    out += '\n';
  }
  return out;
}

std::string numbered(const char* prefix, int id) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%s%03d", prefix, id);
  return buf;
}

json config_json(const ExperimentConfig& c) {
  const auto& p = c.params;
  json j;
  j["algorithm"] = to_string(c.algorithm);
  j["benchmark"] = c.benchmark;
  json files = json::array();
  for (const auto& f : c.files) files.push_back(f.generic_string());
  j["files"] = files;
  j["runs"] = c.runs;
  j["pop"] = p.pop_size;
  j["gens"] = p.generations;
  j["eps"] = p.eps;
  j["lambda"] = p.lambda;
  j["alpha"] = p.alpha;
  j["mutation_prob"] = p.mutation_prob;
  j["ls_budget"] = p.ls_budget ? json(*p.ls_budget) : json(nullptr);
  j["growth_budget"] = p.growth_budget ? json(*p.growth_budget) : json(nullptr);
  j["rmp"] = c.rmp;
  j["seed"] = p.seed;
  return j;
}

json stats_json(const StatsSummary& s) {
  json arr = json::array();
  for (const auto& t : s.tasks) {
    json j;
    j["task"] = t.task;
    j["mean"] = t.mean;
    j["std"] = t.std;
    if (t.reference_mean) {
      j["reference_mean"] = *t.reference_mean;
      j["reference_std"] = *t.reference_std;
      j["p_value"] = *t.p_value;
      j["mark"] = t.mark;
    }
    arr.push_back(j);
  }
  return arr;
}

}  // namespace

void write_outputs(const ExperimentConfig& config, const std::vector<MultitaskRun>& runs, const fs::path& dir,
                   const StatsSummary* reference_stats) {
  if (runs.empty()) throw ContractViolation("write_outputs needs at least one run");
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw std::runtime_error("cannot create " + dir.string() + ": " + ec.message());
  const std::size_t k = runs.front().traces.size();

  std::string conv = "run_id,task,generation,best_fitness\n";
  std::vector<std::vector<long long>> total(k, std::vector<long long>(k, 0));
  json timing = json::array();
  for (std::size_t r = 0; r < runs.size(); ++r) {
    const auto& run = runs[r];
    for (std::size_t t = 0; t < run.traces.size(); ++t)
      for (std::size_t g = 0; g < run.traces[t].size(); ++g)
        conv += std::to_string(r) + ',' + std::to_string(t) + ',' + std::to_string(g) + ',' +
                format_double(run.traces[t][g]) + '\n';
    const fs::path run_dir = dir / numbered("run_", static_cast<int>(r));
    fs::create_directories(run_dir, ec);
    if (ec) throw std::runtime_error("cannot create " + run_dir.string() + ": " + ec.message());
    for (std::size_t i = 0; i < run.similarity.size(); ++i)
      write_file(run_dir / (numbered("similarity_", static_cast<int>(i) + 1) + ".csv"),
                 matrix_csv(run.similarity[i]));
    write_file(run_dir / "interactions.csv", counts_csv(run.interactions));
    for (std::size_t t = 0; t < k; ++t)
      for (std::size_t s = 0; s < k; ++s) total[t][s] += run.interactions[t][s];
    timing.push_back(run.wall_seconds);
  }
  write_file(dir / "convergence.csv", conv);
  write_file(dir / "interactions.csv", counts_csv(total));

  json summary;
  summary["master_seed"] = config.params.seed;
  summary["config"] = config_json(config);
  summary["instances"] = runs.front().task_names;
  json seeds = json::array(), finals = json::array(), evals = json::array(), tevals = json::array();
  for (const auto& run : runs) {
    seeds.push_back(run.seed);
    json row = json::array();
    for (const auto& tr : run.traces) row.push_back(tr.back());
    finals.push_back(row);
    evals.push_back(run.evaluations);
    tevals.push_back(run.transfer_evaluations);
  }
  summary["run_seeds"] = seeds;
  summary["final_best"] = finals;
  summary["evaluations"] = evals;
  summary["transfer_evaluations"] = tevals;
  summary["transfer_rounds"] = runs.front().similarity.size();
  summary["stats"] = stats_json(reference_stats ? *reference_stats : summarize(runs));
  write_file(dir / "summary.json", summary.dump(2) + "\n");

  json t;
  t["wall_seconds"] = timing;
  write_file(dir / "timing.json", t.dump(2) + "\n");
}

std::vector<ConvergenceRow> read_convergence(const fs::path& file) {
  std::vector<ConvergenceRow> rows;
  for (const auto& cells : read_csv(file, true)) {
    if (cells.size() != 4) throw std::runtime_error(file.string() + ": expected 4 columns");
    rows.push_back({std::stoi(cells[0]), std::stoi(cells[1]), std::stoi(cells[2]), parse_double(cells[3])});
  }
  return rows;
}

SquareMatrix read_matrix_csv(const fs::path& file) {
  const auto rows = read_csv(file, false);
  const int n = static_cast<int>(rows.size());
  SquareMatrix m(n);
  for (int i = 0; i < n; ++i) {
    if (static_cast<int>(rows[i].size()) != n) throw std::runtime_error(file.string() + ": matrix is not square");
    for (int j = 0; j < n; ++j) m(i, j) = parse_double(rows[i][j]);
  }
  return m;
}

std::vector<std::vector<long long>> read_counts_csv(const fs::path& file) {
  std::vector<std::vector<long long>> out;
  for (const auto& cells : read_csv(file, false)) {
    std::vector<long long> row;
    for (const auto& c : cells) row.push_back(std::stoll(c));
    out.push_back(std::move(row));
  }
  return out;
}

ResultSet read_results(const fs::path& dir) {
  const json j = json::parse(read_file(dir / "summary.json"));
  ResultSet rs;
  rs.tasks = j.at("instances").get<std::vector<std::string>>();
  rs.finals = j.at("final_best").get<std::vector<std::vector<double>>>();
  return rs;
}

}  // namespace mtea::bench
