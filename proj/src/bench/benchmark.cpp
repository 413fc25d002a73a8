#include <algorithm>
#include <cctype>
#include <map>

#include "mtea/bench.hpp"

namespace mtea::bench {

namespace {

std::string lower(std::string s) {
  for (char& c : s) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return s;
}

std::string upper(std::string s) {
  for (char& c : s) c = static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
  return s;
}

const std::map<std::string, std::vector<std::string>>& domains() {
  static const std::map<std::string, std::vector<std::string>> sets = {
      {"TSP", {"kroA100", "kroA150", "kroA200", "kroB150", "kroC100"}},
      {"CVRP", {"P-n50-k7", "P-n50-k8", "P-n55-k7", "P-n55-k15", "P-n60-k10"}},
      {"QAP", {"nug25", "nug30", "kra30a", "kra30b", "kra32"}},
      {"LOP", {"N-t59d11xx", "N-t59f11xx", "N-t59i11xx", "N-t65f11xx", "N-t70f11xx"}},
  };
  return sets;
}

const std::vector<std::string> domain_order = {"TSP", "CVRP", "QAP", "LOP"};

}  // namespace

std::vector<std::string> benchmark_names() {
  std::vector<std::string> names = domain_order;
  for (std::size_t i = 0; i < domain_order.size(); ++i)
    for (std::size_t j = i + 1; j < domain_order.size(); ++j)
      names.push_back(domain_order[i] + "_" + domain_order[j]);
  names.push_back("ALL");
  return names;
}

std::vector<std::string> benchmark_instances(const std::string& name) {
  const std::string key = upper(name);
  std::vector<std::string> parts;
  if (key == "ALL") {
    parts = domain_order;
  } else {
    std::size_t start = 0;
    while (start <= key.size()) {
      const auto us = key.find('_', start);
      parts.push_back(key.substr(start, us == std::string::npos ? std::string::npos : us - start));
      if (us == std::string::npos) break;
      start = us + 1;
    }
    if (parts.size() > 2) parts.clear();
    if (parts.size() == 2 && parts[0] == parts[1]) parts.clear();
    if (parts.size() == 2) {
      const auto pos = [&](const std::string& d) {
        return std::find(domain_order.begin(), domain_order.end(), d) - domain_order.begin();
      };
      if (pos(parts[0]) > pos(parts[1])) parts.clear();
    }
  }
  std::vector<std::string> out;
  for (const auto& p : parts) {
    auto it = domains().find(p);
    if (it == domains().end()) {
      out.clear();
      break;
    }
    out.insert(out.end(), it->second.begin(), it->second.end());
  }
  if (out.empty()) throw ContractViolation("unknown benchmark '" + name + "'");
  return out;
}

std::optional<fs::path> find_instance_file(const fs::path& data_dir, const std::string& name) {
  std::error_code ec;
  if (!fs::is_directory(data_dir, ec)) return std::nullopt;
  std::vector<std::string> stems = {lower(name)};
  if (stems[0].rfind("n-", 0) == 0) stems.push_back(stems[0].substr(2));
  static const std::vector<std::string> exts = {"", ".tsp", ".vrp", ".dat", ".mat", ".txt"};
  std::vector<fs::path> hits;
  for (auto it = fs::recursive_directory_iterator(data_dir, ec); !ec && it != fs::recursive_directory_iterator();
       it.increment(ec)) {
    if (!it->is_regular_file(ec)) continue;
    const std::string file = lower(it->path().filename().string());
    for (const auto& stem : stems)
      for (const auto& ext : exts)
        if (file == stem + ext) hits.push_back(it->path());
  }
  if (hits.empty()) return std::nullopt;
  std::sort(hits.begin(), hits.end());
  return hits.front();
}

namespace {

std::string missing_message(const std::vector<std::string>& names, const fs::path& dir) {
  std::string msg = "missing instances under " + dir.string() + ":";
  for (const auto& n : names) msg += " " + n;
  return msg;
}

}  // namespace

MissingInstances::MissingInstances(std::vector<std::string> names, const fs::path& data_dir)
    : std::runtime_error(missing_message(names, data_dir)), names_(std::move(names)) {}

std::vector<ProblemInstance> assemble_benchmark(const std::string& name, const fs::path& data_dir) {
  const auto names = benchmark_instances(name);
  std::vector<fs::path> files;
  std::vector<std::string> missing;
  for (const auto& n : names) {
    auto f = find_instance_file(data_dir, n);
    if (f)
      files.push_back(*f);
    else
      missing.push_back(n);
  }
  if (!missing.empty()) throw MissingInstances(missing, data_dir);
  std::vector<ProblemInstance> out;
  for (std::size_t i = 0; i < names.size(); ++i) {
    ProblemInstance inst = problems::load_instance(files[i]);
    inst.name = names[i];
    inst.validate();
    out.push_back(std::move(inst));
  }
  return out;
}

}  // namespace mtea::bench
