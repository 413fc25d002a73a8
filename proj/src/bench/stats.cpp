#include <algorithm>
#include <cmath>
#include <numeric>

#include "mtea/bench.hpp"

namespace mtea::bench {

namespace {

/// Midranks of the pooled sample a ++ b.
std::vector<double> pooled_ranks(const std::vector<double>& a, const std::vector<double>& b) {
  std::vector<double> pooled(a);
  pooled.insert(pooled.end(), b.begin(), b.end());
  const std::size_t n = pooled.size();
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](std::size_t i, std::size_t j) { return pooled[i] < pooled[j]; });
  std::vector<double> ranks(n);
  for (std::size_t i = 0; i < n;) {
    std::size_t j = i;
    while (j + 1 < n && pooled[order[j + 1]] == pooled[order[i]]) ++j;
    const double mid = (static_cast<double>(i) + static_cast<double>(j)) / 2.0 + 1.0;
    for (std::size_t k = i; k <= j; ++k) ranks[order[k]] = mid;
    i = j + 1;
  }
  return ranks;
}

void require_samples(const std::vector<double>& a, const std::vector<double>& b) {
  if (a.empty() || b.empty()) throw ContractViolation("rank-sum test needs two non-empty samples");
}

double rank_sum_of_first(const std::vector<double>& ranks, std::size_t n) {
  return std::accumulate(ranks.begin(), ranks.begin() + static_cast<std::ptrdiff_t>(n), 0.0);
}

struct Enumerator {
  const std::vector<double>& ranks;
  double center;
  double observed;
  long long extreme = 0;
  long long total = 0;

  void walk(std::size_t from, std::size_t left, double sum) {
    if (left == 0) {
      ++total;
      if (std::abs(sum - center) >= observed - 1e-9) ++extreme;
      return;
    }
    for (std::size_t i = from; i + left <= ranks.size(); ++i) walk(i + 1, left - 1, sum + ranks[i]);
  }
};

}  // namespace

double rank_sum_exact_p(const std::vector<double>& a, const std::vector<double>& b) {
  require_samples(a, b);
  const auto ranks = pooled_ranks(a, b);
  const std::size_t n = a.size();
  const double big_n = static_cast<double>(ranks.size());
  const double center = n * (big_n + 1.0) / 2.0;
  Enumerator e{ranks, center, std::abs(rank_sum_of_first(ranks, n) - center)};
  e.walk(0, n, 0.0);
  return static_cast<double>(e.extreme) / static_cast<double>(e.total);
}

double rank_sum_normal_p(const std::vector<double>& a, const std::vector<double>& b) {
  require_samples(a, b);
  const auto ranks = pooled_ranks(a, b);
  const double n = static_cast<double>(a.size());
  const double m = static_cast<double>(b.size());
  const double big_n = n + m;
  const double u = rank_sum_of_first(ranks, a.size()) - n * (n + 1.0) / 2.0;

  std::vector<double> sorted(ranks);
  std::sort(sorted.begin(), sorted.end());
  double ties = 0.0;
  for (std::size_t i = 0; i < sorted.size();) {
    std::size_t j = i;
    while (j < sorted.size() && sorted[j] == sorted[i]) ++j;
    const double t = static_cast<double>(j - i);
    ties += t * t * t - t;
    i = j;
  }
  const double var = n * m / 12.0 * ((big_n + 1.0) - ties / (big_n * (big_n - 1.0)));
  if (var <= 0.0) return 1.0;
  const double z = (std::abs(u - n * m / 2.0) - 0.5) / std::sqrt(var);
  if (z <= 0.0) return 1.0;
  return std::min(1.0, std::erfc(z / std::sqrt(2.0)));
}

RankSum wilcoxon_rank_sum(const std::vector<double>& a, const std::vector<double>& b) {
  require_samples(a, b);
  RankSum r;
  const auto ranks = pooled_ranks(a, b);
  const double n = static_cast<double>(a.size());
  r.u = rank_sum_of_first(ranks, a.size()) - n * (n + 1.0) / 2.0;
  r.exact = a.size() + b.size() <= exact_limit;
  r.p = r.exact ? rank_sum_exact_p(a, b) : rank_sum_normal_p(a, b);
  return r;
}

double mean(const std::vector<double>& v) {
  if (v.empty()) return 0.0;
  return std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(v.size());
}

double stddev(const std::vector<double>& v) {
  if (v.size() < 2) return 0.0;
  const double mu = mean(v);
  double ss = 0.0;
  for (double x : v) ss += (x - mu) * (x - mu);
  return std::sqrt(ss / static_cast<double>(v.size() - 1));
}

std::string significance_mark(const std::vector<double>& subject, const std::vector<double>& reference) {
  const double p = wilcoxon_rank_sum(reference, subject).p;
  if (p >= significance) return "≈";
  const double ref = mean(reference);
  const double sub = mean(subject);
  if (ref > sub) return "-";
  if (ref < sub) return "+";
  return "≈";
}

StatsSummary summarize_finals(const std::vector<std::string>& task_names,
                              const std::vector<std::vector<double>>& subject,
                              const std::vector<std::vector<double>>* reference) {
  StatsSummary out;
  auto column = [](const std::vector<std::vector<double>>& finals, std::size_t t) {
    std::vector<double> c;
    for (const auto& row : finals) c.push_back(row.at(t));
    return c;
  };
  for (std::size_t t = 0; t < task_names.size(); ++t) {
    TaskStats ts;
    ts.task = task_names[t];
    const auto sub = column(subject, t);
    ts.mean = mean(sub);
    ts.std = stddev(sub);
    if (reference) {
      const auto ref = column(*reference, t);
      ts.reference_mean = mean(ref);
      ts.reference_std = stddev(ref);
      ts.p_value = wilcoxon_rank_sum(ref, sub).p;
      ts.mark = significance_mark(sub, ref);
    }
    out.tasks.push_back(std::move(ts));
  }
  return out;
}

namespace {

std::vector<std::vector<double>> finals_of(const std::vector<MultitaskRun>& runs) {
  std::vector<std::vector<double>> f;
  for (const auto& r : runs) {
    std::vector<double> row;
    for (const auto& tr : r.traces) row.push_back(tr.back());
    f.push_back(std::move(row));
  }
  return f;
}

}  // namespace

StatsSummary summarize(const std::vector<MultitaskRun>& runs, const std::vector<MultitaskRun>* reference) {
  if (runs.empty()) throw ContractViolation("summarize needs at least one run");
  const auto sub = finals_of(runs);
  if (!reference) return summarize_finals(runs.front().task_names, sub);
  const auto ref = finals_of(*reference);
  return summarize_finals(runs.front().task_names, sub, &ref);
}

}  // namespace mtea::bench
