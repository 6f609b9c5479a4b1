// SPDX-License-Identifier: MIT
#include "gpband/bench/summary.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <stdexcept>

#include <nlohmann/json.hpp>

namespace gpband::bench {
namespace {

double quantile(std::vector<double>& sorted, double q) {
  if (sorted.empty()) return 0.0;
  const double pos = q * double(sorted.size() - 1);
  const std::size_t lo = std::size_t(std::floor(pos));
  const std::size_t hi = std::min(lo + 1, sorted.size() - 1);
  const double frac = pos - double(lo);
  return sorted[lo] * (1.0 - frac) + sorted[hi] * frac;
}

}  // namespace

double median(std::vector<double> values) {
  std::sort(values.begin(), values.end());
  return quantile(values, 0.5);
}

double iqr(std::vector<double> values) {
  std::sort(values.begin(), values.end());
  return quantile(values, 0.75) - quantile(values, 0.25);
}

std::vector<std::size_t> default_checkpoints(std::size_t n) {
  std::vector<std::size_t> cps;
  for (const std::size_t c : {n / 4, n / 2, 3 * n / 4, n})
    if (c > 0 && (cps.empty() || c != cps.back())) cps.push_back(c);
  return cps;
}

SummaryStats summarize(const std::vector<RunTrace>& traces,
                       const std::vector<std::size_t>& checkpoints) {
  SummaryStats s;
  s.seed_count = traces.size();
  if (traces.empty()) return s;
  std::size_t len = traces.front().rows.size();
  for (const auto& t : traces) len = std::min(len, t.rows.size());
  s.budget = len;
  for (const auto& t : traces) s.total_wall_ns += t.total_wall_ns;

  for (const std::size_t cp : checkpoints) {
    if (cp == 0 || cp > len) continue;
    CheckpointStats c;
    c.n = cp;
    std::vector<double> cum, simple;
    for (const auto& t : traces) {
      cum.push_back(t.rows[cp - 1].cum_regret);
      simple.push_back(t.rows[cp - 1].simple_regret);
    }
    c.cum_median = median(cum);
    c.cum_iqr = iqr(cum);
    c.simple_median = median(simple);
    c.simple_iqr = iqr(simple);
    s.checkpoints.push_back(c);
  }

  // Slope of log median simple regret against log n over the last half.
  const std::size_t first = std::max<std::size_t>(2, len / 2);
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  std::size_t m = 0;
  for (std::size_t ne = first; ne <= len; ++ne) {
    std::vector<double> simple;
    for (const auto& t : traces) simple.push_back(t.rows[ne - 1].simple_regret);
    const double x = std::log(double(ne));
    const double y = std::log(std::max(median(simple), 1e-15));
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
    ++m;
  }
  if (m >= 2) {
    const double det = double(m) * sxx - sx * sx;
    s.simple_slope = det > 0 ? (double(m) * sxy - sx * sy) / det : 0.0;
  }
  return s;
}

void write_summary_json(const std::string& path, const SummaryStats& stats,
                        const std::vector<std::uint64_t>& seeds,
                        const std::vector<RunTrace>& traces,
                        const std::map<std::string, std::string>& meta) {
  nlohmann::json j;
  for (const auto& [k, v] : meta) j[k] = v;
  j["budget"] = stats.budget;
  j["seed_count"] = stats.seed_count;
  j["simple_regret_loglog_slope"] = stats.simple_slope;
  j["total_wall_ns"] = stats.total_wall_ns;
  j["checkpoints"] = nlohmann::json::array();
  for (const auto& c : stats.checkpoints) {
    nlohmann::json cj;
    cj["n"] = c.n;
    cj["cum_regret_median"] = c.cum_median;
    cj["cum_regret_iqr"] = c.cum_iqr;
    cj["simple_regret_median"] = c.simple_median;
    cj["simple_regret_iqr"] = c.simple_iqr;
    j["checkpoints"].push_back(cj);
  }
  j["per_seed"] = nlohmann::json::array();
  for (std::size_t i = 0; i < traces.size() && i < seeds.size(); ++i) {
    nlohmann::json sj;
    sj["seed"] = seeds[i];
    sj["rows"] = traces[i].rows.size();
    if (!traces[i].rows.empty()) {
      sj["final_cum_regret"] = traces[i].rows.back().cum_regret;
      sj["final_simple_regret"] = traces[i].rows.back().simple_regret;
    }
    sj["best_value"] = traces[i].best_value;
    sj["wall_ns"] = traces[i].total_wall_ns;
    j["per_seed"].push_back(sj);
  }
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open \"" + path + "\" for writing");
  out << j.dump(2) << "\n";
}

}  // namespace gpband::bench
