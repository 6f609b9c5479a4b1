// SPDX-License-Identifier: MIT
// Cross-seed summary statistics for regret traces.
#pragma once

#include <cstdint>
#include <map>
#include <string>

#include "gpband/trace.hpp"

namespace gpband::bench {

struct CheckpointStats {
  std::size_t n = 0;
  double cum_median = 0.0, cum_iqr = 0.0;
  double simple_median = 0.0, simple_iqr = 0.0;
};

struct SummaryStats {
  std::size_t budget = 0;
  std::size_t seed_count = 0;
  std::vector<CheckpointStats> checkpoints;
  // Least-squares slope of log median simple regret vs log n over the last
  // half of the run; simple regret is floored at 1e-15 first.
  double simple_slope = 0.0;
  std::uint64_t total_wall_ns = 0;
};

double median(std::vector<double> values);
double iqr(std::vector<double> values);  // q75 - q25, linear interpolation

/// Default checkpoints: n/4, n/2, 3n/4, n (deduplicated, nonzero).
std::vector<std::size_t> default_checkpoints(std::size_t n);

/// Traces must have one row per evaluation (n_e = 1..len). Rows beyond the
/// shortest trace are ignored.
SummaryStats summarize(const std::vector<RunTrace>& traces,
                       const std::vector<std::size_t>& checkpoints);

void write_summary_json(const std::string& path, const SummaryStats& stats,
                        const std::vector<std::uint64_t>& seeds,
                        const std::vector<RunTrace>& traces,
                        const std::map<std::string, std::string>& meta);

}  // namespace gpband::bench
