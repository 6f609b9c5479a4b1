// SPDX-License-Identifier: MIT
// Seed fan-out execution of experiment configs, CSV/summary emission, and
// cross-config comparison.
#pragma once

#include <iosfwd>

#include "gpband/bench/config.hpp"
#include "gpband/bench/csv.hpp"
#include "gpband/bench/summary.hpp"

namespace gpband::bench {

struct SeedRunOutput {
  std::uint64_t seed = 0;
  RunTrace trace;
  std::size_t dims = 0;
  std::map<std::string, std::string> meta;
};

/// Worker count: GPBENCH_WORKERS if set, else hardware concurrency, clamped
/// to [1, 32].
std::size_t worker_count();

/// Runs one seed of the config. Deterministic.
SeedRunOutput execute_single(const ExperimentConfig& cfg, std::uint64_t seed);

/// Runs all seeds (parallel), ordered as cfg.seeds.
std::vector<SeedRunOutput> execute_config(const ExperimentConfig& cfg);

struct ExperimentOutcome {
  std::vector<std::string> csv_paths;
  std::string summary_path;
  SummaryStats stats;
};

/// Writes one CSV per seed plus summary.json under cfg.output.
ExperimentOutcome run_experiment(const ExperimentConfig& cfg);

/// Prints an aligned-checkpoint comparison table for previously produced
/// outputs; optionally writes a median cumulative-regret SVG. Budgets are
/// aligned to the common prefix with a warning on `diag`.
void compare_outputs(const std::vector<ExperimentConfig>& cfgs, const std::string& svg_path,
                     std::ostream& table_out, std::ostream& diag);

}  // namespace gpband::bench
