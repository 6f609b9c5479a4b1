// SPDX-License-Identifier: MIT
// Per-evaluation regret trace shared by every algorithm and baseline.
#pragma once

#include "gpband/env.hpp"

namespace gpband {

struct TraceRow {
  std::uint64_t t = 0;    // algorithm step count (refinements included)
  std::uint64_t n_e = 0;  // evaluations so far
  Point x;                // evaluated point
  double y = 0.0;         // observed value
  double delta = 0.0;     // f* - f(x)
  double cum_regret = 0.0;
  double simple_regret = 0.0;  // f* - f(recommendation at this row)
  std::uint64_t support = 0;   // leaf count / active-point count / grid size
  std::uint64_t wall_ns = 0;   // loop wall time elapsed at this row
};

struct RunTrace {
  std::vector<TraceRow> rows;
  std::vector<Point> recommendations;  // one per row, last one final
  Point final_recommendation;
  double best_value = 0.0;  // environment's f* estimate after the run
  bool best_exact = false;
  std::uint64_t total_wall_ns = 0;
};

/// Fills delta / cum_regret / simple_regret once the run is over: reveals
/// every evaluated and recommended point first so the environment's running
/// best is final, then differences are taken against one fixed value.
inline void finalize_trace(RunTrace& trace, Environment& env) {
  for (const auto& row : trace.rows) env.true_value(row.x);
  for (const auto& rec : trace.recommendations) env.true_value(rec);
  const double best = env.best_value();
  trace.best_value = best;
  trace.best_exact = env.best_is_exact();
  double cum = 0.0;
  for (std::size_t i = 0; i < trace.rows.size(); ++i) {
    auto& row = trace.rows[i];
    row.delta = best - env.true_value(row.x);
    cum += row.delta;
    row.cum_regret = cum;
    row.simple_regret = best - env.true_value(trace.recommendations[i]);
  }
  if (!trace.recommendations.empty()) trace.final_recommendation = trace.recommendations.back();
}

}  // namespace gpband
