// SPDX-License-Identifier: MIT
// Adaptive zooming over a self-maintained covering of the domain.
#pragma once

#include "gpband/confidence.hpp"
#include "gpband/covering.hpp"
#include "gpband/posterior.hpp"
#include "gpband/trace.hpp"

namespace gpband {

struct ZoomBanditOptions {
  double u = 2.0;
  double theory_scale = 1.0;
  bool check_events = false;  // track |f - mu| <= beta sigma at selected points
  // Cross-check the incremental covering maintenance against an exhaustive
  // covering_check of the whole domain (eps = r_min/4) before every
  // evaluation. Expensive; meant for validation runs.
  bool verify_cover_each_round = false;
  std::uint64_t step_guard = 20'000'000;
};

struct ZoomEventStats {
  bool beta_event_held = true;
  bool repeat_budget_respected = true;  // per-level evals <= ceil(s^2 b^2 / 2W^2) + 1
  bool cover_always_held = true;        // valid when verify_cover_each_round
  std::uint64_t max_evals_per_level = 0;
};

struct ZoomPointInfo {
  Point x;        // user coordinates
  Point z;        // normalized coordinates
  unsigned level = 0;
  double radius = 1.0;  // normalized, 2^-level
  double mu = 0.0, sd = 0.0;
  std::uint64_t inserted = 0;  // insertion order, 0-based
  std::uint64_t evals = 0;
  std::uint64_t evals_at_level = 0;
};

struct ZoomBanditResult {
  RunTrace trace;
  std::uint64_t steps = 0;
  std::uint64_t adds = 0;
  std::uint64_t shrinks = 0;
  double beta = 0.0;
  double r_min = 0.0;            // normalized terminal-radius threshold
  std::vector<double> w_table;   // W at radius 2^-k for k = 0..max level
  std::vector<ZoomPointInfo> active;
  ZoomEventStats events;
  std::vector<unsigned> row_levels;  // level of the evaluated point, per trace row
};

ZoomBanditResult run_zoom_bandit(Environment& env, const Kernel& kernel, std::size_t n,
                                 const ZoomBanditOptions& opt = {});

/// Doubling-trick wrapper; keeps observations and active points across phases,
/// recomputing beta, the width table and r_min from each phase budget.
ZoomBanditResult run_zoom_bandit_anytime(Environment& env, const Kernel& kernel, std::size_t n,
                                         std::size_t n0, const ZoomBanditOptions& opt = {});

}  // namespace gpband
