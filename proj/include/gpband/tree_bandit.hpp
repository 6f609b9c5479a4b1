// SPDX-License-Identifier: MIT
// Optimistic tree search over an adaptive partition with chained confidence widths.
#pragma once

#include "gpband/confidence.hpp"
#include "gpband/partition.hpp"
#include "gpband/posterior.hpp"
#include "gpband/trace.hpp"

namespace gpband {

struct TreeBanditOptions {
  unsigned n_split = 3;  // odd, >= 3
  BetaMode beta_mode = BetaMode::TightOddN;
  double u = 2.0;
  double theory_scale = 1.0;
  bool check_events = false;  // track |f - mu| <= beta sigma at selected leaves
  std::uint64_t step_guard = 20'000'000;
};

struct TreeEventStats {
  bool beta_event_held = true;  // held at every selected leaf centre
  double max_delta_over_width = 0.0;
  std::uint64_t max_evals_below_cap = 0;  // max per-leaf evals at depth < h_max
  bool eval_budget_respected = true;      // per-leaf evals <= q_h + 1 below the cap
};

struct TreeLeafInfo {
  NodeId id;
  Point center;
  std::uint64_t evals = 0;
};

struct TreeBanditResult {
  RunTrace trace;
  std::uint64_t steps = 0;
  std::uint64_t refinements = 0;
  unsigned h_max = 0;
  double beta = 0.0;
  std::vector<double> v_table;  // V_h for h = 0..h_max
  std::vector<TreeLeafInfo> leaves;
  TreeEventStats events;
  std::vector<unsigned> row_depths;  // depth of the evaluated leaf, per trace row
};

TreeBanditResult run_tree_bandit(Environment& env, const Kernel& kernel, std::size_t n,
                                 const TreeBanditOptions& opt = {});

/// Doubling-trick wrapper: runs phases of budget n0, 2*n0, 4*n0, ... until n
/// evaluations total, keeping observations but recomputing the per-phase
/// constants (beta, V_h, h_max) from each phase budget.
TreeBanditResult run_tree_bandit_anytime(Environment& env, const Kernel& kernel, std::size_t n,
                                         std::size_t n0, const TreeBanditOptions& opt = {});

}  // namespace gpband
