// SPDX-License-Identifier: MIT
// Contextual tree bandit over a product of context and action boxes.
#pragma once

#include "gpband/confidence.hpp"
#include "gpband/env.hpp"
#include "gpband/partition.hpp"
#include "gpband/posterior.hpp"
#include "gpband/trace.hpp"

namespace gpband {

struct ContextualBanditOptions {
  BetaMode beta_mode = BetaMode::Worst;  // binary splits, so no odd-split tightening
  double u = 2.0;
  double theory_scale = 1.0;
  bool check_candidates = false;  // re-verify recorded candidate points each round
  std::uint64_t step_guard = 20'000'000;
};

struct ContextualEventStats {
  bool candidate_property_held = true;  // valid when check_candidates
};

struct ContextualLeafInfo {
  NodeId id;
  Box cell;  // normalized coordinates over the joint box
};

struct ContextualBanditResult {
  // One row per served context; delta is contextual regret against the best
  // grid action for that row's context, and simple_regret repeats it.
  RunTrace trace;
  std::uint64_t steps = 0;
  std::uint64_t refinements = 0;
  unsigned h_max = 0;
  double beta = 0.0;
  std::vector<double> v_table;
  std::vector<double> g_table;  // cell-diameter envelope g(v1 rho^h)
  std::uint64_t leaf_count = 0;
  std::vector<ContextualLeafInfo> leaves;
  std::vector<unsigned> row_depths;
  std::vector<Point> row_contexts;
  ContextualEventStats events;
};

ContextualBanditResult run_contextual_bandit(ContextualGPEnv& env, const Kernel& joint_kernel,
                                             std::size_t n_contexts,
                                             const ContextualBanditOptions& opt = {});

}  // namespace gpband
