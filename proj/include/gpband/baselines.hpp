// SPDX-License-Identifier: MIT
// Reference strategies: GP-UCB on a fixed uniform grid, and random search.
#pragma once

#include "gpband/posterior.hpp"
#include "gpband/trace.hpp"

namespace gpband {

struct GpUcbResult {
  RunTrace trace;
  double beta = 0.0;
  std::size_t grid_size = 0;
};

/// GP-UCB restricted to a fixed uniform grid. The confidence multiplier puts
/// the grid size in the union bound: beta = sqrt(2 (u + log(2 n |grid|))).
GpUcbResult run_gp_ucb(Environment& env, const Kernel& kernel, std::size_t n,
                       std::size_t res_per_axis, double u = 2.0);

/// The grid size a per-round accuracy argument would demand at round t,
/// (t^2 + 1)^D points per axis product. Returned as a double since it
/// overflows integers long before it could be allocated.
double gp_ucb_theoretical_grid(std::uint64_t t, std::size_t dims);

/// Uniform random search; recommendation is the best point observed so far.
RunTrace run_random_search(Environment& env, std::size_t n, std::uint64_t seed);

}  // namespace gpband
