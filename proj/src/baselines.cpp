// SPDX-License-Identifier: MIT
#include "gpband/baselines.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "gpband/sampler.hpp"

namespace gpband {

GpUcbResult run_gp_ucb(Environment& env, const Kernel& kernel, std::size_t n,
                       std::size_t res_per_axis, double u) {
  GpUcbResult out;
  const auto grid = make_grid(env.domain(), res_per_axis);
  if (grid.size() > 4096)
    throw std::invalid_argument("run_gp_ucb: grid larger than the 4096-point posterior budget");
  out.grid_size = grid.size();
  out.beta = std::sqrt(2.0 * (u + std::log(2.0 * double(std::max<std::size_t>(n, 1)) *
                                           double(grid.size()))));
  Posterior post(kernel, env.noise_sigma() * env.noise_sigma());
  const auto start = std::chrono::steady_clock::now();
  for (std::size_t t = 1; t <= n; ++t) {
    const auto stats = post.query_many(grid);
    std::size_t sel = 0, rec = 0;
    double best_ucb = -std::numeric_limits<double>::infinity();
    double best_mean = -std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < grid.size(); ++i) {
      const double ucb = stats[i].mean + out.beta * stats[i].sd;
      if (ucb > best_ucb) {
        best_ucb = ucb;
        sel = i;
      }
      if (stats[i].mean > best_mean) {
        best_mean = stats[i].mean;
        rec = i;
      }
    }
    const double y = env.query(grid[sel]);
    post.update(grid[sel], y);
    TraceRow row;
    row.t = t;
    row.n_e = t;
    row.x = grid[sel];
    row.y = y;
    row.support = grid.size();
    row.wall_ns = std::uint64_t(std::chrono::duration_cast<std::chrono::nanoseconds>(
                                    std::chrono::steady_clock::now() - start)
                                    .count());
    out.trace.rows.push_back(std::move(row));
    // Posterior-mean argmax from the selection-time stats; lags the newest
    // observation by one round.
    out.trace.recommendations.push_back(grid[rec]);
  }
  out.trace.total_wall_ns =
      std::uint64_t(std::chrono::duration_cast<std::chrono::nanoseconds>(
                        std::chrono::steady_clock::now() - start)
                        .count());
  finalize_trace(out.trace, env);
  return out;
}

double gp_ucb_theoretical_grid(std::uint64_t t, std::size_t dims) {
  // Per-axis resolution t^2 + 1 (endpoints included), so (t^2 + 1)^D points.
  return std::pow(double(t) * double(t) + 1.0, double(dims));
}

RunTrace run_random_search(Environment& env, std::size_t n, std::uint64_t seed) {
  RunTrace trace;
  Rng rng = make_rng(seed);
  const Box& box = env.domain();
  Point best_x;
  double best_y = -std::numeric_limits<double>::infinity();
  const auto start = std::chrono::steady_clock::now();
  for (std::size_t t = 1; t <= n; ++t) {
    Point x(box.dims());
    for (std::size_t a = 0; a < box.dims(); ++a)
      x[a] = draw_uniform(rng, box.lower[a], box.upper[a]);
    const double y = env.query(x);
    if (y > best_y) {
      best_y = y;
      best_x = x;
    }
    TraceRow row;
    row.t = t;
    row.n_e = t;
    row.x = x;
    row.y = y;
    row.support = t;
    row.wall_ns = std::uint64_t(std::chrono::duration_cast<std::chrono::nanoseconds>(
                                    std::chrono::steady_clock::now() - start)
                                    .count());
    trace.rows.push_back(std::move(row));
    trace.recommendations.push_back(best_x);
  }
  trace.total_wall_ns = std::uint64_t(std::chrono::duration_cast<std::chrono::nanoseconds>(
                                          std::chrono::steady_clock::now() - start)
                                          .count());
  finalize_trace(trace, env);
  return trace;
}

}  // namespace gpband
