// SPDX-License-Identifier: MIT
// Exact GP sample paths: lazily revealed point by point, or drawn jointly on
// a fixed grid with a reusable factorization.
#pragma once

#include <Eigen/Dense>
#include <map>

#include "gpband/posterior.hpp"

namespace gpband {

/// One sample path f ~ GP(0, K), revealed sequentially: each new point is
/// drawn from the conditional law given everything revealed so far, so any
/// reveal order yields the same joint distribution. Exact repeats hit a cache.
class LazySampler {
 public:
  LazySampler(Kernel kernel, std::uint64_t seed);

  double reveal(const Point& x);

  std::vector<double> reveal_many(const std::vector<Point>& xs);

  std::size_t revealed_count() const { return cache_.size(); }

 private:
  Posterior post_;
  std::map<Point, double> cache_;
  Rng rng_;
};

/// Joint sampler on a fixed set of points (at most 4096); the Cholesky factor
/// is computed once and reused across draws.
class GridSampler {
 public:
  GridSampler(const Kernel& kernel, std::vector<Point> grid);

  std::vector<double> draw(Rng& rng) const;

  const std::vector<Point>& grid() const { return grid_; }

 private:
  std::vector<Point> grid_;
  Eigen::MatrixXd L_;
};

/// Single draw on a grid from a fresh seed; same seed, same values.
std::vector<double> sample_grid(const Kernel& kernel, const std::vector<Point>& grid,
                                std::uint64_t seed);

/// Regular grid on a box with `res` points per axis (axis 0 varies slowest).
std::vector<Point> make_grid(const Box& box, std::size_t res);

}  // namespace gpband
