// SPDX-License-Identifier: MIT
// Gaussian process posterior with O(t^2) incremental Cholesky updates,
// batched queries, and information gain.
#pragma once

#include <Eigen/Dense>

#include "gpband/kernel.hpp"

namespace gpband {

struct PosteriorStats {
  double mean = 0.0;
  double sd = 0.0;
};

/// Posterior of a GP prior after observing y_i = f(x_i) + noise. A zero noise
/// variance means noiseless conditioning; a jitter of 1e-10 * K(x,x) keeps
/// the factorization positive definite in that mode.
class Posterior {
 public:
  Posterior(Kernel kernel, double noise_var);

  /// Appends one observation; cost O(t^2).
  void update(const Point& x, double y);

  void update_batch(const std::vector<Point>& xs, const std::vector<double>& ys);

  PosteriorStats query(const Point& x) const;

  /// One triangular solve over the whole batch; much faster than repeated
  /// single-point queries.
  std::vector<PosteriorStats> query_many(const std::vector<Point>& xs) const;

  std::size_t count() const { return n_; }
  const Kernel& kernel() const { return kernel_; }
  double noise_var() const { return noise_var_; }
  const std::vector<Point>& points() const { return xs_; }

 private:
  double diag_term(const Point& x) const;
  void ensure_capacity(std::size_t m);

  Kernel kernel_;
  double noise_var_;
  std::size_t n_ = 0;
  Eigen::MatrixXd L_;  // lower Cholesky factor of Gram + diag terms
  Eigen::VectorXd z_;  // L^{-1} y
  std::vector<Point> xs_;
};

/// 0.5 * logdet(I + noise_var^{-1} Gram) for the given points; requires a
/// strictly positive noise variance.
double info_gain(const Kernel& kernel, double noise_var, const std::vector<Point>& xs);

/// Same quantity from an explicit Gram matrix.
double info_gain_gram(const Eigen::MatrixXd& gram, double noise_var);

}  // namespace gpband
