// SPDX-License-Identifier: MIT
// Stationary covariance functions, the metric they induce, and per-family
// local smoothness envelopes d(x,y) <= C * linf(x,y)^alpha.
#pragma once

#include <memory>
#include <string>

#include "gpband/common.hpp"

namespace gpband {

/// Envelope of the induced metric in terms of the sup distance:
/// d(x,y) <= g(r) = coef * r^alpha whenever linf(x,y) <= delta.
struct Envelope {
  double coef = 1.0;
  double alpha = 1.0;
  double delta = std::numeric_limits<double>::infinity();

  double g(double r) const { return coef * std::pow(r, alpha); }

  /// Envelope after rescaling coordinates by `scale` (distances in the new
  /// units are `scale` times shorter).
  Envelope rescaled(double scale) const {
    return Envelope{coef * std::pow(scale, alpha), alpha, delta / scale};
  }
};

namespace detail {
class KernelNode;
}

/// Value-semantic covariance function. Leaf families act on a coordinate
/// block [offset, offset+dims); sums and products combine blocks, which is
/// how context/action kernels are assembled.
class Kernel {
 public:
  static Kernel squared_exp(std::size_t dims, double lengthscale, double variance,
                            std::size_t offset = 0);
  static Kernel matern12(std::size_t dims, double lengthscale, double variance,
                         std::size_t offset = 0);
  static Kernel matern32(std::size_t dims, double lengthscale, double variance,
                         std::size_t offset = 0);
  static Kernel matern52(std::size_t dims, double lengthscale, double variance,
                         std::size_t offset = 0);
  static Kernel rational_quadratic(std::size_t dims, double lengthscale, double variance,
                                   double shape_c1, double shape_c2, std::size_t offset = 0);
  static Kernel triangle(std::size_t dims, double lengthscale, double variance,
                         std::size_t offset = 0);
  static Kernel sum(const Kernel& a, const Kernel& b);
  static Kernel product(const Kernel& a, const Kernel& b);

  double operator()(const Point& x, const Point& y) const;

  /// K(x,x); constant for every family here.
  double prior_variance() const;

  /// sqrt(K(x,x) + K(y,y) - 2K(x,y)), with the radicand clamped at zero.
  double induced_dist(const Point& x, const Point& y) const;

  Envelope envelope() const;

  /// Number of input coordinates the kernel reads (max offset+dims).
  std::size_t input_dims() const;

  std::string describe() const;

 private:
  explicit Kernel(std::shared_ptr<const detail::KernelNode> node) : node_(std::move(node)) {}
  std::shared_ptr<const detail::KernelNode> node_;
};

}  // namespace gpband
