// SPDX-License-Identifier: MIT
// Synthetic optimization environments: progressively revealed GP samples on
// a box, and a contextual variant over a product of context and action boxes.
#pragma once

#include <map>
#include <memory>
#include <optional>

#include "gpband/posterior.hpp"
#include "gpband/sampler.hpp"

namespace gpband {

/// A stochastic function to optimize. `query` returns a noisy observation,
/// `true_value` the latent value (revealing it if the function is lazily
/// sampled), `best_value` the current estimate of sup f, which never
/// decreases as more points are revealed.
class Environment {
 public:
  virtual ~Environment() = default;
  virtual const Box& domain() const = 0;
  virtual double query(const Point& x) = 0;
  virtual double true_value(const Point& x) = 0;
  virtual double best_value() = 0;
  /// False when best_value is a grid/running-max approximation.
  virtual bool best_is_exact() const = 0;
  virtual double noise_sigma() const = 0;
};

/// GP sample revealed lazily, preconditioned on a deterministic grid draw so
/// that best_value has dense support. Function randomness and observation
/// noise use independent streams of the master seed.
class GridGPEnv : public Environment {
 public:
  GridGPEnv(Kernel kernel, Box domain, std::size_t res_per_axis, double sigma,
            std::uint64_t seed);

  const Box& domain() const override { return domain_; }
  double query(const Point& x) override;
  double true_value(const Point& x) override;
  double best_value() override { return best_; }
  bool best_is_exact() const override { return false; }
  double noise_sigma() const override { return sigma_; }

  const std::vector<Point>& grid() const { return grid_; }
  std::size_t revealed_count() const { return values_.size(); }

 private:
  Kernel kernel_;
  Box domain_;
  double sigma_;
  std::vector<Point> grid_;
  Posterior lazy_;
  std::map<Point, double> values_;
  double best_;
  Rng fn_rng_;
  Rng noise_rng_;
};

/// Contextual environment on the product box (context axes first). Contexts
/// arrive i.i.d. uniform over the context grid columns; the per-context best
/// is the column maximum together with anything revealed in that column.
class ContextualGPEnv {
 public:
  ContextualGPEnv(Kernel joint_kernel, Box context_box, Box action_box,
                  std::size_t res_per_axis, double sigma, std::uint64_t seed);

  const Box& context_box() const { return context_box_; }
  const Box& action_box() const { return action_box_; }
  const Box& joint_box() const { return joint_box_; }
  double noise_sigma() const { return core_->noise_sigma(); }

  Point next_context();
  double query(const Point& context, const Point& action);
  double true_value(const Point& context, const Point& action);
  /// Best action value for one context (grid-column approximation).
  double best_value_for(const Point& context);

  const std::vector<Point>& context_grid() const { return context_grid_; }

 private:
  Point joint(const Point& context, const Point& action) const;
  std::map<Point, double>::iterator ensure_column(const Point& context);

  Box context_box_, action_box_, joint_box_;
  std::unique_ptr<GridGPEnv> core_;
  std::vector<Point> context_grid_;
  std::map<Point, double> column_best_;
  Rng context_rng_;
};

}  // namespace gpband
