// SPDX-License-Identifier: MIT
#include "gpband/env.hpp"

#include <algorithm>
#include <cmath>

namespace gpband {

GridGPEnv::GridGPEnv(Kernel kernel, Box domain, std::size_t res_per_axis, double sigma,
                     std::uint64_t seed)
    : kernel_(kernel),
      domain_(std::move(domain)),
      sigma_(sigma),
      lazy_(kernel, 0.0),
      fn_rng_(make_rng(derive_seed(seed, 1))),
      noise_rng_(make_rng(derive_seed(seed, 2))) {
  if (sigma < 0.0) throw std::invalid_argument("GridGPEnv: sigma must be >= 0");
  if (kernel_.input_dims() > domain_.dims())
    throw std::invalid_argument("GridGPEnv: kernel reads more axes than the domain has");
  grid_ = make_grid(domain_, res_per_axis);
  if (grid_.size() > 4096)
    throw std::invalid_argument("GridGPEnv: grid larger than 4096 points");
  GridSampler gs(kernel_, grid_);
  const auto vals = gs.draw(fn_rng_);
  lazy_.update_batch(grid_, vals);
  best_ = *std::max_element(vals.begin(), vals.end());
  for (std::size_t i = 0; i < grid_.size(); ++i) values_.emplace(grid_[i], vals[i]);
}

double GridGPEnv::true_value(const Point& x) {
  if (!domain_.contains(x))
    throw std::invalid_argument("GridGPEnv: point outside the domain");
  auto it = values_.find(x);
  if (it != values_.end()) return it->second;
  const PosteriorStats s = lazy_.query(x);
  const double v = s.mean + s.sd * draw_normal(fn_rng_);
  lazy_.update(x, v);
  values_.emplace(x, v);
  best_ = std::max(best_, v);
  return v;
}

double GridGPEnv::query(const Point& x) {
  const double v = true_value(x);
  return sigma_ > 0.0 ? v + sigma_ * draw_normal(noise_rng_) : v;
}

ContextualGPEnv::ContextualGPEnv(Kernel joint_kernel, Box context_box, Box action_box,
                                 std::size_t res_per_axis, double sigma,
                                 std::uint64_t seed)
    : context_box_(std::move(context_box)),
      action_box_(std::move(action_box)),
      context_rng_(make_rng(derive_seed(seed, 7))) {
  Point lo = context_box_.lower, hi = context_box_.upper;
  lo.insert(lo.end(), action_box_.lower.begin(), action_box_.lower.end());
  hi.insert(hi.end(), action_box_.upper.begin(), action_box_.upper.end());
  joint_box_ = Box(std::move(lo), std::move(hi));
  core_ = std::make_unique<GridGPEnv>(std::move(joint_kernel), joint_box_, res_per_axis,
                                      sigma, seed);
  context_grid_ = make_grid(context_box_, res_per_axis);
}

Point ContextualGPEnv::joint(const Point& context, const Point& action) const {
  if (context.size() != context_box_.dims() || action.size() != action_box_.dims())
    throw std::invalid_argument("ContextualGPEnv: context/action dimension mismatch");
  Point p = context;
  p.insert(p.end(), action.begin(), action.end());
  return p;
}

Point ContextualGPEnv::next_context() {
  std::uniform_int_distribution<std::size_t> pick(0, context_grid_.size() - 1);
  return context_grid_[pick(context_rng_)];
}

double ContextualGPEnv::query(const Point& context, const Point& action) {
  return core_->query(joint(context, action));
}

double ContextualGPEnv::true_value(const Point& context, const Point& action) {
  const double v = core_->true_value(joint(context, action));
  auto it = ensure_column(context);
  it->second = std::max(it->second, v);
  return v;
}

double ContextualGPEnv::best_value_for(const Point& context) {
  return ensure_column(context)->second;
}

std::map<Point, double>::iterator ContextualGPEnv::ensure_column(const Point& context) {
  auto it = column_best_.find(context);
  if (it != column_best_.end()) return it;
  // Column maximum over the joint grid: all grid points whose context
  // coordinates match exactly.
  double best = -std::numeric_limits<double>::infinity();
  const std::size_t dc = context_box_.dims();
  for (const auto& gp : core_->grid()) {
    bool match = true;
    for (std::size_t a = 0; a < dc; ++a)
      if (gp[a] != context[a]) {
        match = false;
        break;
      }
    if (match) best = std::max(best, core_->true_value(gp));
  }
  if (!std::isfinite(best))
    throw std::invalid_argument(
        "ContextualGPEnv: context is not a grid column (contexts must come from "
        "next_context)");
  return column_best_.emplace(context, best).first;
}

}  // namespace gpband
