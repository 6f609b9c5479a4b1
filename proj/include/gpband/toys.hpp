// SPDX-License-Identifier: MIT
// Two hand-constructed Gaussian processes on [0,1] built from disjoint or
// nested sine bumps with known maxima, plus the sign-reading reference
// strategy for the nested one and an information-gain report for the first.
#pragma once

#include "gpband/env.hpp"

namespace gpband {

struct Toy1Params {
  double delta = 0.05;
  std::optional<double> sigma;  // default 1/(2 sqrt(2 log(2/delta)))
  int i_max = 20;
};

/// f(x) = sum_i a_i X_i (phi(x/b_i - 1) - phi(x/b_i - 2)) with phi a sine
/// bump and b_i = 3^{-i}: scale-i bumps tile (b_i, 3 b_i], so exactly one
/// series index is active at any x and the maximum is max_i a_i |X_i|.
class ToyEnv1 : public Environment {
 public:
  explicit ToyEnv1(std::uint64_t seed, Toy1Params params = {});

  const Box& domain() const override { return domain_; }
  double query(const Point& x) override;
  double true_value(const Point& x) override;
  double best_value() override { return best_; }
  bool best_is_exact() const override { return true; }
  double noise_sigma() const override { return sigma_; }

  const std::vector<double>& coefficients() const { return a_; }
  const std::vector<double>& weights() const { return x_; }
  double delta() const { return delta_; }
  Point argmax_point() const;

  static double bump(double z);
  static std::vector<double> make_coefficients(double delta, int i_max);
  static double default_sigma(double delta);
  static double value(const std::vector<double>& a, const std::vector<double>& weights,
                      double x);
  /// Series covariance Cov(f(x), f(y)) truncated at the same i_max.
  static double covariance(const std::vector<double>& a, double x, double y);

 private:
  Box domain_;
  double delta_;
  double sigma_;
  std::vector<double> a_;
  std::vector<double> x_;
  double best_;
  Rng noise_rng_;
};

/// One-shot protocol: observe y at 1/2, move to 5/6 iff y < 0, succeed when
/// the chosen point attains the global maximum.
struct Toy1OneShot {
  bool events_held = false;  // |a1 X1| >= 1, all deeper a_i|X_i| <= 1/2, |noise| <= 1/2
  bool success = false;
};
Toy1OneShot toy1_one_shot(ToyEnv1& env);

struct GammaRow {
  std::size_t n;
  double closed_form;  // n * min(1/2, 1/(16 sigma^2 log(pi^2 n^2 / (3 delta))))
  double series;       // sum_{i<=n} log(1 + a_i^2 / sigma^2)
  double computed;     // logdet(I + sigma^{-2} Gram) at the bump peaks
};
std::vector<GammaRow> toy1_gamma_report(double delta, double sigma,
                                        const std::vector<std::size_t>& ns);

struct Toy2Params {
  double delta = 0.05;
  std::size_t budget = 10;  // sets sigma = a_budget / sqrt(2)
  int depth_max = 12;
};

/// Self-similar process: f_i(x) = a_i X_i phi1(x) + f_{i+1}(3x)
/// + f_{i+1}(3(x - 2/3)) where phi1 is a three-piece sine bump (+,+,-);
/// at most one recursive branch is active at any x, so evaluation walks a
/// single root-to-leaf chain of the implicit ternary tree.
class ToyEnv2 : public Environment {
 public:
  explicit ToyEnv2(std::uint64_t seed, Toy2Params params = {});

  const Box& domain() const override { return domain_; }
  double query(const Point& x) override;
  double true_value(const Point& x) override;
  double best_value() override { return best_; }
  bool best_is_exact() const override { return false; }
  double noise_sigma() const override { return sigma_; }

  const std::vector<double>& coefficients() const { return a_; }
  const std::vector<double>& weights() const { return x_; }
  double delta() const { return delta_; }
  int depth_max() const { return depth_max_; }
  /// Bound on the ignored tail sum_{i > depth_max} a_i |X_i| when every
  /// |X_i| sits under its standard threshold: sum_{i > depth_max} 1/i^2.
  double truncation_bound() const;

  static double bump1(double x);
  static std::vector<double> make_coefficients(double delta, int count);
  static double value(const std::vector<double>& a, const std::vector<double>& weights,
                      double x);

 private:
  Box domain_;
  double delta_;
  double sigma_;
  int depth_max_;
  std::vector<double> a_;
  std::vector<double> x_;
  double best_;
  Rng noise_rng_;
};

/// Trace of the ternary descent strategy: evaluate the center of the current
/// interval, infer the sign of the current level's weight from the observed
/// value minus the ancestor baseline, and descend to the matching side.
struct Toy2StrategyResult {
  std::vector<double> xs;
  std::vector<double> ys;
  std::vector<double> regret_curve;  // prefix sums of per-step gaps
  double cum_regret = 0.0;
  bool e4_held = false;  // all |X_i| under their thresholds
  bool e5_held = false;  // all |noise_t| <= 1/(sqrt(2) t^2)
  int sign_errors = 0;   // inferred sign vs the true weight sign
};
Toy2StrategyResult toy2_oracle_strategy(ToyEnv2& env, std::size_t n);

}  // namespace gpband
