// SPDX-License-Identifier: MIT
#include "gpband/confidence.hpp"

#include <cmath>

namespace gpband {

namespace {

constexpr double kPi = 3.14159265358979323846;

/// Partial sum of 2^{-(n-1)} phi(n); terms beyond n=200 are below 2^{-199}
/// and cannot move a double, so the truncation error is far under 1e-12.
template <typename F>
double series_sum(F phi) {
  double s = 0.0;
  double w = 1.0;
  for (int n = 1; n <= 200; ++n, w *= 0.5) s += w * phi(n);
  return s;
}

}  // namespace

double ChainingConstants::c4_of(double k) const {
  const double kk = std::max(k, 1.0);
  return c2 + 2.0 * std::log(kk * kk * kPi * kPi / 6.0);
}

ChainingConstants make_chaining_constants(const Envelope& env, std::size_t dims) {
  ChainingConstants cc;
  cc.alpha1 = series_sum([](int n) { return std::sqrt(std::log(double(n))); });
  cc.alpha2 = series_sum([](int n) { return std::sqrt(double(n)); });
  cc.d1 = double(dims);
  cc.d1_prime = cc.d1 / env.alpha;
  cc.c1_cov = std::max(1.0, std::pow(env.coef, cc.d1_prime));
  cc.c2 = 2.0 * std::log(2.0 * cc.c1_cov * cc.c1_cov * kPi * kPi / 6.0);
  cc.c3 = cc.alpha1 + cc.alpha2 * std::sqrt(cc.d1_prime * std::log(2.0));
  return cc;
}

ConfidenceConfig make_confidence_config(const Envelope& env, std::size_t dims,
                                        unsigned n_split, std::size_t n, double u,
                                        double sigma, double theory_scale) {
  if (n < 2) throw std::invalid_argument("make_confidence_config: n must be >= 2");
  if (!(u > 0.0)) throw std::invalid_argument("make_confidence_config: u must be > 0");
  if (sigma < 0.0) throw std::invalid_argument("make_confidence_config: sigma must be >= 0");
  if (!(theory_scale > 0.0))
    throw std::invalid_argument("make_confidence_config: theory_scale must be > 0");
  ConfidenceConfig cfg;
  cfg.env = env;
  cfg.d1 = dims;
  cfg.n_split = n_split;
  cfg.rho = std::pow(double(n_split), -1.0 / double(dims));
  cfg.v1 = 0.5 * std::pow(double(n_split), double(dims - 1) / double(dims));
  cfg.v2 = 0.5 / double(n_split);
  cfg.n = n;
  cfg.u = u;
  cfg.sigma = sigma;
  cfg.theory_scale = theory_scale;
  cfg.cc = make_chaining_constants(env, dims);
  return cfg;
}

unsigned max_depth(const ConfidenceConfig& cfg) {
  const double a = cfg.env.alpha;
  const double raw =
      std::log(double(cfg.n)) / (2.0 * a * std::log(1.0 / cfg.rho)) * (1.0 + 1.0 / a);
  const double h = std::ceil(raw);
  if (h > 40.0)
    throw std::invalid_argument("max_depth: budget/kernel combination needs depth > 40");
  return unsigned(std::max(1.0, h));
}

double beta_n(const ConfidenceConfig& cfg, BetaMode mode, unsigned h_max) {
  const double n = double(cfg.n);
  const double hm = double(h_max);
  if (mode == BetaMode::TightOddN) {
    return std::sqrt(2.0 * (cfg.u + std::log(2.0 * cfg.n_split * hm * hm * n * n)));
  }
  const double pack = std::pow(2.0, cfg.cc.d1);
  return std::sqrt(2.0 * (cfg.u + std::log(2.0 * hm * n * pack) +
                          cfg.cc.d1 * hm * std::log(1.0 / cfg.rho)));
}

double beta_zoom(const ConfidenceConfig& cfg) {
  const double pack = std::pow(2.0, cfg.cc.d1);
  return std::sqrt(2.0 * (cfg.u + 2.0 * std::log(pack) +
                          (cfg.cc.d1_prime + 1.0) * std::log(double(cfg.n))));
}

double v_h(const ConfidenceConfig& cfg, unsigned h) {
  const double g = cfg.env.g(cfg.v1 * std::pow(cfg.rho, double(h)));
  const double inner = 2.0 * cfg.u + cfg.cc.c4_of(double(h)) +
                       double(h) * std::log(double(cfg.n_split)) +
                       2.0 * cfg.cc.d1 * std::log(1.0 / g);
  return cfg.theory_scale * 4.0 * g * (std::sqrt(std::max(0.0, inner)) + cfg.cc.c3);
}

double w_ball(const ConfidenceConfig& cfg, double b, double u) {
  if (!(b > 0.0)) throw std::invalid_argument("w_ball: b must be > 0");
  const double inner = cfg.cc.c2 + 2.0 * u + 2.0 * cfg.cc.d1_prime * std::log(1.0 / b);
  return 4.0 * b * (std::sqrt(std::max(0.0, inner)) + cfg.cc.c3);
}

std::uint64_t level_cover_size(const ConfidenceConfig& cfg, unsigned k) {
  const double per_axis = std::ceil(std::pow(2.0, double(k) - 1.0));
  const double total = std::pow(std::max(1.0, per_axis), cfg.cc.d1);
  return std::uint64_t(total);
}

double w_cap(const ConfidenceConfig& cfg, unsigned k) {
  const double r_k = std::pow(2.0, -double(k));
  const double g = cfg.env.g(r_k);
  const double inner = cfg.cc.c4_of(double(k)) + 2.0 * cfg.u +
                       2.0 * std::log(double(level_cover_size(cfg, k))) +
                       2.0 * cfg.cc.d1 * double(k) * std::log(2.0);
  return cfg.theory_scale * 8.0 * g * (std::sqrt(std::max(0.0, inner)) + cfg.cc.c3);
}

std::uint64_t q_h(const ConfidenceConfig& cfg, double beta, unsigned h) {
  if (cfg.sigma == 0.0) return 1;
  const double v = v_h(cfg, h);
  const double q = std::ceil(cfg.sigma * cfg.sigma * beta * beta / (v * v));
  return std::max<std::uint64_t>(1, std::uint64_t(q));
}

double r_min(const ConfidenceConfig& cfg) {
  return std::pow(double(cfg.n), -1.0 / (2.0 * cfg.env.alpha));
}

std::uint64_t covering_number_unit(double r, std::size_t dims) {
  if (!(r > 0.0)) throw std::invalid_argument("covering_number_unit: r must be > 0");
  const double per_axis = std::max(1.0, std::ceil(1.0 / (2.0 * r)));
  double total = 1.0;
  for (std::size_t i = 0; i < dims; ++i) total *= per_axis;
  if (total > 9e18) throw std::invalid_argument("covering_number_unit: overflow");
  return std::uint64_t(total);
}

std::uint64_t packing_number_unit(double r, std::size_t dims) {
  if (!(r > 0.0)) throw std::invalid_argument("packing_number_unit: r must be > 0");
  // Largest m with (m-1) r < 1 (a strictly >r separated chain fits per axis);
  // the box's product structure makes the grid packing optimal under sup.
  std::uint64_t m = 1;
  while (double(m) * r < 1.0) ++m;
  double total = 1.0;
  for (std::size_t i = 0; i < dims; ++i) total *= double(m);
  if (total > 9e18) throw std::invalid_argument("packing_number_unit: overflow");
  return std::uint64_t(total);
}

}  // namespace gpband
