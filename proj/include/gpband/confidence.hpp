// SPDX-License-Identifier: MIT
// Chaining-derived confidence quantities: the series constants, per-depth
// cell-variation bounds V_h, ball/level width bounds, the posterior
// multiplier beta, maximum depth, and repeat budgets.
#pragma once

#include "gpband/kernel.hpp"
#include "gpband/partition.hpp"

namespace gpband {

/// Constants shared by every chaining bound. d1 is the box dimension D1 and
/// d1_prime = D1 / alpha its image under the envelope exponent.
struct ChainingConstants {
  double alpha1 = 0.0;  // sum 2^{-(n-1)} sqrt(log n)
  double alpha2 = 0.0;  // sum 2^{-(n-1)} sqrt(n)
  double c1_cov = 1.0;  // covering constant: N(X, r, d) <= c1_cov r^{-d1'}
  double c2 = 0.0;      // 2 log(2 c1_cov^2 pi^2 / 6)
  double c3 = 0.0;      // alpha1 + alpha2 sqrt(d1' log 2)
  double d1 = 1.0;
  double d1_prime = 1.0;

  /// Per-level union-bound constant; level index clamped at 1.
  double c4_of(double k) const;
};

ChainingConstants make_chaining_constants(const Envelope& env, std::size_t dims);

/// Everything the bound formulas need. The envelope must already be expressed
/// in normalized coordinates (see Envelope::rescaled).
struct ConfidenceConfig {
  Envelope env;
  std::size_t d1 = 1;
  unsigned n_split = 3;
  double rho = 1.0 / 3.0;
  double v1 = 0.5;
  double v2 = 1.0 / 6.0;
  std::size_t n = 2;      // evaluation budget
  double u = 2.0;         // per-event failure exponent
  double sigma = 0.0;     // observation noise std
  double theory_scale = 1.0;
  ChainingConstants cc;
};

ConfidenceConfig make_confidence_config(const Envelope& env_normalized, std::size_t dims,
                                        unsigned n_split, std::size_t n, double u,
                                        double sigma, double theory_scale = 1.0);

/// ceil(log n / (2 alpha log(1/rho)) * (1 + 1/alpha)).
unsigned max_depth(const ConfidenceConfig& cfg);

enum class BetaMode { Worst, TightOddN };

/// Posterior confidence multiplier from the union bound over rounds and
/// leaves.
double beta_n(const ConfidenceConfig& cfg, BetaMode mode, unsigned h_max);

/// Zooming-variant multiplier with the packing constant written out.
double beta_zoom(const ConfidenceConfig& cfg);

/// Cell-variation bound at depth h (theory_scale applied).
double v_h(const ConfidenceConfig& cfg, unsigned h);

/// Chaining width of one induced-metric ball of radius b.
double w_ball(const ConfidenceConfig& cfg, double b, double u);

/// Level width W(r_k) for radius r_k = 2^{-k} in normalized units
/// (theory_scale applied).
double w_cap(const ConfidenceConfig& cfg, unsigned k);

/// Repeat budget before a depth-h cell must be split; 1 when sigma = 0.
std::uint64_t q_h(const ConfidenceConfig& cfg, double beta, unsigned h);

/// Smallest radius the zooming algorithm may reach: n^{-1/(2 alpha)}.
double r_min(const ConfidenceConfig& cfg);

/// Points per axis of the level-k cover of the unit box: ceil(2^{k-1})^d1.
std::uint64_t level_cover_size(const ConfidenceConfig& cfg, unsigned k);

/// Sup-metric covering number of the unit box by radius-r balls.
std::uint64_t covering_number_unit(double r, std::size_t dims);

/// Exact sup-metric packing number of the unit box (pairwise distance > r),
/// available for small dimensions.
std::uint64_t packing_number_unit(double r, std::size_t dims);

}  // namespace gpband
