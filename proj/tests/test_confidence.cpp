// SPDX-License-Identifier: MIT
#include <cmath>

#include "doctest.h"
#include "gpband/confidence.hpp"

using namespace gpband;

namespace {

const Envelope kLip{1.0, 1.0, std::numeric_limits<double>::infinity()};

ConfidenceConfig lip_config(std::size_t d, unsigned n_split, std::size_t n, double u,
                            double sigma, double ts = 1.0) {
  return make_confidence_config(kLip, d, n_split, n, u, sigma, ts);
}

}  // namespace

TEST_CASE("series constants match their frozen values") {
  const auto cc = make_chaining_constants(kLip, 1);
  CHECK(cc.alpha1 == doctest::Approx(0.99150067075675427).epsilon(1e-14));
  CHECK(cc.alpha2 == doctest::Approx(2.6945075054715014).epsilon(1e-14));
  CHECK(cc.c1_cov == doctest::Approx(1.0));
  CHECK(cc.d1 == doctest::Approx(1.0));
  CHECK(cc.d1_prime == doctest::Approx(1.0));
  CHECK(cc.c2 == doctest::Approx(2.0 * std::log(2.0 * M_PI * M_PI / 6.0)).epsilon(1e-14));
  CHECK(cc.c3 ==
        doctest::Approx(cc.alpha1 + cc.alpha2 * std::sqrt(cc.d1_prime * std::log(2.0)))
            .epsilon(1e-14));
  // Per-level constant is clamped at level 1 below.
  CHECK(cc.c4_of(0.0) == cc.c4_of(1.0));
  CHECK(cc.c4_of(3.0) > cc.c4_of(1.0));

  // A coefficient above 1 enters the covering constant as coef^(D1/alpha).
  const auto cc3 = make_chaining_constants(Envelope{2.0, 1.0, 1.0}, 3);
  CHECK(cc3.c1_cov == doctest::Approx(8.0));
  CHECK(cc3.d1 == doctest::Approx(3.0));

  const auto half = make_chaining_constants(Envelope{1.0, 0.5, 1.0}, 2);
  CHECK(half.d1_prime == doctest::Approx(4.0));
}

TEST_CASE("beta matches the odd-split union bound, frozen at u=2, n=100") {
  const auto cfg = lip_config(1, 3, 100, 2.0, 0.1);
  const double beta = beta_n(cfg, BetaMode::TightOddN, 10);
  CHECK(beta == doctest::Approx(5.9341840259958789).epsilon(1e-14));
  CHECK(beta == doctest::Approx(std::sqrt(
                    2.0 * (2.0 + std::log(2.0 * 3.0 * 100.0 * 100.0 * 100.0))))
                    .epsilon(1e-14));
}

TEST_CASE("beta grows with budget, exponent, and the Worst mode dominates") {
  const auto cfg_a = lip_config(1, 3, 50, 2.0, 0.1);
  const auto cfg_b = lip_config(1, 3, 500, 2.0, 0.1);
  CHECK(beta_n(cfg_a, BetaMode::TightOddN, 8) < beta_n(cfg_b, BetaMode::TightOddN, 8));
  const auto cfg_u = lip_config(1, 3, 50, 4.0, 0.1);
  CHECK(beta_n(cfg_a, BetaMode::TightOddN, 8) < beta_n(cfg_u, BetaMode::TightOddN, 8));
  // The Worst mode pays for every leaf of the deepest tree, so it is larger.
  CHECK(beta_n(cfg_a, BetaMode::Worst, 8) > beta_n(cfg_a, BetaMode::TightOddN, 8));
}

TEST_CASE("zoom beta writes the packing constant into the union bound") {
  const auto cfg = lip_config(2, 2, 100, 2.0, 0.1);
  const double expect =
      std::sqrt(2.0 * (2.0 + 2.0 * std::log(4.0) + (2.0 + 1.0) * std::log(100.0)));
  CHECK(beta_zoom(cfg) == doctest::Approx(expect).epsilon(1e-14));
}

TEST_CASE("max depth matches the ceiling formula at alpha = 1 and 1/2") {
  CHECK(max_depth(lip_config(1, 2, 1000, 2.0, 0.1)) == 10);
  const auto cfg_half =
      make_confidence_config(Envelope{1.0, 0.5, 1.0}, 1, 2, 1000, 2.0, 0.1);
  CHECK(max_depth(cfg_half) == 30);
}

TEST_CASE("V_h depends on neither the budget nor the noise level") {
  const auto a = lip_config(1, 3, 50, 2.0, 0.1);
  const auto b = lip_config(1, 3, 5000, 2.0, 1.0);
  for (unsigned h = 0; h <= 8; ++h) CHECK(v_h(a, h) == v_h(b, h));
}

TEST_CASE("V_h decays to zero and scales linearly with theory_scale") {
  const auto cfg = lip_config(1, 3, 100, 2.0, 0.1);
  CHECK(v_h(cfg, 20) < v_h(cfg, 5));
  CHECK(v_h(cfg, 30) < 1e-6);
  const auto scaled = lip_config(1, 3, 100, 2.0, 0.1, 0.2);
  for (unsigned h = 0; h <= 6; ++h)
    CHECK(v_h(scaled, h) == doctest::Approx(0.2 * v_h(cfg, h)).epsilon(1e-14));
}

TEST_CASE("ball width halves with the radius up to the log correction") {
  // w(b)/w(b/2) = 2 * (sqrt(A + 2 log(1/b)) + c3) / (sqrt(A + 2 log(2/b)) + c3)
  // for a Lipschitz envelope, which sits just under 2 and tends to 2 as b -> 0.
  const auto cfg = lip_config(1, 2, 100, 2.0, 0.1);
  double prev_ratio = 0.0;
  for (const double b : {0.25, 1.0 / 16.0, 1.0 / 64.0, 1.0 / 256.0}) {
    const double ratio = w_ball(cfg, b, 2.0) / w_ball(cfg, b / 2.0, 2.0);
    CHECK(ratio > 1.5);
    CHECK(ratio <= 2.0);
    CHECK(ratio > prev_ratio);
    prev_ratio = ratio;
  }
}

TEST_CASE("level width is positive, eventually decreasing, and theory-scaled") {
  const auto cfg = lip_config(1, 2, 100, 2.0, 0.1);
  const auto scaled = lip_config(1, 2, 100, 2.0, 0.1, 0.2);
  for (unsigned k = 0; k <= 10; ++k) {
    CHECK(w_cap(cfg, k) > 0.0);
    CHECK(w_cap(scaled, k) == doctest::Approx(0.2 * w_cap(cfg, k)).epsilon(1e-14));
  }
  CHECK(w_cap(cfg, 12) < w_cap(cfg, 4));
}

TEST_CASE("repeat budget is the ceiling of (sigma beta / V_h)^2, and 1 when noiseless") {
  const auto cfg = lip_config(1, 3, 100, 2.0, 0.4);
  const double beta = beta_n(cfg, BetaMode::TightOddN, max_depth(cfg));
  for (unsigned h = 0; h <= 6; ++h) {
    const double v = v_h(cfg, h);
    const auto expect = std::uint64_t(std::ceil(cfg.sigma * cfg.sigma * beta * beta / (v * v)));
    CHECK(q_h(cfg, beta, h) == expect);
  }
  CHECK(q_h(cfg, beta, 6) >= q_h(cfg, beta, 0));
  const auto noiseless = lip_config(1, 3, 100, 2.0, 0.0);
  CHECK(q_h(noiseless, beta, 3) == 1);
}

TEST_CASE("terminal radius is n^(-1/(2 alpha))") {
  CHECK(r_min(lip_config(1, 2, 100, 2.0, 0.1)) == doctest::Approx(0.1).epsilon(1e-14));
  const auto cfg_half =
      make_confidence_config(Envelope{1.0, 0.5, 1.0}, 1, 2, 16, 2.0, 0.1);
  CHECK(r_min(cfg_half) == doctest::Approx(1.0 / 16.0).epsilon(1e-14));
}

TEST_CASE("lattice sizes and sup-metric covering/packing numbers are exact") {
  const auto cfg1 = lip_config(1, 2, 100, 2.0, 0.1);
  const auto cfg2 = lip_config(2, 2, 100, 2.0, 0.1);
  CHECK(level_cover_size(cfg1, 0) == 1);
  CHECK(level_cover_size(cfg1, 1) == 1);
  CHECK(level_cover_size(cfg1, 3) == 4);
  CHECK(level_cover_size(cfg2, 3) == 16);

  CHECK(covering_number_unit(0.1, 2) == 25);
  CHECK(covering_number_unit(0.3, 1) == 2);
  CHECK(packing_number_unit(0.3, 1) == 4);
  CHECK(packing_number_unit(0.3, 2) == 16);
  CHECK(packing_number_unit(0.49, 1) == 3);
}
