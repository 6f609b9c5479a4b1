// SPDX-License-Identifier: MIT
#include <cmath>
#include <vector>

#include "doctest.h"
#include "gpband/toys.hpp"

using namespace gpband;

TEST_CASE("series-process coefficients match their frozen values at delta = 0.05") {
  const auto a = ToyEnv1::make_coefficients(0.05, 3);
  CHECK(a[0] == doctest::Approx(15.947239402183658).epsilon(1e-13));
  CHECK(a[1] == doctest::Approx(0.16005057783406798).epsilon(1e-13));
  CHECK(a[2] == doctest::Approx(0.14820873341722118).epsilon(1e-13));
  CHECK(ToyEnv1::default_sigma(0.05) == doctest::Approx(0.18408049553178386).epsilon(1e-13));
  CHECK_THROWS_AS(ToyEnv1::make_coefficients(0.0, 3), std::invalid_argument);
  CHECK_THROWS_AS(ToyEnv1::make_coefficients(0.05, 0), std::invalid_argument);
}

TEST_CASE("exactly one series scale is active at any input") {
  ToyEnv1 env(4);
  const auto& a = env.coefficients();
  const auto& w = env.weights();
  // x = 1/2 sits on the positive lobe peak of scale 1 and outside every other.
  CHECK(env.true_value({0.5}) == doctest::Approx(a[0] * w[0]).epsilon(1e-14));
  // x = 1/6 is the positive peak of the next scale down.
  CHECK(env.true_value({1.0 / 6.0}) == doctest::Approx(a[1] * w[1]).epsilon(1e-12));
  // Covariance vanishes across scales and equals a_i^2 at a peak.
  CHECK(ToyEnv1::covariance(a, 0.5, 1.0 / 6.0) == 0.0);
  CHECK(ToyEnv1::covariance(a, 0.5, 0.5) == doctest::Approx(a[0] * a[0]).epsilon(1e-14));
  CHECK_THROWS_AS(env.true_value({1.5}), std::invalid_argument);
}

TEST_CASE("series-process maximum is max_i a_i |X_i| and is attained") {
  for (std::uint64_t seed : {1ull, 2ull, 3ull, 17ull}) {
    ToyEnv1 env(seed);
    CHECK(env.best_is_exact());
    double expect = 0.0;
    for (std::size_t i = 0; i < env.coefficients().size(); ++i)
      expect = std::max(expect, env.coefficients()[i] * std::abs(env.weights()[i]));
    CHECK(env.best_value() == doctest::Approx(expect).epsilon(1e-14));
    CHECK(env.true_value(env.argmax_point()) == doctest::Approx(expect).epsilon(1e-12));
  }
}

TEST_CASE("one-shot identification succeeds whenever its good events hold") {
  int successes = 0;
  for (std::uint64_t seed = 1; seed <= 200; ++seed) {
    ToyEnv1 env(seed);
    const Toy1OneShot r = toy1_one_shot(env);
    if (r.events_held) CHECK(r.success);
    successes += r.success ? 1 : 0;
  }
  CHECK(successes >= 160);  // well above the 1 - 3 delta level
}

TEST_CASE("information-gain report is ordered and exact for the diagonal design") {
  const auto rows = toy1_gamma_report(0.05, 1.0, {5, 20, 100});
  REQUIRE(rows.size() == 3);
  for (const auto& r : rows) {
    CHECK(r.closed_form <= r.series + 1e-9);
    // The bump peaks are mutually uncorrelated, so the Gram matrix is
    // diagonal and the log-determinant collapses to the series.
    CHECK(r.series == doctest::Approx(r.computed).epsilon(1e-10));
  }
  CHECK(rows[0].n == 5);
  CHECK_THROWS_AS(toy1_gamma_report(0.05, 0.0, {5}), std::invalid_argument);
  CHECK_THROWS_AS(toy1_gamma_report(0.05, 1.0, {301}), std::invalid_argument);
}

TEST_CASE("nested-process coefficients and noise level match their frozen values") {
  const auto a = ToyEnv2::make_coefficients(0.05, 10);
  CHECK(a[0] == doctest::Approx(0.34558534517133547).epsilon(1e-13));
  CHECK(a[1] == doctest::Approx(0.074883372310992779).epsilon(1e-13));
  CHECK(a[9] == doctest::Approx(0.0023847746061176023).epsilon(1e-13));
  ToyEnv2 env(1);
  CHECK(env.noise_sigma() == doctest::Approx(0.0016862902955872344).epsilon(1e-13));
  CHECK(env.truncation_bound() == doctest::Approx(0.079708207244813275).epsilon(1e-6));
  CHECK_THROWS_AS(ToyEnv2(1, Toy2Params{0.05, 20, 12}), std::invalid_argument);
}

TEST_CASE("nested process evaluates a single root-to-leaf chain") {
  ToyEnv2 env(6);
  const auto& a = env.coefficients();
  const auto& w = env.weights();
  // The interval center only sees the root bump.
  CHECK(env.true_value({0.5}) == doctest::Approx(a[0] * w[0]).epsilon(1e-14));
  // x = 1/6: root bump at its left-lobe peak, then the child's center.
  CHECK(env.true_value({1.0 / 6.0}) ==
        doctest::Approx(a[0] * w[0] + a[1] * w[1]).epsilon(1e-12));
  // The right branch recurses into the rescaled copy at 3(x - 2/3).
  CHECK(env.true_value({2.0 / 3.0 + 1.0 / 6.0}) ==
        doctest::Approx(-a[0] * w[0] + a[1] * w[1]).epsilon(1e-12));
  CHECK(env.best_value() >= env.true_value({0.5}));
}

TEST_CASE("descent strategy halves into thirds deterministically") {
  ToyEnv2 env_a(3);
  const Toy2StrategyResult a = toy2_oracle_strategy(env_a, 7);
  ToyEnv2 env_b(3);
  const Toy2StrategyResult b = toy2_oracle_strategy(env_b, 7);
  CHECK(a.xs == b.xs);
  CHECK(a.ys == b.ys);
  REQUIRE(a.xs.size() == 7);
  CHECK(a.xs[0] == 0.5);
  for (std::size_t t = 1; t < a.xs.size(); ++t)
    CHECK(std::abs(a.xs[t] - a.xs[t - 1]) ==
          doctest::Approx(std::pow(3.0, -double(t))).epsilon(1e-12));
  for (std::size_t t = 1; t < a.regret_curve.size(); ++t)
    CHECK(a.regret_curve[t] >= a.regret_curve[t - 1] - 1e-12);
  CHECK(a.cum_regret == doctest::Approx(a.regret_curve.back()).epsilon(1e-14));
}

TEST_CASE("descent strategy event flags match their definitions") {
  ToyEnv2 env(11);
  const Toy2StrategyResult r = toy2_oracle_strategy(env, 9);
  bool e4 = true;
  for (int i = 1; i <= env.depth_max(); ++i) {
    const double thresh =
        std::sqrt(2.0 * std::log(M_PI * M_PI * i * i / (3.0 * env.delta())));
    e4 = e4 && std::abs(env.weights()[i - 1]) <= thresh;
  }
  CHECK(r.e4_held == e4);
  bool e5 = true;
  for (std::size_t t = 1; t <= r.xs.size(); ++t) {
    const double noise = r.ys[t - 1] - env.true_value({r.xs[t - 1]});
    e5 = e5 && std::abs(noise) <= 1.0 / (std::sqrt(2.0) * double(t) * double(t));
  }
  CHECK(r.e5_held == e5);
}

TEST_CASE("nested-process events hold on most seeds at a small budget") {
  int held = 0;
  for (std::uint64_t seed = 1; seed <= 200; ++seed) {
    ToyEnv2 env(seed);
    const Toy2StrategyResult r = toy2_oracle_strategy(env, 8);
    held += (r.e4_held && r.e5_held) ? 1 : 0;
  }
  CHECK(held >= 170);  // 1 - 2 delta - margin at delta = 0.05
}
