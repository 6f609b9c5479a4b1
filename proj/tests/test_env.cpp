// SPDX-License-Identifier: MIT
#include <cmath>
#include <set>
#include <vector>

#include "doctest.h"
#include "gpband/env.hpp"
#include "gpband/sampler.hpp"

using namespace gpband;

TEST_CASE("make_grid uses endpoints and varies axis 0 slowest") {
  const auto g1 = make_grid(unit_box(1), 3);
  REQUIRE(g1.size() == 3);
  CHECK(g1[0] == Point{0.0});
  CHECK(g1[1] == Point{0.5});
  CHECK(g1[2] == Point{1.0});

  const auto g0 = make_grid(unit_box(1), 1);
  REQUIRE(g0.size() == 1);
  CHECK(g0[0] == Point{0.5});

  const auto g2 = make_grid(unit_box(2), 2);
  REQUIRE(g2.size() == 4);
  CHECK(g2[0] == Point{0.0, 0.0});
  CHECK(g2[1] == Point{0.0, 1.0});
  CHECK(g2[2] == Point{1.0, 0.0});
  CHECK(g2[3] == Point{1.0, 1.0});

  const auto gb = make_grid(Box({-1.0}, {3.0}), 3);
  CHECK(gb[1] == Point{1.0});
}

TEST_CASE("lazy sampler caches repeats and reveal_many matches single reveals") {
  const Kernel k = Kernel::matern32(1, 0.5, 1.0);
  LazySampler a(k, 42);
  const double v1 = a.reveal({0.3});
  const double v2 = a.reveal({0.7});
  CHECK(a.reveal({0.3}) == v1);
  CHECK(a.revealed_count() == 2);

  LazySampler b(k, 42);
  const auto both = b.reveal_many({{0.3}, {0.7}});
  CHECK(both[0] == v1);
  CHECK(both[1] == v2);
}

TEST_CASE("grid sampler draws have the prior first and second moments") {
  const Kernel k = Kernel::matern32(1, 0.5, 1.0);
  const std::vector<Point> pts{{0.1}, {0.5}, {0.9}};
  const GridSampler sampler(k, pts);
  Rng rng = make_rng(2024);
  const int draws = 3000;
  double mean[3] = {0, 0, 0};
  double cov[3][3] = {};
  for (int d = 0; d < draws; ++d) {
    const auto f = sampler.draw(rng);
    for (int i = 0; i < 3; ++i) {
      mean[i] += f[i];
      for (int j = 0; j < 3; ++j) cov[i][j] += f[i] * f[j];
    }
  }
  for (int i = 0; i < 3; ++i) {
    CHECK(std::abs(mean[i] / draws) < 0.08);
    for (int j = 0; j < 3; ++j)
      CHECK(std::abs(cov[i][j] / draws - k(pts[i], pts[j])) < 0.12);
  }
  CHECK(sample_grid(k, pts, 7) == sample_grid(k, pts, 7));
}

TEST_CASE("grid GP env is deterministic and separates its random streams") {
  const Kernel k = Kernel::matern32(1, 0.4, 1.0);
  GridGPEnv a(k, unit_box(1), 64, 0.1, 9);
  GridGPEnv b(k, unit_box(1), 64, 0.1, 9);
  // Revealing extra latent values must not advance the noise stream; the
  // off-grid latents themselves may shift, since reveals join the
  // conditioning set for later samples.
  b.true_value({0.111});
  b.true_value({0.222});
  for (const double x : {0.3, 0.55, 0.3}) {
    CHECK(a.query({x}) - a.true_value({x}) == b.query({x}) - b.true_value({x}));
  }
  // Grid samples are preconditioned at construction, so they never depend on
  // what was revealed afterwards.
  CHECK(a.true_value({21.0 / 63.0}) == b.true_value({21.0 / 63.0}));
  GridGPEnv c(k, unit_box(1), 64, 0.1, 10);
  CHECK(a.true_value({0.3}) != c.true_value({0.3}));
}

TEST_CASE("noiseless queries equal the latent values; noisy ones differ") {
  const Kernel k = Kernel::matern32(1, 0.4, 1.0);
  GridGPEnv quiet(k, unit_box(1), 64, 0.0, 5);
  const double f = quiet.true_value({0.37});
  CHECK(quiet.query({0.37}) == f);
  CHECK(quiet.noise_sigma() == 0.0);

  GridGPEnv noisy(k, unit_box(1), 64, 0.5, 5);
  const double g = noisy.true_value({0.37});
  bool any_diff = false;
  for (int i = 0; i < 4; ++i) any_diff = any_diff || noisy.query({0.37}) != g;
  CHECK(any_diff);
}

TEST_CASE("best value dominates the grid and never decreases under reveals") {
  const Kernel k = Kernel::matern32(1, 0.4, 1.0);
  GridGPEnv env(k, unit_box(1), 64, 0.1, 11);
  CHECK_FALSE(env.best_is_exact());
  const double b0 = env.best_value();
  for (const auto& p : env.grid()) CHECK(env.true_value(p) <= b0);
  Rng rng = make_rng(3);
  double prev = b0;
  for (int i = 0; i < 50; ++i) {
    const double x = draw_uniform(rng, 0.0, 1.0);
    const double v = env.true_value({x});
    CHECK(env.best_value() >= prev);
    CHECK(env.best_value() >= v);
    prev = env.best_value();
  }
  CHECK(env.revealed_count() >= 64);
}

TEST_CASE("contextual env serves grid contexts and tracks per-column bests") {
  const Kernel joint =
      Kernel::product(Kernel::squared_exp(1, 0.5, 1.0), Kernel::matern32(1, 0.5, 1.0, 1));
  ContextualGPEnv env(joint, unit_box(1), unit_box(1), 8, 0.1, 13);
  CHECK(env.context_grid().size() == 8);
  CHECK(env.joint_box().dims() == 2);

  std::set<double> grid_coords;
  for (const auto& c : env.context_grid()) grid_coords.insert(c[0]);
  ContextualGPEnv env2(joint, unit_box(1), unit_box(1), 8, 0.1, 13);
  for (int i = 0; i < 20; ++i) {
    const Point c = env.next_context();
    REQUIRE(c.size() == 1);
    CHECK(grid_coords.count(c[0]) == 1);
    CHECK(env2.next_context() == c);
  }

  const Point ctx = env.context_grid()[3];
  const double best = env.best_value_for(ctx);
  for (const double a : {0.0, 0.25, 0.5, 0.75, 1.0})
    CHECK(env.true_value(ctx, {a}) <= best + 1e-12);
  // Revealing a better off-grid action lifts the column best with it.
  const double probe = env.true_value(ctx, {0.123456});
  CHECK(env.best_value_for(ctx) >= probe);
  CHECK(env.best_value_for(ctx) >= best);
}
