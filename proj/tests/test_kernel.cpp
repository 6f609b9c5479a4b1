// SPDX-License-Identifier: MIT
#include <Eigen/Dense>
#include <cmath>
#include <vector>

#include "doctest.h"
#include "gpband/kernel.hpp"

using namespace gpband;

namespace {

std::vector<Kernel> base_families(std::size_t d) {
  std::vector<Kernel> ks = {
      Kernel::squared_exp(d, 0.7, 1.3),
      Kernel::matern12(d, 0.9, 0.8),
      Kernel::matern32(d, 0.5, 1.0),
      Kernel::matern52(d, 0.6, 2.0),
      Kernel::rational_quadratic(d, 0.8, 1.1, 1.0, 1.5),
  };
  if (d == 1) ks.push_back(Kernel::triangle(1, 1.0, 1.0));
  return ks;
}

Point rand_point(Rng& rng, std::size_t d, double lo = 0.0, double hi = 1.0) {
  Point p(d);
  for (auto& v : p) v = draw_uniform(rng, lo, hi);
  return p;
}

}  // namespace

TEST_CASE("matern12 value and induced distance at unit separation") {
  auto k = Kernel::matern12(1, 1.0, 1.0);
  CHECK(k({0.0}, {1.0}) == doctest::Approx(0.36787944117144233).epsilon(1e-12));
  CHECK(k.induced_dist({0.0}, {1.0}) ==
        doctest::Approx(1.1243847729568003).epsilon(1e-12));
}

TEST_CASE("squared_exp induced distance saturates at sqrt(2 variance)") {
  auto k = Kernel::squared_exp(1, 1.0, 1.0);
  CHECK(std::abs(k.induced_dist({0.0}, {100.0}) - std::sqrt(2.0)) < 1e-9);
}

TEST_CASE("induced distance is zero at identical inputs and symmetric") {
  Rng rng = make_rng(11);
  for (auto d : {std::size_t(1), std::size_t(3)}) {
    for (const auto& k : base_families(d)) {
      for (int i = 0; i < 20; ++i) {
        Point x = rand_point(rng, d), y = rand_point(rng, d);
        CHECK(k.induced_dist(x, x) == doctest::Approx(0.0).epsilon(1e-12));
        CHECK(k.induced_dist(x, y) == doctest::Approx(k.induced_dist(y, x)).epsilon(1e-12));
      }
    }
  }
}

TEST_CASE("induced distance satisfies the triangle inequality") {
  Rng rng = make_rng(17);
  for (const auto& k : base_families(2)) {
    for (int i = 0; i < 200; ++i) {
      Point x = rand_point(rng, 2), y = rand_point(rng, 2), z = rand_point(rng, 2);
      CHECK(k.induced_dist(x, z) <= k.induced_dist(x, y) + k.induced_dist(y, z) + 1e-9);
    }
  }
}

TEST_CASE("envelope constants for reference parameterizations") {
  auto m12 = Kernel::matern12(1, 1.0, 1.0).envelope();
  CHECK(m12.coef == doctest::Approx(std::sqrt(2.0)).epsilon(1e-12));
  CHECK(m12.alpha == doctest::Approx(0.5));

  auto se = Kernel::squared_exp(1, 2.0, 4.0).envelope();
  CHECK(se.coef == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(se.alpha == doctest::Approx(1.0));
  CHECK(se.g(0.3) == doctest::Approx(0.3).epsilon(1e-12));

  auto m52 = Kernel::matern52(1, 1.0, 1.0).envelope();
  CHECK(m52.coef == doctest::Approx(std::sqrt(5.0 / 3.0)).epsilon(1e-12));
  CHECK(std::isinf(m52.delta));
}

TEST_CASE("triangle kernel support ends at the lengthscale") {
  auto k = Kernel::triangle(1, 1.0, 1.0);
  CHECK(k({0.0}, {2.0}) == doctest::Approx(0.0));
  CHECK(k({0.0}, {0.25}) == doctest::Approx(0.75).epsilon(1e-12));
}

TEST_CASE("sum and product compose envelopes with the smaller exponent") {
  auto se = Kernel::squared_exp(1, 1.0, 1.0);
  auto m12 = Kernel::matern12(1, 1.0, 1.0);
  auto s = Kernel::sum(se, m12);
  CHECK(s.envelope().alpha == doctest::Approx(0.5));
  CHECK(s.envelope().delta == doctest::Approx(1.0));
  CHECK(s({0.0}, {0.5}) ==
        doctest::Approx(se({0.0}, {0.5}) + m12({0.0}, {0.5})).epsilon(1e-12));
  CHECK(s.prior_variance() == doctest::Approx(2.0));

  auto p = Kernel::product(se, m12);
  CHECK(p.envelope().alpha == doctest::Approx(0.5));
  CHECK(p({0.1}, {0.7}) ==
        doctest::Approx(se({0.1}, {0.7}) * m12({0.1}, {0.7})).epsilon(1e-12));
  CHECK(p.prior_variance() == doctest::Approx(1.0));
}

TEST_CASE("coordinate blocks route sums and products over distinct axes") {
  auto kc = Kernel::squared_exp(1, 0.5, 1.0, 0);
  auto ka = Kernel::matern52(1, 0.4, 1.0, 1);
  auto prod = Kernel::product(kc, ka);
  CHECK(prod.input_dims() == 2);
  Point x = {0.2, 0.8}, y = {0.3, 0.1};
  CHECK(prod(x, y) == doctest::Approx(kc(x, y) * ka(x, y)).epsilon(1e-12));
  // Varying only the second axis leaves the first factor at its variance.
  Point y2 = {0.2, 0.1};
  CHECK(prod(x, y2) == doctest::Approx(1.0 * ka(x, y2)).epsilon(1e-12));
  CHECK_THROWS_AS(prod({0.5}, {0.5}), std::invalid_argument);
}

TEST_CASE("gram matrices are positive semidefinite up to round-off") {
  Rng rng = make_rng(23);
  for (auto d : {std::size_t(1), std::size_t(2)}) {
    auto ks = base_families(d);
    if (d == 2) ks.push_back(Kernel::product(Kernel::squared_exp(1, 0.5, 1.0, 0),
                                             Kernel::matern32(1, 0.5, 1.0, 1)));
    for (const auto& k : ks) {
      const int m = 40;
      std::vector<Point> pts;
      for (int i = 0; i < m; ++i) pts.push_back(rand_point(rng, d));
      Eigen::MatrixXd G(m, m);
      for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j) G(i, j) = k(pts[i], pts[j]);
      Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(G);
      CHECK(es.eigenvalues().minCoeff() >= -1e-8 * G.trace());
    }
  }
}

TEST_CASE("envelopes dominate the induced distance on random pairs") {
  Rng rng = make_rng(31);
  for (auto d : {std::size_t(1), std::size_t(2), std::size_t(3)}) {
    auto ks = base_families(d);
    ks.push_back(Kernel::sum(Kernel::squared_exp(d, 0.7, 1.0), Kernel::matern12(d, 0.9, 0.5)));
    for (const auto& k : ks) {
      const auto env = k.envelope();
      for (int i = 0; i < 1000; ++i) {
        Point x = rand_point(rng, d), y = rand_point(rng, d);
        const double r = linf_dist(x, y);
        if (r > env.delta) continue;
        CHECK(k.induced_dist(x, y) <= env.g(r) + 1e-10);
      }
    }
  }
}

TEST_CASE("matern52 envelope tightness swept over a dense radius grid") {
  auto k = Kernel::matern52(1, 1.0, 1.0);
  const auto env = k.envelope();
  for (int i = 1; i <= 4000; ++i) {
    const double r = i * 0.005;
    CHECK(k.induced_dist({0.0}, {r}) <= env.g(r) + 1e-12);
  }
}

TEST_CASE("rescaled envelope matches evaluation in stretched coordinates") {
  auto k = Kernel::matern32(1, 0.4, 1.0);
  const auto env = k.envelope().rescaled(3.0);
  // Distance r in normalized units corresponds to 3r in kernel units.
  CHECK(env.g(0.1) == doctest::Approx(k.envelope().g(0.3)).epsilon(1e-12));
}

TEST_CASE("invalid parameters are rejected at construction") {
  CHECK_THROWS_AS(Kernel::squared_exp(1, 0.0, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(Kernel::squared_exp(1, 1.0, -1.0), std::invalid_argument);
  CHECK_THROWS_AS(Kernel::squared_exp(0, 1.0, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(Kernel::rational_quadratic(1, 1.0, 1.0, -1.0, 1.0), std::invalid_argument);
}
