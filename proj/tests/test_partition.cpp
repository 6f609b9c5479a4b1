// SPDX-License-Identifier: MIT
#include <algorithm>
#include <cmath>
#include <vector>

#include "doctest.h"
#include "gpband/partition.hpp"

using namespace gpband;

namespace {

std::vector<NodeId> nodes_at_depth(const Partition& part, unsigned depth) {
  std::vector<NodeId> level{Partition::root()};
  for (unsigned h = 0; h < depth; ++h) {
    std::vector<NodeId> next;
    for (const auto& id : level)
      for (unsigned s = 1; s <= part.n_split(); ++s) next.push_back(part.child(id, s));
    level = std::move(next);
  }
  return level;
}

}  // namespace

TEST_CASE("child indices follow the (h+1, N(i-1)+s) addressing") {
  Partition part(unit_box(1), 3);
  const NodeId a = part.child(Partition::root(), 2);
  CHECK(a.depth == 1);
  CHECK(a.index == 2);
  const NodeId b = part.child(a, 3);
  CHECK(b.depth == 2);
  CHECK(b.index == 6);
  CHECK(part.parent(b) == a);
  CHECK(part.parent(a) == Partition::root());
  CHECK_THROWS_AS(part.parent(Partition::root()), std::invalid_argument);
  CHECK_THROWS_AS(part.child(a, 0), std::invalid_argument);
  CHECK_THROWS_AS(part.child(a, 4), std::invalid_argument);
  CHECK_THROWS_AS(Partition(unit_box(1), 1), std::invalid_argument);
}

TEST_CASE("ternary 1-D cells tile [0,1] with exactly shared boundaries") {
  Partition part(unit_box(1), 3);
  for (unsigned depth = 1; depth <= 4; ++depth) {
    auto ids = nodes_at_depth(part, depth);
    std::vector<Box> cells;
    for (const auto& id : ids) cells.push_back(part.cell(id));
    std::sort(cells.begin(), cells.end(),
              [](const Box& x, const Box& y) { return x.lower[0] < y.lower[0]; });
    CHECK(cells.front().lower[0] == 0.0);
    CHECK(cells.back().upper[0] == 1.0);
    for (std::size_t i = 0; i + 1 < cells.size(); ++i)
      CHECK(cells[i].upper[0] == cells[i + 1].lower[0]);
  }
}

TEST_CASE("depth-1 centers of the ternary split are 1/6, 1/2, 5/6") {
  Partition part(unit_box(1), 3);
  const double expect[3] = {1.0 / 6.0, 0.5, 5.0 / 6.0};
  for (unsigned s = 1; s <= 3; ++s)
    CHECK(part.center(part.child(Partition::root(), s))[0] ==
          doctest::Approx(expect[s - 1]).epsilon(1e-15));
}

TEST_CASE("splits cut the longest edge, lowest axis on ties") {
  Partition part(unit_box(2), 3);
  const Box c1 = part.cell(part.child(Partition::root(), 1));
  CHECK(c1.upper[0] == doctest::Approx(1.0 / 3.0));  // axis 0 split first
  CHECK(c1.upper[1] == 1.0);
  // The depth-1 cell is 1/3 x 1, so the next split cuts axis 1.
  const Box c2 = part.cell(part.child(part.child(Partition::root(), 1), 2));
  CHECK(c2.upper[0] == doctest::Approx(1.0 / 3.0));
  CHECK(c2.lower[1] == doctest::Approx(1.0 / 3.0));
  CHECK(c2.upper[1] == doctest::Approx(2.0 / 3.0));
}

TEST_CASE("every point lies in exactly one cell per depth under the tiling rule") {
  for (std::size_t d : {std::size_t(1), std::size_t(2)}) {
    Partition part(unit_box(d), 3);
    const Box outer = unit_box(d);
    Rng rng = make_rng(31);
    std::vector<Point> probes;
    for (int i = 0; i < 100; ++i) {
      Point p(d);
      for (auto& v : p) v = draw_uniform(rng, 0.0, 1.0);
      probes.push_back(p);
    }
    probes.push_back(Point(d, 0.0));
    probes.push_back(Point(d, 1.0));
    probes.push_back(Point(d, 1.0 / 3.0));
    for (unsigned depth = 1; depth <= 3; ++depth) {
      auto ids = nodes_at_depth(part, depth);
      for (const auto& p : probes) {
        int hits = 0;
        for (const auto& id : ids)
          if (part.cell(id).contains_tiling(p, outer)) ++hits;
        CHECK(hits == 1);
      }
    }
  }
}

TEST_CASE("geometry constants match their closed forms") {
  Partition p1(unit_box(1), 3);
  CHECK(p1.rho() == doctest::Approx(1.0 / 3.0).epsilon(1e-15));
  CHECK(p1.v1() == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(p1.v2() == doctest::Approx(1.0 / 6.0).epsilon(1e-15));

  Partition p2(unit_box(2), 3);
  CHECK(p2.rho() == doctest::Approx(std::pow(3.0, -0.5)).epsilon(1e-15));
  CHECK(p2.v1() == doctest::Approx(0.5 * std::pow(3.0, 0.5)).epsilon(1e-15));
  CHECK(p2.v2() == doctest::Approx(1.0 / 6.0).epsilon(1e-15));
}

TEST_CASE("cell radii are bounded by v1 rho^h and v2 rho^h") {
  for (std::size_t d : {std::size_t(1), std::size_t(2), std::size_t(3)}) {
    Partition part(unit_box(d), 3);
    Rng rng = make_rng(47);
    NodeId id = Partition::root();
    for (unsigned h = 0; h <= 9; ++h) {
      const Box c = part.cell(id);
      double half_max = 0.0, half_min = 1.0;
      for (std::size_t a = 0; a < d; ++a) {
        half_max = std::max(half_max, 0.5 * c.side(a));
        half_min = std::min(half_min, 0.5 * c.side(a));
      }
      CHECK(half_max <= part.v1() * std::pow(part.rho(), double(h)) * (1.0 + 1e-12));
      CHECK(half_min >= part.v2() * std::pow(part.rho(), double(h)) * (1.0 - 1e-12));
      id = part.child(id, 1 + unsigned(rng() % 3));
    }
  }
}

TEST_CASE("user-coordinate mapping is the per-axis affine stretch") {
  Box dom({-1.0, 0.0}, {3.0, 1.0});
  Partition part(dom, 3);
  CHECK(part.scale() == doctest::Approx(4.0));
  const Point z{0.25, 0.5};
  const Point x = part.to_user(z);
  CHECK(x[0] == doctest::Approx(0.0));
  CHECK(x[1] == doctest::Approx(0.5));
  const Point back = part.to_normalized(x);
  CHECK(back[0] == doctest::Approx(0.25).epsilon(1e-15));
  CHECK(back[1] == doctest::Approx(0.5).epsilon(1e-15));
  // Root center in user coordinates is the domain center.
  const Point c = part.center_user(Partition::root());
  CHECK(c[0] == doctest::Approx(1.0));
  CHECK(c[1] == doctest::Approx(0.5));
}
