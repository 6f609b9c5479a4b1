// SPDX-License-Identifier: MIT
#include "gpband/covering.hpp"

namespace gpband {

namespace {

bool box_inside_ball(const Box& b, const BallSpec& ball) {
  for (std::size_t a = 0; a < b.dims(); ++a) {
    if (b.lower[a] < ball.center[a] - ball.radius) return false;
    if (b.upper[a] > ball.center[a] + ball.radius) return false;
  }
  return true;
}

bool box_meets_ball(const Box& b, const BallSpec& ball) {
  for (std::size_t a = 0; a < b.dims(); ++a) {
    if (b.upper[a] < ball.center[a] - ball.radius) return false;
    if (b.lower[a] > ball.center[a] + ball.radius) return false;
  }
  return true;
}

// First ball face that cuts through the box interior, scanning axes in order
// and balls in insertion order. Faces of balls that do not even meet the box
// cannot separate covered from uncovered parts of it, so they are skipped.
bool crossing_face(const Box& box, const std::vector<BallSpec>& balls, std::size_t& axis,
                   double& value) {
  for (std::size_t a = 0; a < box.dims(); ++a) {
    for (const auto& ball : balls) {
      if (!box_meets_ball(box, ball)) continue;
      for (const double v : {ball.center[a] - ball.radius, ball.center[a] + ball.radius}) {
        if (box.lower[a] < v && v < box.upper[a]) {
          axis = a;
          value = v;
          return true;
        }
      }
    }
  }
  return false;
}

bool check(const Box& box, const std::vector<BallSpec>& balls, Point& witness) {
  for (const auto& ball : balls)
    if (box_inside_ball(box, ball)) return true;
  std::size_t axis = 0;
  double value = 0.0;
  if (!crossing_face(box, balls, axis, value)) {
    // No face crosses the interior and no single ball contains the box, so
    // every ball meets it in at most a boundary slice and the interior is
    // bare; the center is a genuinely uncovered point.
    witness = box.center();
    return false;
  }
  Box upper = box;
  upper.lower[axis] = value;
  if (!check(upper, balls, witness)) return false;
  Box lower = box;
  lower.upper[axis] = value;
  return check(lower, balls, witness);
}

}  // namespace

CoveringResult covering_check(const Box& region, const std::vector<BallSpec>& balls,
                              double eps) {
  if (!(eps > 0.0)) throw std::invalid_argument("covering_check: eps must be > 0");
  for (const auto& b : balls) {
    if (b.center.size() != region.dims())
      throw std::invalid_argument("covering_check: ball dimension mismatch");
    if (!(b.radius >= 0.0)) throw std::invalid_argument("covering_check: negative radius");
  }
  CoveringResult res;
  res.covered = check(region, balls, res.witness);
  return res;
}

bool point_covered(const Point& p, const std::vector<BallSpec>& balls) {
  for (const auto& b : balls)
    if (linf_dist(p, b.center) <= b.radius) return true;
  return false;
}

}  // namespace gpband
