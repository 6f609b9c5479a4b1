// SPDX-License-Identifier: MIT
// Exact covering checks for unions of closed sup-metric balls over a box,
// by recursive box subdivision.
#pragma once

#include "gpband/common.hpp"

namespace gpband {

struct BallSpec {
  Point center;
  double radius = 0.0;
};

struct CoveringResult {
  bool covered = true;
  Point witness;  // meaningful only when !covered
};

/// Checks region ⊆ ∪ balls. Sup-metric balls are axis-aligned boxes, so
/// sub-boxes are split along ball faces (upper halves first) until each one
/// either lies inside a single ball or meets the balls in at most a boundary
/// slice; all comparisons are exact and the verdict does not depend on eps,
/// which is kept as a resolution hint in the interface and merely validated.
/// The witness — the center of the first bare sub-box in that order, or the
/// region center for an empty ball set — is always genuinely uncovered.
CoveringResult covering_check(const Box& region, const std::vector<BallSpec>& balls,
                              double eps);

/// Membership of one point in the union of closed balls.
bool point_covered(const Point& p, const std::vector<BallSpec>& balls);

}  // namespace gpband
