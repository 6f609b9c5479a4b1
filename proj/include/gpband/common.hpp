// SPDX-License-Identifier: MIT
// Shared basic types: points, boxes, the sup metric, seed derivation.
#pragma once

#include <cmath>
#include <cstdint>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

namespace gpband {

using Point = std::vector<double>;

inline double linf_dist(const Point& a, const Point& b) {
  if (a.size() != b.size()) throw std::invalid_argument("linf_dist: dimension mismatch");
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

/// Axis-aligned box [lower, upper], used both for domains and partition cells.
struct Box {
  Point lower;
  Point upper;

  Box() = default;
  Box(Point lo, Point hi) : lower(std::move(lo)), upper(std::move(hi)) {
    if (lower.size() != upper.size() || lower.empty())
      throw std::invalid_argument("Box: lower/upper dimension mismatch or empty");
    for (std::size_t i = 0; i < lower.size(); ++i)
      if (!(lower[i] < upper[i]))
        throw std::invalid_argument("Box: requires lower < upper on every axis");
  }

  std::size_t dims() const { return lower.size(); }

  Point center() const {
    Point c(dims());
    for (std::size_t i = 0; i < dims(); ++i) c[i] = 0.5 * (lower[i] + upper[i]);
    return c;
  }

  double side(std::size_t axis) const { return upper[axis] - lower[axis]; }

  double max_side() const {
    double m = 0.0;
    for (std::size_t i = 0; i < dims(); ++i) m = std::max(m, side(i));
    return m;
  }

  bool contains(const Point& p) const {
    for (std::size_t i = 0; i < dims(); ++i)
      if (p[i] < lower[i] || p[i] > upper[i]) return false;
    return true;
  }

  /// Half-open membership so that interior cell boundaries belong to exactly
  /// one cell; the face touching `outer`'s upper boundary stays closed.
  bool contains_tiling(const Point& p, const Box& outer) const {
    for (std::size_t i = 0; i < dims(); ++i) {
      if (p[i] < lower[i]) return false;
      const bool at_outer_top = upper[i] >= outer.upper[i];
      if (at_outer_top ? p[i] > upper[i] : p[i] >= upper[i]) return false;
    }
    return true;
  }

  double volume() const {
    double v = 1.0;
    for (std::size_t i = 0; i < dims(); ++i) v *= side(i);
    return v;
  }
};

/// Unit cube [0,1]^d.
inline Box unit_box(std::size_t d) {
  return Box(Point(d, 0.0), Point(d, 1.0));
}

/// SplitMix64 stream; used to derive independent child seeds from one master
/// seed so that parallel runs stay reproducible.
struct SplitMix64 {
  std::uint64_t state;
  explicit SplitMix64(std::uint64_t seed) : state(seed) {}
  std::uint64_t next() {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }
};

/// Deterministic child seed for a named stream of a master seed.
inline std::uint64_t derive_seed(std::uint64_t master, std::uint64_t stream) {
  SplitMix64 s(master ^ (0x9e3779b97f4a7c15ULL * (stream + 1)));
  s.next();
  return s.next();
}

using Rng = std::mt19937_64;

inline Rng make_rng(std::uint64_t seed) { return Rng(seed); }

inline double draw_normal(Rng& rng) {
  std::normal_distribution<double> d(0.0, 1.0);
  return d(rng);
}

inline double draw_uniform(Rng& rng, double lo, double hi) {
  std::uniform_real_distribution<double> d(lo, hi);
  return d(rng);
}

}  // namespace gpband
