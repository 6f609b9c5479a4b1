// SPDX-License-Identifier: MIT
#include "gpband/sampler.hpp"

#include <cmath>

namespace gpband {

LazySampler::LazySampler(Kernel kernel, std::uint64_t seed)
    : post_(std::move(kernel), 0.0), rng_(make_rng(seed)) {}

double LazySampler::reveal(const Point& x) {
  auto it = cache_.find(x);
  if (it != cache_.end()) return it->second;
  const PosteriorStats s = post_.query(x);
  const double value = s.mean + s.sd * draw_normal(rng_);
  post_.update(x, value);
  cache_.emplace(x, value);
  return value;
}

std::vector<double> LazySampler::reveal_many(const std::vector<Point>& xs) {
  std::vector<double> out;
  out.reserve(xs.size());
  for (const auto& x : xs) out.push_back(reveal(x));
  return out;
}

GridSampler::GridSampler(const Kernel& kernel, std::vector<Point> grid)
    : grid_(std::move(grid)) {
  if (grid_.empty()) throw std::invalid_argument("GridSampler: empty grid");
  if (grid_.size() > 4096)
    throw std::invalid_argument("GridSampler: grid larger than 4096 points");
  const std::size_t m = grid_.size();
  Eigen::MatrixXd G(m, m);
  double mean_diag = 0.0;
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j <= i; ++j) {
      const double v = kernel(grid_[i], grid_[j]);
      G(i, j) = v;
      G(j, i) = v;
    }
    mean_diag += G(i, i);
  }
  mean_diag /= double(m);
  G.diagonal().array() += 1e-10 * mean_diag;
  Eigen::LLT<Eigen::MatrixXd> llt(G);
  if (llt.info() != Eigen::Success)
    throw std::runtime_error("GridSampler: Gram factorization failed (duplicate grid points?)");
  L_ = llt.matrixL();
}

std::vector<double> GridSampler::draw(Rng& rng) const {
  const std::size_t m = grid_.size();
  Eigen::VectorXd z(m);
  for (std::size_t i = 0; i < m; ++i) z(i) = draw_normal(rng);
  Eigen::VectorXd f = L_ * z;
  return std::vector<double>(f.data(), f.data() + m);
}

std::vector<double> sample_grid(const Kernel& kernel, const std::vector<Point>& grid,
                                std::uint64_t seed) {
  GridSampler gs(kernel, grid);
  Rng rng = make_rng(seed);
  return gs.draw(rng);
}

std::vector<Point> make_grid(const Box& box, std::size_t res) {
  if (res == 0) throw std::invalid_argument("make_grid: res must be >= 1");
  const std::size_t d = box.dims();
  std::size_t total = 1;
  for (std::size_t i = 0; i < d; ++i) {
    total *= res;
    if (total > (std::size_t(1) << 40))
      throw std::invalid_argument("make_grid: grid too large");
  }
  std::vector<Point> grid;
  grid.reserve(total);
  std::vector<std::size_t> idx(d, 0);
  for (std::size_t n = 0; n < total; ++n) {
    Point p(d);
    std::size_t rem = n;
    for (std::size_t a = d; a-- > 0;) {
      idx[a] = rem % res;
      rem /= res;
    }
    for (std::size_t a = 0; a < d; ++a) {
      p[a] = res == 1 ? 0.5 * (box.lower[a] + box.upper[a])
                      : box.lower[a] + double(idx[a]) * box.side(a) / double(res - 1);
    }
    grid.push_back(std::move(p));
  }
  return grid;
}

}  // namespace gpband
