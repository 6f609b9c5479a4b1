// SPDX-License-Identifier: MIT
#include "gpband/posterior.hpp"

#include <cassert>
#include <cmath>

namespace gpband {

Posterior::Posterior(Kernel kernel, double noise_var)
    : kernel_(std::move(kernel)), noise_var_(noise_var) {
  if (noise_var < 0.0) throw std::invalid_argument("Posterior: noise_var must be >= 0");
}

double Posterior::diag_term(const Point& x) const {
  const double kxx = kernel_(x, x);
  return noise_var_ > 0.0 ? kxx + noise_var_ : kxx * (1.0 + 1e-10);
}

void Posterior::ensure_capacity(std::size_t m) {
  if (L_.rows() >= static_cast<Eigen::Index>(m)) return;
  std::size_t cap = std::max<std::size_t>(16, L_.rows() * 2);
  while (cap < m) cap *= 2;
  Eigen::MatrixXd L = Eigen::MatrixXd::Zero(cap, cap);
  Eigen::VectorXd z = Eigen::VectorXd::Zero(cap);
  if (n_ > 0) {
    L.topLeftCorner(n_, n_) = L_.topLeftCorner(n_, n_);
    z.head(n_) = z_.head(n_);
  }
  L_.swap(L);
  z_.swap(z);
}

void Posterior::update(const Point& x, double y) {
  ensure_capacity(n_ + 1);
  Eigen::VectorXd k(n_);
  for (std::size_t i = 0; i < n_; ++i) k(i) = kernel_(xs_[i], x);
  double d2 = diag_term(x);
  double lz = 0.0;
  if (n_ > 0) {
    Eigen::VectorXd l =
        L_.topLeftCorner(n_, n_).triangularView<Eigen::Lower>().solve(k);
    d2 -= l.squaredNorm();
    lz = l.dot(z_.head(n_));
    L_.block(n_, 0, 1, n_) = l.transpose();
  }
  if (!(d2 > 0.0))
    throw std::runtime_error(
        "Posterior::update: non-positive Cholesky pivot (repeated or nearly "
        "coincident inputs); add observation noise or rely on the noiseless "
        "jitter by not duplicating points exactly");
  const double d = std::sqrt(d2);
  L_(n_, n_) = d;
  z_(n_) = (y - lz) / d;
  xs_.push_back(x);
  ++n_;
}

void Posterior::update_batch(const std::vector<Point>& xs, const std::vector<double>& ys) {
  if (xs.size() != ys.size())
    throw std::invalid_argument("Posterior::update_batch: size mismatch");
  if (xs.empty()) return;
  if (n_ > 0) {
    for (std::size_t i = 0; i < xs.size(); ++i) update(xs[i], ys[i]);
    return;
  }
  const std::size_t m = xs.size();
  ensure_capacity(m);
  Eigen::MatrixXd G(m, m);
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < i; ++j) {
      const double v = kernel_(xs[i], xs[j]);
      G(i, j) = v;
      G(j, i) = v;
    }
    G(i, i) = diag_term(xs[i]);
  }
  Eigen::LLT<Eigen::MatrixXd> llt(G);
  if (llt.info() != Eigen::Success)
    throw std::runtime_error(
        "Posterior::update_batch: Gram factorization failed (repeated inputs?); "
        "add observation noise");
  L_.topLeftCorner(m, m) = llt.matrixL();
  Eigen::Map<const Eigen::VectorXd> y(ys.data(), m);
  z_.head(m) = L_.topLeftCorner(m, m).triangularView<Eigen::Lower>().solve(y);
  xs_ = xs;
  n_ = m;
}

PosteriorStats Posterior::query(const Point& x) const {
  return query_many({x})[0];
}

std::vector<PosteriorStats> Posterior::query_many(const std::vector<Point>& xs) const {
  std::vector<PosteriorStats> out(xs.size());
  if (xs.empty()) return out;
  if (n_ == 0) {
    for (std::size_t j = 0; j < xs.size(); ++j)
      out[j] = {0.0, std::sqrt(kernel_(xs[j], xs[j]))};
    return out;
  }
  const std::size_t m = xs.size();
  Eigen::MatrixXd K(n_, m);
  for (std::size_t j = 0; j < m; ++j)
    for (std::size_t i = 0; i < n_; ++i) K(i, j) = kernel_(xs_[i], xs[j]);
  Eigen::MatrixXd V =
      L_.topLeftCorner(n_, n_).triangularView<Eigen::Lower>().solve(K);
  Eigen::VectorXd mu = V.transpose() * z_.head(n_);
  for (std::size_t j = 0; j < m; ++j) {
    const double kxx = kernel_(xs[j], xs[j]);
    double var = kxx - V.col(j).squaredNorm();
    assert(var > -1e-6 * std::max(1.0, kxx));
    out[j] = {mu(j), std::sqrt(std::max(0.0, var))};
  }
  return out;
}

double info_gain(const Kernel& kernel, double noise_var, const std::vector<Point>& xs) {
  const std::size_t m = xs.size();
  Eigen::MatrixXd G(m, m);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j) G(i, j) = kernel(xs[i], xs[j]);
  return info_gain_gram(G, noise_var);
}

double info_gain_gram(const Eigen::MatrixXd& gram, double noise_var) {
  if (!(noise_var > 0.0))
    throw std::invalid_argument("info_gain: requires noise_var > 0");
  const Eigen::Index m = gram.rows();
  if (m == 0) return 0.0;
  Eigen::MatrixXd A = Eigen::MatrixXd::Identity(m, m) + gram / noise_var;
  Eigen::LLT<Eigen::MatrixXd> llt(A);
  if (llt.info() != Eigen::Success)
    throw std::runtime_error("info_gain: factorization failed");
  double logdet = 0.0;
  for (Eigen::Index i = 0; i < m; ++i)
    logdet += std::log(Eigen::MatrixXd(llt.matrixL())(i, i));
  return logdet;  // 0.5 * logdet(A) = sum of log diag(L)
}

}  // namespace gpband
