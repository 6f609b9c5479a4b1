// SPDX-License-Identifier: MIT
#include "gpband/kernel.hpp"

#include <cmath>
#include <sstream>

namespace gpband {
namespace detail {

class KernelNode {
 public:
  virtual ~KernelNode() = default;
  virtual double eval(const Point& x, const Point& y) const = 0;
  virtual double prior_variance() const = 0;
  virtual Envelope envelope() const = 0;
  virtual std::size_t input_dims() const = 0;
  virtual std::string describe() const = 0;
};

namespace {

void check_leaf_params(std::size_t dims, double lengthscale, double variance) {
  if (dims == 0) throw std::invalid_argument("kernel: dims must be >= 1");
  if (!(lengthscale > 0.0)) throw std::invalid_argument("kernel: lengthscale must be > 0");
  if (!(variance > 0.0)) throw std::invalid_argument("kernel: variance must be > 0");
}

class LeafNode : public KernelNode {
 public:
  LeafNode(std::size_t dims, std::size_t offset, double lengthscale, double variance)
      : dims_(dims), offset_(offset), ell_(lengthscale), var_(variance) {
    check_leaf_params(dims, lengthscale, variance);
  }

  double prior_variance() const override { return var_; }
  std::size_t input_dims() const override { return offset_ + dims_; }

  double eval(const Point& x, const Point& y) const override {
    if (x.size() < offset_ + dims_ || y.size() < offset_ + dims_)
      throw std::invalid_argument("kernel: point has fewer coordinates than the kernel reads");
    return eval_block(x, y);
  }

 protected:
  virtual double eval_block(const Point& x, const Point& y) const = 0;

  /// Euclidean distance over this node's coordinate block.
  double r_euclid(const Point& x, const Point& y) const {
    double s = 0.0;
    for (std::size_t i = offset_; i < offset_ + dims_; ++i) {
      const double d = x[i] - y[i];
      s += d * d;
    }
    return std::sqrt(s);
  }

  /// Sup distance over this node's coordinate block.
  double r_linf(const Point& x, const Point& y) const {
    double m = 0.0;
    for (std::size_t i = offset_; i < offset_ + dims_; ++i)
      m = std::max(m, std::abs(x[i] - y[i]));
    return m;
  }

  std::string params_str() const {
    std::ostringstream os;
    os << "dims=" << dims_ << ",offset=" << offset_ << ",ell=" << ell_ << ",var=" << var_;
    return os.str();
  }

  std::size_t dims_;
  std::size_t offset_;
  double ell_;
  double var_;
};

class SquaredExpNode final : public LeafNode {
 public:
  using LeafNode::LeafNode;
  double eval_block(const Point& x, const Point& y) const override {
    const double u = r_euclid(x, y) / ell_;
    return var_ * std::exp(-0.5 * u * u);
  }
  Envelope envelope() const override {
    // 2v(1 - e^{-u^2/2}) <= v u^2 and r_euclid <= sqrt(dims) * linf.
    return {std::sqrt(var_) * std::sqrt(double(dims_)) / ell_, 1.0,
            std::numeric_limits<double>::infinity()};
  }
  std::string describe() const override { return "squared_exp(" + params_str() + ")"; }
};

class Matern12Node final : public LeafNode {
 public:
  using LeafNode::LeafNode;
  double eval_block(const Point& x, const Point& y) const override {
    return var_ * std::exp(-r_euclid(x, y) / ell_);
  }
  Envelope envelope() const override {
    // 2v(1 - e^{-u}) <= 2v u, so d <= s sqrt(2u).
    return {std::sqrt(var_) * std::sqrt(2.0 * std::sqrt(double(dims_)) / ell_), 0.5,
            std::numeric_limits<double>::infinity()};
  }
  std::string describe() const override { return "matern12(" + params_str() + ")"; }
};

class Matern32Node final : public LeafNode {
 public:
  using LeafNode::LeafNode;
  double eval_block(const Point& x, const Point& y) const override {
    const double u = std::sqrt(3.0) * r_euclid(x, y) / ell_;
    return var_ * (1.0 + u) * std::exp(-u);
  }
  Envelope envelope() const override {
    // 1 - (1+u)e^{-u} <= u^2/2, so d <= s u with u = sqrt(3) r / ell.
    return {std::sqrt(var_) * std::sqrt(3.0 * double(dims_)) / ell_, 1.0,
            std::numeric_limits<double>::infinity()};
  }
  std::string describe() const override { return "matern32(" + params_str() + ")"; }
};

class Matern52Node final : public LeafNode {
 public:
  using LeafNode::LeafNode;
  double eval_block(const Point& x, const Point& y) const override {
    const double u = std::sqrt(5.0) * r_euclid(x, y) / ell_;
    return var_ * (1.0 + u + u * u / 3.0) * std::exp(-u);
  }
  Envelope envelope() const override {
    // 1 - (1 + u + u^2/3)e^{-u} <= u^2/6 for all u >= 0: the gap
    // q(u) = u^2/6 - 1 + (1 + u + u^2/3)e^{-u} has q(0) = 0 and
    // q'(u) = (u/3)(1 - (1+u)e^{-u}) >= 0. Hence d <= s u / sqrt(3).
    return {std::sqrt(var_) * std::sqrt(5.0 * double(dims_) / 3.0) / ell_, 1.0,
            std::numeric_limits<double>::infinity()};
  }
  std::string describe() const override { return "matern52(" + params_str() + ")"; }
};

class RationalQuadraticNode final : public LeafNode {
 public:
  RationalQuadraticNode(std::size_t dims, std::size_t offset, double lengthscale,
                        double variance, double c1, double c2)
      : LeafNode(dims, offset, lengthscale, variance), c1_(c1), c2_(c2) {
    if (!(c1 > 0.0) || !(c2 > 0.0))
      throw std::invalid_argument("kernel: rational_quadratic shape parameters must be > 0");
  }
  double eval_block(const Point& x, const Point& y) const override {
    const double u = r_euclid(x, y) / ell_;
    return var_ * std::pow(1.0 + c1_ * u * u, -c2_);
  }
  Envelope envelope() const override {
    // 1 - (1+z)^{-c2} <= c2 z with z = c1 u^2.
    return {std::sqrt(var_ * 2.0 * c1_ * c2_ * double(dims_)) / ell_, 1.0,
            std::numeric_limits<double>::infinity()};
  }
  std::string describe() const override {
    std::ostringstream os;
    os << "rational_quadratic(" << params_str() << ",c1=" << c1_ << ",c2=" << c2_ << ")";
    return os.str();
  }

 private:
  double c1_;
  double c2_;
};

class TriangleNode final : public LeafNode {
 public:
  using LeafNode::LeafNode;
  double eval_block(const Point& x, const Point& y) const override {
    return var_ * std::max(0.0, 1.0 - r_linf(x, y) / ell_);
  }
  Envelope envelope() const override {
    // 2v min(1, u) <= 2v u directly in the sup distance.
    return {std::sqrt(2.0 * var_ / ell_), 0.5, std::numeric_limits<double>::infinity()};
  }
  std::string describe() const override { return "triangle(" + params_str() + ")"; }
};

class SumNode final : public KernelNode {
 public:
  SumNode(std::shared_ptr<const KernelNode> a, std::shared_ptr<const KernelNode> b)
      : a_(std::move(a)), b_(std::move(b)) {}
  double eval(const Point& x, const Point& y) const override {
    return a_->eval(x, y) + b_->eval(x, y);
  }
  double prior_variance() const override {
    return a_->prior_variance() + b_->prior_variance();
  }
  std::size_t input_dims() const override {
    return std::max(a_->input_dims(), b_->input_dims());
  }
  Envelope envelope() const override {
    // d^2 = d_a^2 + d_b^2; align both terms at the smaller exponent, valid
    // for r <= 1, hence the cap on delta.
    const Envelope ea = a_->envelope();
    const Envelope eb = b_->envelope();
    return {std::sqrt(ea.coef * ea.coef + eb.coef * eb.coef),
            std::min(ea.alpha, eb.alpha),
            std::min({ea.delta, eb.delta, 1.0})};
  }
  std::string describe() const override {
    return "sum(" + a_->describe() + "," + b_->describe() + ")";
  }

 private:
  std::shared_ptr<const KernelNode> a_;
  std::shared_ptr<const KernelNode> b_;
};

class ProductNode final : public KernelNode {
 public:
  ProductNode(std::shared_ptr<const KernelNode> a, std::shared_ptr<const KernelNode> b)
      : a_(std::move(a)), b_(std::move(b)) {}
  double eval(const Point& x, const Point& y) const override {
    return a_->eval(x, y) * b_->eval(x, y);
  }
  double prior_variance() const override {
    return a_->prior_variance() * b_->prior_variance();
  }
  std::size_t input_dims() const override {
    return std::max(a_->input_dims(), b_->input_dims());
  }
  Envelope envelope() const override {
    // d^2 = 2 v_a v_b - 2 K_a K_b = v_b d_a^2 + K_a d_b^2 <= v_b d_a^2 + v_a d_b^2.
    const Envelope ea = a_->envelope();
    const Envelope eb = b_->envelope();
    const double va = a_->prior_variance();
    const double vb = b_->prior_variance();
    return {std::sqrt(vb * ea.coef * ea.coef + va * eb.coef * eb.coef),
            std::min(ea.alpha, eb.alpha),
            std::min({ea.delta, eb.delta, 1.0})};
  }
  std::string describe() const override {
    return "product(" + a_->describe() + "," + b_->describe() + ")";
  }

 private:
  std::shared_ptr<const KernelNode> a_;
  std::shared_ptr<const KernelNode> b_;
};

}  // namespace
}  // namespace detail

using detail::KernelNode;

Kernel Kernel::squared_exp(std::size_t dims, double ell, double var, std::size_t offset) {
  return Kernel(std::make_shared<detail::SquaredExpNode>(dims, offset, ell, var));
}
Kernel Kernel::matern12(std::size_t dims, double ell, double var, std::size_t offset) {
  return Kernel(std::make_shared<detail::Matern12Node>(dims, offset, ell, var));
}
Kernel Kernel::matern32(std::size_t dims, double ell, double var, std::size_t offset) {
  return Kernel(std::make_shared<detail::Matern32Node>(dims, offset, ell, var));
}
Kernel Kernel::matern52(std::size_t dims, double ell, double var, std::size_t offset) {
  return Kernel(std::make_shared<detail::Matern52Node>(dims, offset, ell, var));
}
Kernel Kernel::rational_quadratic(std::size_t dims, double ell, double var, double c1,
                                  double c2, std::size_t offset) {
  return Kernel(std::make_shared<detail::RationalQuadraticNode>(dims, offset, ell, var, c1, c2));
}
Kernel Kernel::triangle(std::size_t dims, double ell, double var, std::size_t offset) {
  return Kernel(std::make_shared<detail::TriangleNode>(dims, offset, ell, var));
}
Kernel Kernel::sum(const Kernel& a, const Kernel& b) {
  return Kernel(std::make_shared<detail::SumNode>(a.node_, b.node_));
}
Kernel Kernel::product(const Kernel& a, const Kernel& b) {
  return Kernel(std::make_shared<detail::ProductNode>(a.node_, b.node_));
}

double Kernel::operator()(const Point& x, const Point& y) const { return node_->eval(x, y); }

double Kernel::prior_variance() const { return node_->prior_variance(); }

double Kernel::induced_dist(const Point& x, const Point& y) const {
  const double sq = node_->eval(x, x) + node_->eval(y, y) - 2.0 * node_->eval(x, y);
  return std::sqrt(std::max(0.0, sq));
}

Envelope Kernel::envelope() const { return node_->envelope(); }

std::size_t Kernel::input_dims() const { return node_->input_dims(); }

std::string Kernel::describe() const { return node_->describe(); }

}  // namespace gpband
