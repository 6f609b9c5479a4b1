// SPDX-License-Identifier: MIT
#include "gpband/partition.hpp"

#include <algorithm>
#include <cmath>

namespace gpband {

Partition::Partition(Box domain, unsigned n_split)
    : domain_(std::move(domain)), dims_(domain_.dims()), n_(n_split) {
  if (n_ < 2) throw std::invalid_argument("Partition: n_split must be >= 2");
  rho_ = std::pow(double(n_), -1.0 / double(dims_));
  v1_ = 0.5 * std::pow(double(n_), double(dims_ - 1) / double(dims_));
  v2_ = 0.5 / double(n_);
  scale_ = domain_.max_side();
}

NodeId Partition::child(const NodeId& id, unsigned slot) const {
  if (slot < 1 || slot > n_) throw std::invalid_argument("Partition::child: slot out of range");
  if (id.depth >= 40) throw std::invalid_argument("Partition::child: depth limit exceeded");
  const std::uint64_t base = (id.index - 1) * n_;
  return {id.depth + 1, base + slot};
}

NodeId Partition::parent(const NodeId& id) const {
  if (id.depth == 0) throw std::invalid_argument("Partition::parent: root has no parent");
  return {id.depth - 1, (id.index + n_ - 1) / n_};
}

Box Partition::cell(const NodeId& id) const {
  // Recover the child-slot path root -> node from the index digits.
  std::vector<unsigned> slots(id.depth);
  std::uint64_t i = id.index;
  for (unsigned h = id.depth; h-- > 0;) {
    const std::uint64_t p = (i + n_ - 1) / n_;
    slots[h] = unsigned(i - (p - 1) * n_);
    i = p;
  }
  Box b = unit_box(dims_);
  for (unsigned h = 0; h < id.depth; ++h) {
    std::size_t axis = 0;
    for (std::size_t a = 1; a < dims_; ++a)
      if (b.side(a) > b.side(axis)) axis = a;
    const double lo = b.lower[axis];
    const double hi = b.upper[axis];
    const double w = hi - lo;
    const unsigned j = slots[h];
    b.lower[axis] = (j == 1) ? lo : lo + w * double(j - 1) / double(n_);
    b.upper[axis] = (j == n_) ? hi : lo + w * double(j) / double(n_);
  }
  return b;
}

Box Partition::cell_user(const NodeId& id) const {
  const Box c = cell(id);
  Box out = c;
  out.lower = to_user(c.lower);
  out.upper = to_user(c.upper);
  return out;
}

Point Partition::to_user(const Point& z) const {
  Point x(dims_);
  for (std::size_t a = 0; a < dims_; ++a)
    x[a] = domain_.lower[a] + z[a] * domain_.side(a);
  return x;
}

Point Partition::to_normalized(const Point& x) const {
  Point z(dims_);
  for (std::size_t a = 0; a < dims_; ++a)
    z[a] = (x[a] - domain_.lower[a]) / domain_.side(a);
  return z;
}

}  // namespace gpband
