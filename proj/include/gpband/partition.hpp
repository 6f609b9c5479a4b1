// SPDX-License-Identifier: MIT
// Hierarchical N-way box partition with longest-edge splits over the
// normalized unit cube, plus the geometry constants (rho, v1, v2).
#pragma once

#include "gpband/common.hpp"

namespace gpband {

/// Node address: depth h and 1-based index i within that depth, i in
/// [1, N^h]. Children of (h, i) are (h+1, N(i-1)+1) .. (h+1, N i).
struct NodeId {
  unsigned depth = 0;
  std::uint64_t index = 1;

  friend bool operator==(const NodeId& a, const NodeId& b) {
    return a.depth == b.depth && a.index == b.index;
  }
};

/// Deterministic partition geometry. Cells live in [0,1]^D; the mapping to
/// the user's box is a per-axis affine stretch. Each split divides the cell's
/// longest edge (ties: lowest axis) into N equal slabs, slab j going to
/// child j.
class Partition {
 public:
  Partition(Box domain, unsigned n_split);

  std::size_t dims() const { return dims_; }
  unsigned n_split() const { return n_; }
  const Box& domain() const { return domain_; }

  /// Geometric decay per depth: rho = N^{-1/D}.
  double rho() const { return rho_; }
  /// Outer radius constant: half max cell side <= v1 rho^h.
  double v1() const { return v1_; }
  /// Inner radius constant: half min cell side >= v2 rho^h.
  double v2() const { return v2_; }
  /// Largest user-box side; converts normalized sup distances to user units.
  double scale() const { return scale_; }

  static NodeId root() { return {0, 1}; }
  NodeId child(const NodeId& id, unsigned slot) const;  // slot in [1, N]
  NodeId parent(const NodeId& id) const;

  /// Cell in normalized coordinates; exact shared boundaries between
  /// siblings.
  Box cell(const NodeId& id) const;
  Point center(const NodeId& id) const { return cell(id).center(); }

  Box cell_user(const NodeId& id) const;
  Point center_user(const NodeId& id) const { return cell_user(id).center(); }

  Point to_user(const Point& z) const;
  Point to_normalized(const Point& x) const;

 private:
  Box domain_;
  std::size_t dims_;
  unsigned n_;
  double rho_, v1_, v2_, scale_;
};

}  // namespace gpband
