#pragma once
// Sampled functions on axis-aligned boxes, the dyadic-in-t evaluation grids,
// and Riemann Lp norms. Everything sums in a fixed pairwise order so results
// do not depend on thread count.

#include <functional>
#include <vector>

#include "klab/smallmat.hpp"

namespace klab {

using PointFunc = std::function<double(const Vec&)>;

struct Box {
  Vec lo, hi;
  int dims() const { return static_cast<int>(lo.size()); }
  double volume() const;
};

// ==========================================================================
// multilinear interpolation on a regular grid; identically zero outside the
// box, so a sampled compactly supported function stays compactly supported
// ==========================================================================
class GridFunction {
 public:
  GridFunction() = default;
  GridFunction(Box box, std::vector<int> shape, Vec data);

  // Sample f at the grid vertices (shape[d] points per axis, endpoints
  // included).
  static GridFunction sample(const Box& box, const std::vector<int>& shape, const PointFunc& f);

  double eval(const Vec& x) const;
  const Box& box() const { return box_; }
  const std::vector<int>& shape() const { return shape_; }
  const Vec& data() const { return data_; }

 private:
  Box box_;
  std::vector<int> shape_;
  std::vector<size_t> stride_;
  Vec data_;
};

// ==========================================================================
// time grids
// ==========================================================================

// 1 + k/64 for k = 0..64: the standard resolution for sup over t in [1,2].
Vec time_grid_65();

// Dyadic cover: 2^j (1 + k/64), k = 0..63, for j in [jmin, jmax].
Vec time_grid_dyadic(int jmin, int jmax);

// ==========================================================================
// Riemann Lp norm over a box, midpoint rule with cells[d] cells per axis
// ==========================================================================
double lp_norm(const PointFunc& f, const Box& box, const std::vector<int>& cells, double p);

}  // namespace klab
