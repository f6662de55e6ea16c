#pragma once
// Group operations on H^n. Points are flat vectors of length 2n+1 laid out as
// [u_1 .. u_{2n}, xbar]; the horizontal symplectic structure J is carried by
// the context and may be any real matrix with J skew and J^2 = -I.

#include <cstdint>
#include <vector>

#include "klab/smallmat.hpp"

namespace klab {

struct GroupContext {
  int n = 1;
  Mat J;  // 2n x 2n

  static GroupContext standard(int n);
  // Validates skewness and J^2 = -I (tolerance 1e-12), then adopts J.
  static GroupContext with_J(int n, Mat J);

  int hdim() const { return 2 * n; }
  int dim() const { return 2 * n + 1; }

  // u' J v' for the horizontal parts of two points (or plain 2n-vectors)
  double symp(const Vec& u, const Vec& v) const;
};

// ==========================================================================
// group law, dilations, gauge norm
// ==========================================================================
//   x.y = (ux+uy, xbar+ybar+ 1/2 ux^T J uy),  x^{-1} = -x
//   delta_t(u,xbar) = (t u, t^2 xbar),        |x|^4 = |ux|^4 + xbar^2
// ==========================================================================

Vec group_mul(const GroupContext& ctx, const Vec& x, const Vec& y);
Vec group_inv(const GroupContext& ctx, const Vec& x);
Vec dilate(const GroupContext& ctx, double t, const Vec& x);
double koranyi_norm(const GroupContext& ctx, const Vec& x);

// Theta(x,y) = y^{-1}.x ; theta(x,y,t) = delta_{1/t}(Theta(x,y)), i.e.
// ((ux-uy)/t, (xbar-ybar+ 1/2 ux^T J uy)/t^2). The sampling identity is
// y = x.delta_t(-omega)  <=>  theta(x,y,t) = omega.
Vec theta_raw(const GroupContext& ctx, const Vec& x, const Vec& y);
Vec theta(const GroupContext& ctx, const Vec& x, const Vec& y, double t);

// ==========================================================================
// unit tiling: x = nu . z with nu on the integer lattice and z in the
// centered unit box [-1/2, 1/2)^{2n+1}
// ==========================================================================

struct TileIndex {
  std::vector<long long> k;  // 2n+1 entries
  bool operator==(const TileIndex& o) const { return k == o.k; }
};

TileIndex tile_of(const GroupContext& ctx, const Vec& x, Vec* remainder = nullptr);
Vec tile_origin(const GroupContext& ctx, const TileIndex& idx);

}  // namespace klab
