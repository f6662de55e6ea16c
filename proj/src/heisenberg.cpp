#include "klab/heisenberg.hpp"

#include <cmath>
#include <stdexcept>

namespace klab {

GroupContext GroupContext::standard(int n) {
  GroupContext ctx;
  ctx.n = n;
  ctx.J = Mat(2 * n, 2 * n);
  for (int i = 0; i < n; ++i) {
    ctx.J(i, n + i) = 1.0;
    ctx.J(n + i, i) = -1.0;
  }
  return ctx;
}

GroupContext GroupContext::with_J(int n, Mat J) {
  if (J.nr != 2 * n || J.nc != 2 * n) throw std::invalid_argument("with_J: bad dimensions");
  const Mat JJ = matmul(J, J);
  for (int i = 0; i < 2 * n; ++i)
    for (int j = 0; j < 2 * n; ++j) {
      if (std::abs(J(i, j) + J(j, i)) > 1e-12) throw std::invalid_argument("with_J: not skew");
      const double want = (i == j) ? -1.0 : 0.0;
      if (std::abs(JJ(i, j) - want) > 1e-12) throw std::invalid_argument("with_J: J^2 != -I");
    }
  GroupContext ctx;
  ctx.n = n;
  ctx.J = std::move(J);
  return ctx;
}

double GroupContext::symp(const Vec& u, const Vec& v) const {
  const int h = hdim();
  double s = 0.0;
  for (int i = 0; i < h; ++i) {
    double r = 0.0;
    for (int j = 0; j < h; ++j) r += J(i, j) * v[j];
    s += u[i] * r;
  }
  return s;
}

Vec group_mul(const GroupContext& ctx, const Vec& x, const Vec& y) {
  const int h = ctx.hdim();
  Vec z(ctx.dim());
  for (int i = 0; i < h; ++i) z[i] = x[i] + y[i];
  z[h] = x[h] + y[h] + 0.5 * ctx.symp(x, y);
  return z;
}

Vec group_inv(const GroupContext& ctx, const Vec& x) {
  Vec z(x);
  for (double& v : z) v = -v;
  (void)ctx;
  return z;
}

Vec dilate(const GroupContext& ctx, double t, const Vec& x) {
  const int h = ctx.hdim();
  Vec z(x);
  for (int i = 0; i < h; ++i) z[i] *= t;
  z[h] *= t * t;
  return z;
}

double koranyi_norm(const GroupContext& ctx, const Vec& x) {
  const int h = ctx.hdim();
  double uu = 0.0;
  for (int i = 0; i < h; ++i) uu += x[i] * x[i];
  return std::pow(uu * uu + x[h] * x[h], 0.25);
}

Vec theta_raw(const GroupContext& ctx, const Vec& x, const Vec& y) {
  return group_mul(ctx, group_inv(ctx, y), x);
}

Vec theta(const GroupContext& ctx, const Vec& x, const Vec& y, double t) {
  return dilate(ctx, 1.0 / t, theta_raw(ctx, x, y));
}

TileIndex tile_of(const GroupContext& ctx, const Vec& x, Vec* remainder) {
  const int h = ctx.hdim();
  TileIndex idx;
  idx.k.resize(ctx.dim());
  Vec z(ctx.dim());
  Vec ku(h);
  for (int i = 0; i < h; ++i) {
    idx.k[i] = static_cast<long long>(std::floor(x[i] + 0.5));
    ku[i] = static_cast<double>(idx.k[i]);
    z[i] = x[i] - ku[i];
  }
  // central slot: x_bar = k_bar + z_bar + 1/2 ku^T J zu
  const double shear = 0.5 * ctx.symp(ku, z);
  const double v = x[h] - shear;
  idx.k[h] = static_cast<long long>(std::floor(v + 0.5));
  z[h] = v - static_cast<double>(idx.k[h]);
  if (remainder) *remainder = z;
  return idx;
}

Vec tile_origin(const GroupContext& ctx, const TileIndex& idx) {
  Vec nu(ctx.dim());
  for (int i = 0; i < ctx.dim(); ++i) nu[i] = static_cast<double>(idx.k[i]);
  return nu;
}

}  // namespace klab
