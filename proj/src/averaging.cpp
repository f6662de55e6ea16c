#include "klab/averaging.hpp"

#include <algorithm>
#include <cassert>

namespace klab {

namespace {

template <bool Parallel>
double average_impl(const GroupContext& ctx, const PointFunc& f, const Vec& x, double t,
                    const QuadratureRule& rule) {
  const long long m = static_cast<long long>(rule.nodes.size());
  assert(m % 2 == 0);  // hemisphere blocks of equal length
  Vec vals(m);
#pragma omp parallel for schedule(static) if (Parallel)
  for (long long i = 0; i < m; ++i) {
    const Vec omega = sphere_embed(ctx, rule.nodes[i].p);
    const Vec y = group_mul(ctx, x, dilate(ctx, t, vscale(-1.0, omega)));
    vals[i] = rule.nodes[i].w * f(y);
  }
  // pair the hemispheres before reducing: node i and node i + m/2 share
  // (rho, u), so an odd-in-vertical integrand cancels exactly at x = 0
  const long long half = m / 2;
  Vec paired(half);
  for (long long i = 0; i < half; ++i) paired[i] = vals[i] + vals[i + half];
  return pairwise_sum(paired);
}

}  // namespace

double apply_averaging(const GroupContext& ctx, const PointFunc& f, const Vec& x, double t,
                       const QuadratureRule& rule) {
  return average_impl<true>(ctx, f, x, t, rule);
}

double apply_averaging_serial(const GroupContext& ctx, const PointFunc& f, const Vec& x, double t,
                              const QuadratureRule& rule) {
  return average_impl<false>(ctx, f, x, t, rule);
}

double local_maximal(const GroupContext& ctx, const PointFunc& f, const Vec& x,
                     const QuadratureRule& rule) {
  double best = 0.0;
  for (double t : time_grid_65()) best = std::max(best, apply_averaging(ctx, f, x, t, rule));
  return best;
}

double global_maximal(const GroupContext& ctx, const PointFunc& f, const Vec& x,
                      const QuadratureRule& rule, int jmin, int jmax) {
  double best = 0.0;
  for (double t : time_grid_dyadic(jmin, jmax))
    best = std::max(best, apply_averaging(ctx, f, x, t, rule));
  return best;
}

}  // namespace klab
