#pragma once
// Spherical averaging over the gauge sphere and the induced maximal
// operators. A_t is kept unnormalized: A_t applied to the constant 1 returns
// the measure of the sphere, independent of t. Node values are computed in
// parallel, then reduced hemisphere-paired in a fixed pairwise order, so a
// function odd in the vertical coordinate averages to exactly zero at the
// origin and results do not depend on the thread count.

#include "klab/grid.hpp"
#include "klab/heisenberg.hpp"
#include "klab/sphere.hpp"

namespace klab {

// A_t f(x) = int f(x . delta_t(-omega)) dmu(omega).
double apply_averaging(const GroupContext& ctx, const PointFunc& f, const Vec& x, double t,
                       const QuadratureRule& rule);

// Reference implementation: identical reduction order, no OpenMP.
double apply_averaging_serial(const GroupContext& ctx, const PointFunc& f, const Vec& x, double t,
                              const QuadratureRule& rule);

// sup over t on the 65-point grid covering [1,2].
double local_maximal(const GroupContext& ctx, const PointFunc& f, const Vec& x,
                     const QuadratureRule& rule);

// sup over the dyadic cover 2^j [1,2), j in [jmin, jmax].
double global_maximal(const GroupContext& ctx, const PointFunc& f, const Vec& x,
                      const QuadratureRule& rule, int jmin, int jmax);

}  // namespace klab
