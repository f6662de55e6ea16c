#pragma once
// Closed-form matrix facts used by the curvature analysis, plus a 1-D bound
// optimization. Everything here has an independent numeric check route (LU
// determinants / inverses, golden-section search); the closed expressions are
// never trusted without it.

#include <functional>

#include "klab/smallmat.hpp"

namespace klab {

// ==========================================================================
// radial profiles: matrices of the form Hess u(|w|)
// ==========================================================================

struct RadialProfile {
  std::function<double(double)> u, du, ddu;
  // u(r) = r^4/2; the profile behind the model phase surfaces
  static RadialProfile quartic();
};

Vec radial_grad(const RadialProfile& p, const Vec& w);
// (u'(r)/r) I + (u''(r)/r^2 - u'(r)/r^3) w w^T
Mat radial_hessian(const RadialProfile& p, const Vec& w);
// det of the above: (u'(r)/r)^{d-1} u''(r)
double radial_hessian_det(const RadialProfile& p, const Vec& w);

// det(I + sigma w w^T) = 1 + sigma |w|^2
double det_rank_one_update(double sigma, const Vec& w);

// ==========================================================================
// sigma I + lambda w w^T + kappa J + gamma w (Jw)^T and its closed inverse
// ==========================================================================

struct StructuredMatrixParams {
  double sigma = 0.0, lambda = 0.0, kappa = 0.0, gamma = 0.0;
  Vec w;
  const Mat* J = nullptr;  // 2n x 2n, skew, J^2 = -I
};

Mat structured_assemble(const StructuredMatrixParams& p);
// Valid whenever sigma^2+kappa^2 != 0 and the scalar
// D = sigma^2+kappa^2+(sigma lambda - gamma kappa)|w|^2 is nonzero.
Mat structured_inverse(const StructuredMatrixParams& p);
// M^{-1} w collapses to (sigma I - kappa J) w / D
Vec structured_inverse_apply_w(const StructuredMatrixParams& p);

// ==========================================================================
// scalar bound: f(u) = u(148-32u)/(46u+1), u >= 0
// ==========================================================================

double f_envelope(double u);

struct FBoundResult {
  double u_star;        // closed-form maximizer 3 sqrt(95)/92 - 1/46
  double f_max;         // closed-form maximum (2/529)(859 - 12 sqrt(95))
  double slack;         // 3 - f_max
  double numeric_u;     // golden-section maximizer
  double numeric_max;   // golden-section maximum
};

FBoundResult optimize_f_bound();

}  // namespace klab
