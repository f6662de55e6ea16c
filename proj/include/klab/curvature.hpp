#pragma once
// Curvature diagnostics for the averaging sphere. The mixed Hessian of a phase
// is probed column-by-column in the surface parameters; its spatial block
// carries the rotational curvature and its left normal direction feeds the
// cinematic (projected second fundamental form) matrix. Closed-form displays
// for the equator and intermediate patches are checked against the finite
// difference route, never substituted for it.

#include <memory>

#include "klab/phase.hpp"
#include "klab/rng.hpp"
#include "klab/smallmat.hpp"

namespace klab {

// ==========================================================================
// finite difference machinery
// ==========================================================================

// (2n+2) x (2n+1); column j is dXi/dy_j by central differences with one
// Richardson pass, h = eps^{1/3} max(1, |y_j|).
Mat fd_mixed_hessian(const Phase& ph, const Vec& x, double t, const Vec& y);

// Drop the t row, leaving the (2n+1) x (2n+1) spatial block (rows x, cols y).
Mat spatial_block(const Mat& M);

// Unit left normal of the mixed Hessian (orthogonal complement of its column
// span) with the sign fixed so the last nonzero component is positive,
// preferring the t slot. Also returns the singular values of M.
struct NormalResult {
  Vec N;
  Vec sv;
};
NormalResult surface_normal(const Mat& M);

// (2n+1) x (2n+1) Hessian in y of s(y) = <N, Xi(x,t,y)> with N frozen;
// h = eps^{1/4} max(1, |y_i|), central stencils with one Richardson pass.
Mat fd_cinematic(const Phase& ph, const Vec& x, double t, const Vec& y, const Vec& N);

// Rank by singular value threshold: relative 1e-6 with an absolute floor so a
// matrix that is pure FD noise counts as rank zero.
int curvature_rank(const Vec& sv);

// ==========================================================================
// per-sample report
// ==========================================================================

struct CurvatureReport {
  RegionLabel region;
  double det_spatial = 0.0;
  int rank_spatial = 0;
  int rank_cinematic = 0;
  Vec sv_spatial;
  Vec sv_cinematic;
  Vec normal;
};

CurvatureReport curvature_report(const GroupContext& ctx, RegionLabel region, const Vec& x,
                                 double t, const Vec& y);

// ==========================================================================
// sampling
// ==========================================================================

// Draw omega on the unit sphere restricted to a patch: near pole rho in
// [0.05,0.35]; equator rho in [0.992,1] with |u_1| >= 0.55 and |obar| <= 0.2;
// intermediate rho in [0.4,0.95] with |obar| >= 0.25.
Vec sample_region_omega(Rng& rng, const GroupContext& ctx, RegionLabel region);

// y with theta(x,y,t) = omega, i.e. y = x . delta_t(-omega).
Vec surface_point(const GroupContext& ctx, const Vec& x, double t, const Vec& omega);

// ==========================================================================
// closed-form displays (all at x = 0; rows y, cols x)
// ==========================================================================

// Equator patch at y' = 0: explicit (2n+1) x (2n+1) matrix built from t, the
// solved height h1 and ybar.
Mat equator_display_closed(const GroupContext& ctx, double t, double h1, double ybar);

// Rearrange the FD spatial block into the display frame: transpose, scale the
// first tangent row by the multiplier h1, and restore the component of the
// vertical column that the graph solve folded into y1.
Mat equator_display_from_fd(const GroupContext& ctx, double t, double h1, double ybar,
                            const Mat& S);

// Intermediate patch, upper branch, any horizontal base uy: explicit display
// with the curvature block X = 4 uy uy^T + 2|uy|^2 I - (H/2) J
// - (|uy|^2/H) uy (J uy)^T.
Mat intermediate_display_closed(const GroupContext& ctx, const Vec& uy, double Hb, double ybar);

Mat intermediate_display_from_fd(const GroupContext& ctx, const Vec& uy, double t, double Hb,
                                 double ybar, const Mat& S);

// ==========================================================================
// closed-form cinematic patterns
// ==========================================================================

// Equator base point y = t e1, ybar = 0: block pattern scaled by
// T/(4t^3) with T = -4 t^2 N_t.
Mat equator_cinematic_closed(const GroupContext& ctx, double t, const Vec& N);

// Intermediate base uy = y1 e1 on the upper branch. The pattern is rank 2n
// with a uniform tangential eigenvalue -lam and a distinguished (D, Brow)
// pair; schur_quant = |D + Brow^T Brow / lam| stays bounded away from zero.
struct ImCinematicClosed {
  Mat C;
  double D = 0.0;
  double lam = 0.0;
  double pref = 0.0;
  double schur_quant = 0.0;
};
ImCinematicClosed intermediate_cinematic_closed(const GroupContext& ctx, double t, double y1,
                                                double Hb, double ybar, const Vec& N);

// The schur quantity alone, from the two scalars it depends on; even in Hb, so
// a lower-branch point can be passed with |Hb|.
double intermediate_schur_quant(double y1, double Hb);

// Rescaled family: exact cinematic from the closed third derivative tensor of
// g_l, and the deviation of its horizontal block from the parabolic limit
// 2 N_t (2|w|^2 I + 4 w w^T). The deviation contracts by 2^{-2} per step in l.
Mat rescaled_cinematic_analytic(const GroupContext& ctx, int ell, const Vec& x, double t,
                                const Vec& y, const Vec& N);
double rescaled_deviation_maxabs(const GroupContext& ctx, int ell, const Vec& x, double t,
                                 const Vec& y, const Vec& N, const Mat& C);

// |det| of the spatial block at the pole itself: (t^2/2)^{2n}.
double pole_rotational_det(const GroupContext& ctx, double t);

// ==========================================================================
// translation invariance
// ==========================================================================

// Compare the curvature data at (x,t,y) against the origin-based evaluation at
// z = Theta(x,y) with the multiplier slot kept from y. Exact for the vertical
// patches; for the equator patch exact on the shear-free hyperplane
// x_{n+1} = 0 and broken off it.
struct TranslationCheck {
  double det_base = 0.0;
  double det_geo = 0.0;
  double rel_diff = 0.0;
  int rank_base = 0;
  int rank_geo = 0;
  int crank_base = 0;
  int crank_geo = 0;
};
TranslationCheck translation_check(const GroupContext& ctx, RegionLabel region, const Vec& x,
                                   double t, const Vec& omega);

}  // namespace klab
