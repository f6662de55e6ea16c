#pragma once
// Geometry of the unit gauge sphere |omega|^4 = |u_omega|^4 + omega_bar^2 = 1
// and of the level set F(x,t,y) = 0 it generates under dilation: graph
// solvers for each chart, region classification, and the surface measure
// quadrature that realizes the polar decomposition of Lebesgue measure.

#include <vector>

#include "klab/heisenberg.hpp"
#include "klab/smallmat.hpp"

namespace klab {

// ==========================================================================
// parametrization: omega = (rho u, hemi sqrt(1-rho^4)), u in S^{2n-1}
// ==========================================================================

struct SpherePoint {
  double rho = 0.0;
  Vec u;          // unit vector in R^{2n}
  int hemi = 1;   // sign of omega_bar (+1 also covers the equator omega_bar=0)
};

Vec sphere_embed(const GroupContext& ctx, const SpherePoint& p);
SpherePoint sphere_param(const GroupContext& ctx, const Vec& omega);

// ==========================================================================
// defining function F(x,t,y) = |ux-uy|^4 + B^2 - t^4,
// B = xbar - ybar + 1/2 ux^T J uy
// ==========================================================================

double defining_F(const GroupContext& ctx, const Vec& x, double t, const Vec& y);
// gradient in (x,t): [4|v|^2 v + B J uy, 2B, -4t^3], length 2n+2
Vec grad_F_xt(const GroupContext& ctx, const Vec& x, double t, const Vec& y);
double dF_dy1(const GroupContext& ctx, const Vec& x, double t, const Vec& y);
double dF_dybar(const GroupContext& ctx, const Vec& x, double t, const Vec& y);

// graph of the level set over the central slot near the pole:
//   G = xbar + 1/2 ux^T J uy + t^2 (1 - sqrt(1 - |ux-uy|^4/t^4))
double graph_G(const GroupContext& ctx, const Vec& x, double t, const Vec& uy);
// remainder part G - (xbar + 1/2 ux^T J uy), written cancellation-free
double graph_G_remainder(const GroupContext& ctx, const Vec& x, double t, const Vec& uy);

// Newton in y_1 for F = 0 with the branch selected by the seed;
// returns NaN and sets *ok=false when no root is reached.
double solve_H1(const GroupContext& ctx, const Vec& x, double t, const Vec& yprime,
                double ybar, double seed, bool* ok = nullptr);
// closed form for the central-slot height, sigma = +1 upper / -1 lower branch
double solve_Hbar(const GroupContext& ctx, const Vec& x, double t, const Vec& uy, int sigma);

// ==========================================================================
// region classification
// ==========================================================================

enum class RegionLabel { NearPole, Equator, Intermediate };

struct ClassifyParams {
  double theta_pole = 0.35;  // |u_omega| <= theta_pole        -> NearPole
  double theta_eq = 0.2;     // else |omega_bar| <= theta_eq   -> Equator
};

struct Region {
  RegionLabel label = RegionLabel::NearPole;
  // For Intermediate: orthogonal, J-commuting rotation with R u_omega || e1.
  // Identity otherwise.
  Mat rot;
};

Region classify_region(const GroupContext& ctx, const Vec& omega,
                       const ClassifyParams& params = {});
const char* region_name(RegionLabel label);

// J-commuting rotation sending direction u (|u|=1) to e1; requires the
// standard complex pairing (u_k, u_{n+k}), i.e. ctx.J == standard J.
Mat align_rotation(const GroupContext& ctx, const Vec& u);

// ==========================================================================
// surface measure quadrature
// ==========================================================================
// d mu = 2 rho^{2n-1} (1-rho^4)^{-1/2} d rho d sigma(u) per hemisphere, which
// makes int f dx = int_0^inf int f(delta_r omega) r^{Q-1} dmu(omega) dr exact.
// Substituting rho^2 = sin(phi) gives the smooth density sin^{n-1}(phi) on
// [0, pi/2]; Gauss-Legendre there, uniform trapezoid on S^1, product
// Gauss-Legendre x trapezoid chart on S^3.
// ==========================================================================

struct QuadratureRule {
  struct Node {
    SpherePoint p;
    double w;
  };
  std::vector<Node> nodes;
  int n_rho = 0;  // phi-node count
  int n_sph = 0;  // angular resolution parameter (see build_quadrature)
};

// n_sph: node count on S^1 for n=1; for n=2 the chart uses
// (n_sph/4, n_sph/4, n_sph) nodes in (chi, theta, psi). Only n in {1,2}.
QuadratureRule build_quadrature(const GroupContext& ctx, int n_rho, int n_sph);

double quadrature_mass(const QuadratureRule& rule);
double sphere_mass_exact(int n);  // 2 pi^2 for n=1, 4 pi^2 for n=2

// Gauss-Legendre nodes/weights on [a,b]
void gauss_legendre(int n, double a, double b, Vec* nodes, Vec* weights);

// ==========================================================================
// polar identity checks
// ==========================================================================

struct PolarCheck {
  double direct = 0.0;   // Lebesgue-side integral
  double polar = 0.0;    // r-integral against the surface quadrature
  double exact = 0.0;    // closed-form reference value
  double rel_err_direct = 0.0;
  double rel_err_polar = 0.0;
};

// f = exp(-|x|^4), n=1 only: direct 3-D Gauss-Legendre vs polar form;
// exact value pi^2/2.
PolarCheck polar_check_gaussian(const GroupContext& ctx, const QuadratureRule& rule);
// f = indicator of the unit gauge ball: polar side vs mu(S)/Q (any n)
PolarCheck polar_check_ball(const GroupContext& ctx, const QuadratureRule& rule);

}  // namespace klab
