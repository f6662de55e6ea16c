#include "klab/sphere.hpp"

#include <cmath>
#include <stdexcept>

namespace klab {

Vec sphere_embed(const GroupContext& ctx, const SpherePoint& p) {
  const int h = ctx.hdim();
  Vec omega(ctx.dim());
  for (int i = 0; i < h; ++i) omega[i] = p.rho * p.u[i];
  const double r4 = p.rho * p.rho * p.rho * p.rho;
  omega[h] = p.hemi * std::sqrt(std::max(0.0, 1.0 - r4));
  return omega;
}

SpherePoint sphere_param(const GroupContext& ctx, const Vec& omega) {
  const int h = ctx.hdim();
  SpherePoint p;
  double uu = 0.0;
  for (int i = 0; i < h; ++i) uu += omega[i] * omega[i];
  p.rho = std::sqrt(uu);
  p.u.assign(h, 0.0);
  if (p.rho > 0.0)
    for (int i = 0; i < h; ++i) p.u[i] = omega[i] / p.rho;
  else
    p.u[0] = 1.0;  // direction is immaterial at the pole
  p.hemi = omega[h] >= 0.0 ? 1 : -1;
  return p;
}

// ==========================================================================
// defining function and graph solvers
// ==========================================================================

namespace {

// B = xbar - ybar + 1/2 ux^T J uy
double central_B(const GroupContext& ctx, const Vec& x, const Vec& y) {
  return x[ctx.hdim()] - y[ctx.hdim()] + 0.5 * ctx.symp(x, y);
}

double horiz_dist2(const GroupContext& ctx, const Vec& x, const Vec& y) {
  double vv = 0.0;
  for (int i = 0; i < ctx.hdim(); ++i) {
    const double d = x[i] - y[i];
    vv += d * d;
  }
  return vv;
}

}  // namespace

double defining_F(const GroupContext& ctx, const Vec& x, double t, const Vec& y) {
  const double vv = horiz_dist2(ctx, x, y);
  const double B = central_B(ctx, x, y);
  return vv * vv + B * B - t * t * t * t;
}

Vec grad_F_xt(const GroupContext& ctx, const Vec& x, double t, const Vec& y) {
  const int h = ctx.hdim();
  const double vv = horiz_dist2(ctx, x, y);
  const double B = central_B(ctx, x, y);
  Vec g(h + 2);
  const Vec Juy = matvec(ctx.J, Vec(y.begin(), y.begin() + h));
  for (int i = 0; i < h; ++i) g[i] = 4.0 * vv * (x[i] - y[i]) + B * Juy[i];
  g[h] = 2.0 * B;
  g[h + 1] = -4.0 * t * t * t;
  return g;
}

double dF_dy1(const GroupContext& ctx, const Vec& x, double t, const Vec& y) {
  (void)t;
  const int h = ctx.hdim();
  const double vv = horiz_dist2(ctx, x, y);
  const double B = central_B(ctx, x, y);
  // d/dy1 of 1/2 ux^T J uy = 1/2 ux^T J e1
  double xJe1 = 0.0;
  for (int i = 0; i < h; ++i) xJe1 += x[i] * ctx.J(i, 0);
  return -4.0 * vv * (x[0] - y[0]) + B * xJe1;
}

double dF_dybar(const GroupContext& ctx, const Vec& x, double t, const Vec& y) {
  (void)t;
  return -2.0 * central_B(ctx, x, y);
}

double graph_G(const GroupContext& ctx, const Vec& x, double t, const Vec& uy) {
  const int h = ctx.hdim();
  double shear = 0.0;
  for (int i = 0; i < h; ++i) {
    double r = 0.0;
    for (int j = 0; j < h; ++j) r += ctx.J(i, j) * uy[j];
    shear += x[i] * r;
  }
  return x[h] + 0.5 * shear + graph_G_remainder(ctx, x, t, uy);
}

double graph_G_remainder(const GroupContext& ctx, const Vec& x, double t, const Vec& uy) {
  const int h = ctx.hdim();
  double vv = 0.0;
  for (int i = 0; i < h; ++i) {
    const double d = x[i] - uy[i];
    vv += d * d;
  }
  const double t2 = t * t;
  const double q = vv * vv / (t2 * t2);
  if (q > 1.0) throw std::domain_error("graph_G: point outside the graph chart");
  // t^2 (1 - sqrt(1-q)) = t^2 q / (1 + sqrt(1-q)), no cancellation for small q
  return t2 * q / (1.0 + std::sqrt(1.0 - q));
}

double solve_H1(const GroupContext& ctx, const Vec& x, double t, const Vec& yprime,
                double ybar, double seed, bool* ok) {
  const int h = ctx.hdim();
  Vec y(ctx.dim());
  for (int i = 1; i < h; ++i) y[i] = yprime[i - 1];
  y[h] = ybar;
  double s = seed;
  const double tol = 1e-13 * std::max(1.0, t * t * t * t);
  for (int it = 0; it < 60; ++it) {
    y[0] = s;
    const double f = defining_F(ctx, x, t, y);
    if (std::abs(f) < tol) {
      if (ok) *ok = true;
      return s;
    }
    const double df = dF_dy1(ctx, x, t, y);
    s -= f / df;
  }
  y[0] = s;
  const bool good = std::abs(defining_F(ctx, x, t, y)) <= 1e-10;
  if (ok) *ok = good;
  return good ? s : std::nan("");
}

double solve_Hbar(const GroupContext& ctx, const Vec& x, double t, const Vec& uy, int sigma) {
  const int h = ctx.hdim();
  double vv = 0.0;
  for (int i = 0; i < h; ++i) {
    const double d = x[i] - uy[i];
    vv += d * d;
  }
  const double r = t * t * t * t - vv * vv;
  if (r < 0.0) throw std::domain_error("solve_Hbar: horizontal distance exceeds t");
  double shear = 0.0;
  for (int i = 0; i < h; ++i) {
    double acc = 0.0;
    for (int j = 0; j < h; ++j) acc += ctx.J(i, j) * uy[j];
    shear += x[i] * acc;
  }
  return x[h] + 0.5 * shear + sigma * std::sqrt(r);
}

// ==========================================================================
// classification
// ==========================================================================

const char* region_name(RegionLabel label) {
  switch (label) {
    case RegionLabel::NearPole: return "np";
    case RegionLabel::Equator: return "eq";
    case RegionLabel::Intermediate: return "im";
  }
  return "?";
}

Mat align_rotation(const GroupContext& ctx, const Vec& u) {
  // Build a complex-orthonormal frame {b_k, J b_k} with b_1 = u/|u| and map it
  // onto the analogous frame anchored at e1. The result is orthogonal,
  // commutes with J, and sends u to |u| e1.
  const int h = ctx.hdim();
  const int n = ctx.n;
  auto complex_gs = [&](const Vec& anchor) {
    std::vector<Vec> basis;
    basis.push_back(vscale(1.0 / norm2(anchor), anchor));
    for (int cand = 0; cand < h && static_cast<int>(basis.size()) < n; ++cand) {
      Vec c(h, 0.0);
      c[cand] = 1.0;
      for (int pass = 0; pass < 2; ++pass) {
        for (const Vec& b : basis) {
          const Vec Jb = matvec(ctx.J, b);
          const double cr = dot(b, c), ci = dot(Jb, c);
          for (int i = 0; i < h; ++i) c[i] -= cr * b[i] + ci * Jb[i];
        }
      }
      const double nrm = norm2(c);
      if (nrm > 0.3) basis.push_back(vscale(1.0 / nrm, c));
    }
    if (static_cast<int>(basis.size()) != n)
      throw std::runtime_error("align_rotation: frame completion failed");
    return basis;
  };
  Vec e1(h, 0.0);
  e1[0] = 1.0;
  const auto src = complex_gs(u);
  const auto dst = complex_gs(e1);
  Mat R(h, h);
  for (int k = 0; k < n; ++k) {
    const Vec Js = matvec(ctx.J, src[k]);
    const Vec Jd = matvec(ctx.J, dst[k]);
    for (int i = 0; i < h; ++i)
      for (int j = 0; j < h; ++j)
        R(i, j) += dst[k][i] * src[k][j] + Jd[i] * Js[j];
  }
  return R;
}

Region classify_region(const GroupContext& ctx, const Vec& omega, const ClassifyParams& params) {
  const int h = ctx.hdim();
  double uu = 0.0;
  for (int i = 0; i < h; ++i) uu += omega[i] * omega[i];
  const double rho = std::sqrt(uu);
  Region r;
  if (rho <= params.theta_pole) {
    r.label = RegionLabel::NearPole;
    r.rot = Mat::identity(h);
  } else if (std::abs(omega[h]) <= params.theta_eq) {
    r.label = RegionLabel::Equator;
    r.rot = Mat::identity(h);
  } else {
    r.label = RegionLabel::Intermediate;
    Vec u(omega.begin(), omega.begin() + h);
    r.rot = align_rotation(ctx, u);
  }
  return r;
}

// ==========================================================================
// quadrature
// ==========================================================================

void gauss_legendre(int n, double a, double b, Vec* nodes, Vec* weights) {
  nodes->assign(n, 0.0);
  weights->assign(n, 0.0);
  const double pi = 3.14159265358979323846;
  for (int i = 0; i < n; ++i) {
    double x = std::cos(pi * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = x;
      for (int k = 2; k <= n; ++k) {
        const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      dp = n * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-15) break;
    }
    (*nodes)[i] = 0.5 * (b - a) * x + 0.5 * (a + b);
    (*weights)[i] = (b - a) / ((1.0 - x * x) * dp * dp);
  }
}

double sphere_mass_exact(int n) {
  const double pi = 3.14159265358979323846;
  if (n == 1) return 2.0 * pi * pi;
  if (n == 2) return 4.0 * pi * pi;
  throw std::invalid_argument("sphere_mass_exact: only n in {1,2}");
}

QuadratureRule build_quadrature(const GroupContext& ctx, int n_rho, int n_sph) {
  const int n = ctx.n;
  if (n != 1 && n != 2) throw std::invalid_argument("build_quadrature: only n in {1,2}");
  const double pi = 3.14159265358979323846;
  QuadratureRule rule;
  rule.n_rho = n_rho;
  rule.n_sph = n_sph;

  Vec phi, wphi;
  gauss_legendre(n_rho, 0.0, 0.5 * pi, &phi, &wphi);

  if (n == 1) {
    rule.nodes.reserve(static_cast<size_t>(2) * n_rho * n_sph);
    const double wtheta = 2.0 * pi / n_sph;
    for (int hemi = 1; hemi >= -1; hemi -= 2) {
      for (int i = 0; i < n_rho; ++i) {
        const double rho = std::sqrt(std::sin(phi[i]));
        const double wr = wphi[i];  // sin^{n-1} = 1
        for (int j = 0; j < n_sph; ++j) {
          const double th = wtheta * j;
          QuadratureRule::Node nd;
          nd.p.rho = rho;
          nd.p.u = {std::cos(th), std::sin(th)};
          nd.p.hemi = hemi;
          nd.w = wr * wtheta;
          rule.nodes.push_back(std::move(nd));
        }
      }
    }
    return rule;
  }

  // n == 2: chart u = (cos chi, sin chi cos th, sin chi sin th cos psi,
  // sin chi sin th sin psi), d sigma = sin^2 chi sin th dchi dth dpsi
  const int n_chi = std::max(8, n_sph / 4);
  const int n_th = std::max(8, n_sph / 4);
  const int n_psi = std::max(8, n_sph);
  Vec chi, wchi, th, wth;
  gauss_legendre(n_chi, 0.0, pi, &chi, &wchi);
  gauss_legendre(n_th, 0.0, pi, &th, &wth);
  const double wpsi = 2.0 * pi / n_psi;
  rule.nodes.reserve(static_cast<size_t>(2) * n_rho * n_chi * n_th * n_psi);
  for (int hemi = 1; hemi >= -1; hemi -= 2) {
    for (int i = 0; i < n_rho; ++i) {
      const double rho = std::sqrt(std::sin(phi[i]));
      const double wr = wphi[i] * std::sin(phi[i]);  // sin^{n-1} phi, n=2
      for (int a = 0; a < n_chi; ++a) {
        const double sc = std::sin(chi[a]), cc = std::cos(chi[a]);
        for (int b = 0; b < n_th; ++b) {
          const double st = std::sin(th[b]), ct = std::cos(th[b]);
          for (int c = 0; c < n_psi; ++c) {
            const double ps = wpsi * c;
            QuadratureRule::Node nd;
            nd.p.rho = rho;
            nd.p.u = {cc, sc * ct, sc * st * std::cos(ps), sc * st * std::sin(ps)};
            nd.p.hemi = hemi;
            nd.w = wr * wchi[a] * sc * sc * wth[b] * st * wpsi;
            rule.nodes.push_back(std::move(nd));
          }
        }
      }
    }
  }
  return rule;
}

double quadrature_mass(const QuadratureRule& rule) {
  Vec w(rule.nodes.size());
  for (size_t i = 0; i < w.size(); ++i) w[i] = rule.nodes[i].w;
  return pairwise_sum(w);
}

// ==========================================================================
// polar identity
// ==========================================================================

PolarCheck polar_check_gaussian(const GroupContext& ctx, const QuadratureRule& rule) {
  if (ctx.n != 1) throw std::invalid_argument("polar_check_gaussian: n=1 only");
  const double pi = 3.14159265358979323846;
  PolarCheck out;
  out.exact = 0.5 * pi * pi;

  // direct: 8 x positive octant, Gauss-Legendre per axis
  const int N = 48;
  const double L = 3.2;
  Vec xs, ws;
  gauss_legendre(N, 0.0, L, &xs, &ws);
  double direct = 0.0;
  for (int i = 0; i < N; ++i)
    for (int j = 0; j < N; ++j) {
      const double uu = xs[i] * xs[i] + xs[j] * xs[j];
      const double wij = ws[i] * ws[j];
      for (int k = 0; k < N; ++k) {
        const double g4 = uu * uu + xs[k] * xs[k];
        direct += wij * ws[k] * std::exp(-g4);
      }
    }
  out.direct = 8.0 * direct;

  // polar: mass * int_0^inf e^{-r^4} r^{Q-1} dr, Q = 4
  const int NR = 200;
  Vec rs, wr;
  gauss_legendre(NR, 0.0, 4.0, &rs, &wr);
  double radial = 0.0;
  for (int i = 0; i < NR; ++i)
    radial += wr[i] * std::exp(-std::pow(rs[i], 4)) * std::pow(rs[i], 3);
  out.polar = quadrature_mass(rule) * radial;

  out.rel_err_direct = std::abs(out.direct - out.exact) / out.exact;
  out.rel_err_polar = std::abs(out.polar - out.exact) / out.exact;
  return out;
}

PolarCheck polar_check_ball(const GroupContext& ctx, const QuadratureRule& rule) {
  const int Q = 2 * ctx.n + 2;
  PolarCheck out;
  out.exact = sphere_mass_exact(ctx.n) / Q;
  const int NR = 32;
  Vec rs, wr;
  gauss_legendre(NR, 0.0, 1.0, &rs, &wr);
  double radial = 0.0;
  for (int i = 0; i < NR; ++i) radial += wr[i] * std::pow(rs[i], Q - 1);
  out.polar = quadrature_mass(rule) * radial;
  out.direct = out.exact;  // Lebesgue volume of the unit gauge ball, by definition of mu
  out.rel_err_direct = 0.0;
  out.rel_err_polar = std::abs(out.polar - out.exact) / out.exact;
  return out;
}

}  // namespace klab
