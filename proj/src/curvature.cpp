#include "klab/curvature.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace klab {

// ==========================================================================
// finite differences
// ==========================================================================

Mat fd_mixed_hessian(const Phase& ph, const Vec& x, double t, const Vec& y) {
  const int d = static_cast<int>(y.size());
  Mat M(d + 1, d);
  const double eps13 = std::cbrt(std::numeric_limits<double>::epsilon());
  for (int j = 0; j < d; ++j) {
    const double h = eps13 * std::max(1.0, std::abs(y[j]));
    Vec cols[2];
    int k = 0;
    for (double hh : {h, h / 2.0}) {
      Vec yp = y, ym = y;
      yp[j] += hh;
      ym[j] -= hh;
      const Vec Xp = ph.Xi(x, t, yp), Xm = ph.Xi(x, t, ym);
      Vec c(d + 1);
      for (int i = 0; i <= d; ++i) c[i] = (Xp[i] - Xm[i]) / (2.0 * hh);
      cols[k++] = std::move(c);
    }
    for (int i = 0; i <= d; ++i) M(i, j) = (4.0 * cols[1][i] - cols[0][i]) / 3.0;
  }
  return M;
}

Mat spatial_block(const Mat& M) {
  Mat S(M.nr - 1, M.nc);
  for (int i = 0; i + 1 < M.nr; ++i)
    for (int j = 0; j < M.nc; ++j) S(i, j) = M(i, j);
  return S;
}

NormalResult surface_normal(const Mat& M) {
  NormalResult out;
  const Svd svd = jacobi_svd(M);
  out.sv = svd.s;
  Vec N = left_null_vector(svd.U);
  const int last = static_cast<int>(N.size()) - 1;
  bool flip = N[last] < 0.0;
  if (N[last] == 0.0) {
    for (int i = 0; i <= last; ++i)
      if (N[i] != 0.0) {
        flip = N[i] < 0.0;
        break;
      }
  }
  if (flip)
    for (double& v : N) v = -v;
  out.N = std::move(N);
  return out;
}

Mat fd_cinematic(const Phase& ph, const Vec& x, double t, const Vec& y, const Vec& N) {
  const int d = static_cast<int>(y.size());
  auto s = [&](const Vec& yy) { return dot(N, ph.Xi(x, t, yy)); };
  const double s0 = s(y);
  const double eps14 = std::pow(std::numeric_limits<double>::epsilon(), 0.25);
  Mat C(d, d);
  for (int i = 0; i < d; ++i) {
    const double hi = eps14 * std::max(1.0, std::abs(y[i]));
    for (int j = i; j < d; ++j) {
      const double hj = eps14 * std::max(1.0, std::abs(y[j]));
      auto D = [&](double f1, double f2) {
        if (i == j) {
          Vec yp = y, ym = y;
          yp[i] += f1;
          ym[i] -= f1;
          return (s(yp) - 2.0 * s0 + s(ym)) / (f1 * f1);
        }
        Vec pp = y, pm = y, mp = y, mm = y;
        pp[i] += f1; pp[j] += f2;
        pm[i] += f1; pm[j] -= f2;
        mp[i] -= f1; mp[j] += f2;
        mm[i] -= f1; mm[j] -= f2;
        return (s(pp) - s(pm) - s(mp) + s(mm)) / (4.0 * f1 * f2);
      };
      const double d1 = D(hi, hj), d2 = D(hi / 2.0, hj / 2.0);
      C(i, j) = C(j, i) = (4.0 * d2 - d1) / 3.0;
    }
  }
  return C;
}

int curvature_rank(const Vec& sv) { return rank_of(sv, 1e-6, 1e-6); }

// ==========================================================================
// per-sample report
// ==========================================================================

CurvatureReport curvature_report(const GroupContext& ctx, RegionLabel region, const Vec& x,
                                 double t, const Vec& y) {
  CurvatureReport rep;
  rep.region = region;
  const auto ph = make_phase(ctx, region, x, t, y);
  const Mat M = fd_mixed_hessian(*ph, x, t, y);
  const Mat S = spatial_block(M);
  rep.det_spatial = lu_det(S);
  rep.sv_spatial = singular_values(S);
  rep.rank_spatial = curvature_rank(rep.sv_spatial);
  const NormalResult nr = surface_normal(M);
  rep.normal = nr.N;
  const Mat C = fd_cinematic(*ph, x, t, y, nr.N);
  rep.sv_cinematic = singular_values(C);
  rep.rank_cinematic = curvature_rank(rep.sv_cinematic);
  return rep;
}

// ==========================================================================
// sampling
// ==========================================================================

Vec sample_region_omega(Rng& rng, const GroupContext& ctx, RegionLabel region) {
  const int h = ctx.hdim();
  for (;;) {
    const Vec u = rng.unit_vector(h);
    double rho;
    if (region == RegionLabel::NearPole) {
      rho = rng.uniform(0.05, 0.35);
    } else if (region == RegionLabel::Equator) {
      rho = rng.uniform(0.992, 1.0);
      if (std::abs(u[0]) < 0.55) continue;
    } else {
      rho = rng.uniform(0.4, 0.95);
    }
    const double sg = rng.pick_sign();
    const double obar = sg * std::sqrt(std::max(0.0, 1.0 - rho * rho * rho * rho));
    if (region == RegionLabel::Equator && std::abs(obar) > 0.2) continue;
    if (region == RegionLabel::Intermediate && (std::abs(obar) < 0.25 || rho < 0.35)) continue;
    Vec w(ctx.dim());
    for (int i = 0; i < h; ++i) w[i] = rho * u[i];
    w[h] = obar;
    return w;
  }
}

Vec surface_point(const GroupContext& ctx, const Vec& x, double t, const Vec& omega) {
  return group_mul(ctx, x, dilate(ctx, t, vscale(-1.0, omega)));
}

// ==========================================================================
// closed displays
// ==========================================================================

Mat equator_display_closed(const GroupContext& ctx, double t, double h1, double ybar) {
  (void)t;
  const int h = ctx.hdim();
  const int d = ctx.dim();
  const double ay = h1 * h1;  // |uy|^2 with uy = h1 e1
  Mat closed(d, d);
  // top block: diag(h1,1,..,1) (4 ay I - ybar J)
  for (int i = 0; i < h; ++i) {
    const double row_scale = (i == 0) ? h1 : 1.0;
    for (int j = 0; j < h; ++j)
      closed(i, j) = row_scale * (4.0 * ay * (i == j ? 1.0 : 0.0) - ybar * ctx.J(i, j));
  }
  closed(0, h) = 2.0 * ybar;
  // bottom row: -(ybar/(2 ay h1))(12 ay e1 + ybar J e1) + J uy
  for (int j = 0; j < h; ++j) {
    const double e1j = (j == 0) ? 1.0 : 0.0;
    closed(h, j) = -(ybar / (2.0 * ay * h1)) * (12.0 * ay * e1j + ybar * ctx.J(j, 0)) +
                   ctx.J(j, 0) * h1;
  }
  closed(h, h) = 2.0;
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) closed(i, j) /= 4.0 * ay;
  return closed;
}

Mat equator_display_from_fd(const GroupContext& ctx, double t, double h1, double ybar,
                            const Mat& S) {
  const int h = ctx.hdim();
  const int d = ctx.dim();
  const Vec x0(d, 0.0);
  Vec ys(d, 0.0);
  ys[0] = h1;
  ys[h] = ybar;
  const double dfy1 = dF_dy1(ctx, x0, t, ys);
  // d(dF/dy1)/dybar along the solution branch, centered step
  auto on_branch = [&](double yb) {
    bool ok = false;
    const double s = solve_H1(ctx, x0, t, Vec(h - 1, 0.0), yb, h1, &ok);
    if (!ok) throw std::runtime_error("equator_display_from_fd: branch solve failed");
    Vec yy(d, 0.0);
    yy[0] = s;
    yy[h] = yb;
    return dF_dy1(ctx, x0, t, yy);
  };
  const double hstep = 1e-6;
  const double sbar = (on_branch(ybar + hstep) - on_branch(ybar - hstep)) / (2.0 * hstep);
  Mat R(d, d);
  for (int j = 0; j < d; ++j)
    for (int c = 0; c < d; ++c) R(j, c) = S(c, j);
  for (int c = 0; c < d; ++c) R(0, c) *= h1;
  for (int c = 0; c < d; ++c) R(h, c) += (h1 * sbar / dfy1) * S(c, 0);
  return R;
}

Mat intermediate_display_closed(const GroupContext& ctx, const Vec& uy, double Hb, double ybar) {
  const int h = ctx.hdim();
  const int d = ctx.dim();
  const double ay = dot(uy, uy);
  const Vec Juy = matvec(ctx.J, uy);
  Mat closed(d, d);
  for (int i = 0; i < h; ++i)
    for (int j = 0; j < h; ++j)
      closed(i, j) = 4.0 * uy[i] * uy[j] + 2.0 * ay * (i == j ? 1.0 : 0.0) -
                     0.5 * Hb * ctx.J(i, j) - (ay / Hb) * uy[i] * Juy[j];
  for (int i = 0; i < h; ++i) closed(i, h) = -(2.0 * ay / Hb) * uy[i];
  for (int j = 0; j < h; ++j) closed(h, j) = (2.0 * ay * uy[j] + 0.5 * Hb * Juy[j]) / Hb;
  closed(h, h) = 1.0;
  const double scale = ybar / Hb;
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) closed(i, j) *= scale;
  return closed;
}

Mat intermediate_display_from_fd(const GroupContext& ctx, const Vec& uy, double t, double Hb,
                                 double ybar, const Mat& S) {
  const int h = ctx.hdim();
  const int d = ctx.dim();
  const Vec x0(d, 0.0);
  Vec y(uy);
  y.push_back(Hb);
  const double dfb = dF_dybar(ctx, x0, t, y);
  auto on_branch = [&](const Vec& uyy) {
    const double hb = solve_Hbar(ctx, x0, t, uyy, +1);
    Vec yy(uyy);
    yy.push_back(hb);
    return dF_dybar(ctx, x0, t, yy);
  };
  const double hstep = 1e-6;
  Mat R(d, d);
  for (int j = 0; j < d; ++j)
    for (int c = 0; c < d; ++c) R(j, c) = S(c, j);
  for (int j = 0; j < h; ++j) {
    Vec up = uy, um = uy;
    up[j] += hstep;
    um[j] -= hstep;
    const double sj = (on_branch(up) - on_branch(um)) / (2.0 * hstep);
    for (int c = 0; c < d; ++c) R(j, c) += (ybar * sj / dfb) * S(c, h);
  }
  return R;
}

// ==========================================================================
// cinematic patterns
// ==========================================================================

Mat equator_cinematic_closed(const GroupContext& ctx, double t, const Vec& N) {
  const int h = ctx.hdim();
  const int d = ctx.dim();
  const double T = -(1.0 / t) * (4.0 * t * t * t * N[h + 1]);
  Mat P(d, d);
  for (int j = 1; j < h; ++j) P(j, j) = -1.0;
  for (int j = 1; j < h; ++j) {
    const double c = ctx.J(0, j) / (4.0 * t);
    P(j, h) = P(h, j) = c;
  }
  P(h, h) = -1.5 / (t * t);
  const double scale = T / (4.0 * t * t * t);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) P(i, j) *= scale;
  return P;
}

ImCinematicClosed intermediate_cinematic_closed(const GroupContext& ctx, double t, double y1,
                                                double Hb, double ybar, const Vec& N) {
  (void)t;
  const int h = ctx.hdim();
  const int d = ctx.dim();
  const double ay2 = y1 * y1 * y1 * y1;
  const double H2 = Hb * Hb;
  ImCinematicClosed out;
  out.lam = (16.0 * ay2 + H2) / (46.0 * ay2 + H2);
  out.D = (12.0 * ay2 / (46.0 * ay2 + H2)) * (7.0 - 8.0 * ay2 / H2) - 3.0;
  out.pref = 2.0 * N[h] * ybar * y1 * y1 / H2;
  // Brow = -(8 y1/Hb)((Hb^2+ay2)/(46 ay2+Hb^2)) uy^T J with uy = y1 e1
  Vec Brow(h, 0.0);
  const double bcoef = -(8.0 * y1 / Hb) * ((H2 + ay2) / (46.0 * ay2 + H2));
  for (int j = 0; j < h; ++j) Brow[j] = bcoef * y1 * ctx.J(0, j);
  out.C = Mat(d, d);
  out.C(0, 0) = out.D;
  for (int j = 1; j < h; ++j) {
    out.C(0, j) = out.C(j, 0) = Brow[j];
    out.C(j, j) = -out.lam;
  }
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) out.C(i, j) *= out.pref;
  out.schur_quant = std::abs(out.D + dot(Brow, Brow) / out.lam);
  return out;
}

double intermediate_schur_quant(double y1, double Hb) {
  const double ay2 = y1 * y1 * y1 * y1;
  const double H2 = Hb * Hb;
  const double lam = (16.0 * ay2 + H2) / (46.0 * ay2 + H2);
  const double D = (12.0 * ay2 / (46.0 * ay2 + H2)) * (7.0 - 8.0 * ay2 / H2) - 3.0;
  const double Bmag = (8.0 * y1 * y1 / std::abs(Hb)) * ((H2 + ay2) / (46.0 * ay2 + H2));
  return std::abs(D + Bmag * Bmag / lam);
}

Mat rescaled_cinematic_analytic(const GroupContext& ctx, int ell, const Vec& x, double t,
                                const Vec& y, const Vec& N) {
  const int h = ctx.hdim();
  const int d = ctx.dim();
  const double a = std::pow(2.0, -4.0 * ell);
  const double sc = std::pow(2.0, -2.0 * ell);
  Vec w(h);
  for (int i = 0; i < h; ++i) w[i] = (sc * x[i] - y[i]) / t;
  const double s = dot(w, w);
  const double q = std::sqrt(1.0 - a * s * s);
  // radial profile in s = |w|^2: G = (1 - q)/a = s^2/(1+q), all derivatives
  // cancellation-free
  const double Gp = s / q;
  const double Gpp = 1.0 / (q * q * q);
  const double Gppp = 3.0 * a * s / std::pow(q, 5);
  Vec grad(h);
  for (int i = 0; i < h; ++i) grad[i] = 2.0 * Gp * w[i];
  Mat gpp(h, h);
  for (int i = 0; i < h; ++i)
    for (int j = 0; j < h; ++j)
      gpp(i, j) = 2.0 * Gp * (i == j ? 1.0 : 0.0) + 4.0 * Gpp * w[i] * w[j];
  auto T3 = [&](int c, int i, int j) {
    const double dij = i == j ? 1.0 : 0.0;
    const double djc = j == c ? 1.0 : 0.0;
    const double dic = i == c ? 1.0 : 0.0;
    return 4.0 * Gpp * (w[c] * dij + w[i] * djc + w[j] * dic) +
           8.0 * Gppp * w[c] * w[i] * w[j];
  };
  const double ybar = y[h];
  const double at = N[h + 1];
  Mat C(d, d);
  for (int i = 0; i < h; ++i) {
    for (int j = i; j < h; ++j) {
      double ua_term = 0.0, t3w = 0.0;
      for (int c = 0; c < h; ++c) {
        const double T = T3(c, i, j);
        ua_term += N[c] * T;
        t3w += T * w[c];
      }
      C(i, j) = C(j, i) = ua_term * ybar * sc / t + at * (-(ybar / t) * t3w);
    }
    double mixed = 0.0;
    for (int c = 0; c < h; ++c) mixed += N[c] * (0.5 * ctx.J(c, i) - sc * gpp(c, i));
    double gw = 0.0;
    for (int c = 0; c < h; ++c) gw += gpp(i, c) * w[c];
    C(i, h) = C(h, i) = mixed + at * (gw - grad[i]);
  }
  return C;
}

double rescaled_deviation_maxabs(const GroupContext& ctx, int ell, const Vec& x, double t,
                                 const Vec& y, const Vec& N, const Mat& C) {
  const int h = ctx.hdim();
  const double sc = std::pow(2.0, -2.0 * ell);
  Vec w(h);
  for (int i = 0; i < h; ++i) w[i] = (sc * x[i] - y[i]) / t;
  const double ww = dot(w, w);
  const double ybar = y[h];
  double mx = 0.0;
  for (int i = 0; i < h; ++i)
    for (int j = 0; j < h; ++j) {
      const double lim = 2.0 * ww * (i == j ? 1.0 : 0.0) + 4.0 * w[i] * w[j];
      const double dev = (t / ybar) * C(i, j) + 2.0 * N[h + 1] * lim;
      mx = std::max(mx, std::abs(dev));
    }
  return mx;
}

double pole_rotational_det(const GroupContext& ctx, double t) {
  return std::pow(t * t / 2.0, 2.0 * ctx.n);
}

// ==========================================================================
// translation invariance
// ==========================================================================

TranslationCheck translation_check(const GroupContext& ctx, RegionLabel region, const Vec& x,
                                   double t, const Vec& omega) {
  const int h = ctx.hdim();
  const Vec y = surface_point(ctx, x, t, omega);
  const auto ph = make_phase(ctx, region, x, t, y);
  const Mat M0 = fd_mixed_hessian(*ph, x, t, y);
  const Mat S0 = spatial_block(M0);
  TranslationCheck out;
  out.det_base = lu_det(S0);
  out.rank_base = curvature_rank(singular_values(S0));

  // move the geometry to the origin, keep the multiplier slot from y
  const Vec z = theta_raw(ctx, x, y);  // = delta_t(omega)
  const Vec x0(ctx.dim(), 0.0);
  Vec yg = z;
  std::unique_ptr<Phase> phg;
  if (region == RegionLabel::Equator) {
    yg[0] = y[0];
    phg = std::make_unique<PhaseEquator>(ctx, z[0]);
  } else {
    yg[h] = y[h];
    if (region == RegionLabel::Intermediate)
      phg = std::make_unique<PhaseIntermediate>(ctx, z[h] > 0.0 ? +1 : -1);
    else
      phg = std::make_unique<PhaseNearPole>(ctx);
  }
  const Mat Mg = fd_mixed_hessian(*phg, x0, t, yg);
  const Mat Sg = spatial_block(Mg);
  out.det_geo = lu_det(Sg);
  out.rank_geo = curvature_rank(singular_values(Sg));
  out.rel_diff = std::abs(std::abs(out.det_geo) - std::abs(out.det_base)) /
                 std::abs(out.det_base);

  const NormalResult n0 = surface_normal(M0);
  out.crank_base = curvature_rank(singular_values(fd_cinematic(*ph, x, t, y, n0.N)));
  const NormalResult ng = surface_normal(Mg);
  out.crank_geo = curvature_rank(singular_values(fd_cinematic(*phg, x0, t, yg, ng.N)));
  return out;
}

}  // namespace klab
