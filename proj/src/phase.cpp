#include "klab/phase.hpp"

#include <cmath>
#include <stdexcept>

namespace klab {

namespace {

double dist2(const Vec& x, const Vec& y, int h) {
  double vv = 0.0;
  for (int i = 0; i < h; ++i) {
    const double d = x[i] - y[i];
    vv += d * d;
  }
  return vv;
}

Vec Juy_of(const GroupContext& ctx, const Vec& y) {
  const int h = ctx.hdim();
  Vec r(h, 0.0);
  for (int i = 0; i < h; ++i)
    for (int j = 0; j < h; ++j) r[i] += ctx.J(i, j) * y[j];
  return r;
}

}  // namespace

// ==========================================================================
// near pole
// ==========================================================================

double PhaseNearPole::value(const Vec& x, double t, const Vec& y) const {
  const int h = ctx_.hdim();
  const double vv = dist2(x, y, h);
  const double S = std::sqrt(1.0 - vv * vv / (t * t * t * t));
  const double G = x[h] + 0.5 * ctx_.symp(x, y) + t * t * (1.0 - S);
  return y[h] * G;
}

Vec PhaseNearPole::Xi(const Vec& x, double t, const Vec& y) const {
  const int h = ctx_.hdim();
  const double vv = dist2(x, y, h);
  const double S = std::sqrt(1.0 - vv * vv / (t * t * t * t));
  const Vec Juy = Juy_of(ctx_, y);
  Vec out(h + 2);
  for (int i = 0; i < h; ++i)
    out[i] = y[h] * (0.5 * Juy[i] + 2.0 * vv * (x[i] - y[i]) / (t * t * S));
  out[h] = y[h];
  out[h + 1] = y[h] * (2.0 * t * (1.0 - S) - 2.0 * vv * vv / (t * t * t * S));
  return out;
}

// ==========================================================================
// intermediate
// ==========================================================================

double PhaseIntermediate::value(const Vec& x, double t, const Vec& y) const {
  return y[ctx_.hdim()] * solve_Hbar(ctx_, x, t, Vec(y.begin(), y.begin() + ctx_.hdim()), sigma_);
}

Vec PhaseIntermediate::Xi(const Vec& x, double t, const Vec& y) const {
  const int h = ctx_.hdim();
  const double vv = dist2(x, y, h);
  const double W = std::sqrt(t * t * t * t - vv * vv);
  const Vec Juy = Juy_of(ctx_, y);
  Vec out(h + 2);
  for (int i = 0; i < h; ++i)
    out[i] = y[h] * (0.5 * Juy[i] - sigma_ * 2.0 * vv * (x[i] - y[i]) / W);
  out[h] = y[h];
  out[h + 1] = y[h] * sigma_ * 2.0 * t * t * t / W;
  return out;
}

// ==========================================================================
// equator
// ==========================================================================

double PhaseEquator::solve(const Vec& x, double t, const Vec& y) const {
  const int h = ctx_.hdim();
  bool ok = false;
  const double h1 = solve_H1(ctx_, x, t, Vec(y.begin() + 1, y.begin() + h), y[h], seed_, &ok);
  if (!ok) throw std::runtime_error("PhaseEquator: H1 newton failed");
  return h1;
}

double PhaseEquator::value(const Vec& x, double t, const Vec& y) const {
  return y[0] * solve(x, t, y);
}

Vec PhaseEquator::Xi(const Vec& x, double t, const Vec& y) const {
  // implicit differentiation on the solution branch:
  // Xi = -y1 / (dF/dy1) * grad_{(x,t)} F at ys = (H1, y', ybar)
  const int h = ctx_.hdim();
  Vec ys = y;
  ys[0] = solve(x, t, y);
  const Vec g = grad_F_xt(ctx_, x, t, ys);
  const double df = dF_dy1(ctx_, x, t, ys);
  Vec out(h + 2);
  for (int i = 0; i < h + 2; ++i) out[i] = -y[0] / df * g[i];
  return out;
}

// ==========================================================================
// rescaled near pole
// ==========================================================================

double PhaseRescaled::g(const Vec& w) const {
  const double a = std::pow(2.0, -4.0 * ell_);
  const double ww = dot(w, w);
  return ww * ww / (1.0 + std::sqrt(1.0 - a * ww * ww));
}

Vec PhaseRescaled::grad_g(const Vec& w) const {
  const double a = std::pow(2.0, -4.0 * ell_);
  const double ww = dot(w, w);
  const double root = std::sqrt(1.0 - a * ww * ww);
  return vscale(2.0 * ww / root, w);
}

double PhaseRescaled::value(const Vec& x, double t, const Vec& y) const {
  const int h = ctx_.hdim();
  const double sc = std::pow(2.0, -2.0 * ell_);
  Vec w(h);
  for (int i = 0; i < h; ++i) w[i] = (sc * x[i] - y[i]) / t;
  return y[h] * (x[h] + 0.5 * ctx_.symp(x, y) + t * t * g(w));
}

Vec PhaseRescaled::Xi(const Vec& x, double t, const Vec& y) const {
  const int h = ctx_.hdim();
  const double sc = std::pow(2.0, -2.0 * ell_);
  Vec w(h);
  for (int i = 0; i < h; ++i) w[i] = (sc * x[i] - y[i]) / t;
  const Vec gg = grad_g(w);
  const Vec Juy = Juy_of(ctx_, y);
  Vec out(h + 2);
  for (int i = 0; i < h; ++i) out[i] = y[h] * (0.5 * Juy[i] + sc * t * gg[i]);
  out[h] = y[h];
  out[h + 1] = y[h] * (2.0 * t * g(w) - t * dot(gg, w));
  return out;
}

// ==========================================================================
// factory
// ==========================================================================

std::unique_ptr<Phase> make_phase(const GroupContext& ctx, RegionLabel region, const Vec& x,
                                  double t, const Vec& y) {
  switch (region) {
    case RegionLabel::NearPole:
      return std::make_unique<PhaseNearPole>(ctx);
    case RegionLabel::Intermediate: {
      const Vec uy(y.begin(), y.begin() + ctx.hdim());
      for (int sg : {+1, -1})
        if (std::abs(solve_Hbar(ctx, x, t, uy, sg) - y[ctx.hdim()]) < 1e-8)
          return std::make_unique<PhaseIntermediate>(ctx, sg);
      throw std::runtime_error("make_phase: no vertical branch through point");
    }
    case RegionLabel::Equator:
      return std::make_unique<PhaseEquator>(ctx, y[0]);
  }
  throw std::invalid_argument("make_phase: bad region");
}

}  // namespace klab
