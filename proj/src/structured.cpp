#include "klab/structured.hpp"

#include <cmath>

namespace klab {

RadialProfile RadialProfile::quartic() {
  RadialProfile p;
  p.u = [](double r) { return 0.5 * r * r * r * r; };
  p.du = [](double r) { return 2.0 * r * r * r; };
  p.ddu = [](double r) { return 6.0 * r * r; };
  return p;
}

Vec radial_grad(const RadialProfile& p, const Vec& w) {
  const double r = norm2(w);
  return vscale(p.du(r) / r, w);
}

Mat radial_hessian(const RadialProfile& p, const Vec& w) {
  const int d = static_cast<int>(w.size());
  const double r = norm2(w);
  const double a = p.du(r) / r;
  const double b = p.ddu(r) / (r * r) - p.du(r) / (r * r * r);
  Mat H = a * Mat::identity(d) + b * outer(w, w);
  return H;
}

double radial_hessian_det(const RadialProfile& p, const Vec& w) {
  const int d = static_cast<int>(w.size());
  const double r = norm2(w);
  return std::pow(p.du(r) / r, d - 1) * p.ddu(r);
}

double det_rank_one_update(double sigma, const Vec& w) { return 1.0 + sigma * dot(w, w); }

Mat structured_assemble(const StructuredMatrixParams& p) {
  const int d = static_cast<int>(p.w.size());
  const Vec Jw = matvec(*p.J, p.w);
  Mat M = p.sigma * Mat::identity(d) + p.lambda * outer(p.w, p.w) + p.kappa * (*p.J) +
          p.gamma * outer(p.w, Jw);
  return M;
}

Mat structured_inverse(const StructuredMatrixParams& p) {
  const int d = static_cast<int>(p.w.size());
  const Vec& w = p.w;
  const Vec Jw = matvec(*p.J, w);
  const double ww = dot(w, w);
  const double s2k2 = p.sigma * p.sigma + p.kappa * p.kappa;
  const double D = s2k2 + (p.sigma * p.lambda - p.gamma * p.kappa) * ww;
  const double c1 = (p.gamma * p.kappa - p.sigma * p.lambda) / D;
  const double c2 = (p.gamma * p.sigma + p.lambda * p.kappa) / D;
  Mat M = p.sigma * Mat::identity(d) - p.kappa * (*p.J) +
          c1 * (p.sigma * outer(w, w) - p.kappa * outer(Jw, w)) +
          c2 * ((-p.sigma) * outer(w, Jw) + p.kappa * outer(Jw, Jw));
  return (1.0 / s2k2) * M;
}

Vec structured_inverse_apply_w(const StructuredMatrixParams& p) {
  const double ww = dot(p.w, p.w);
  const double D = p.sigma * p.sigma + p.kappa * p.kappa +
                   (p.sigma * p.lambda - p.gamma * p.kappa) * ww;
  const Vec Jw = matvec(*p.J, p.w);
  Vec out(p.w.size());
  for (size_t i = 0; i < out.size(); ++i) out[i] = (p.sigma * p.w[i] - p.kappa * Jw[i]) / D;
  return out;
}

double f_envelope(double u) { return u * (148.0 - 32.0 * u) / (46.0 * u + 1.0); }

FBoundResult optimize_f_bound() {
  FBoundResult r;
  const double s95 = std::sqrt(95.0);
  r.u_star = 3.0 * s95 / 92.0 - 1.0 / 46.0;
  r.f_max = (2.0 / 529.0) * (859.0 - 12.0 * s95);
  r.slack = 3.0 - r.f_max;

  // golden-section on [0,4]; f is strictly concave there (f'' < 0)
  const double gr = (std::sqrt(5.0) - 1.0) / 2.0;
  double a = 0.0, b = 4.0;
  double c = b - gr * (b - a), d = a + gr * (b - a);
  double fc = f_envelope(c), fd = f_envelope(d);
  for (int it = 0; it < 200 && (b - a) > 1e-13; ++it) {
    if (fc > fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - gr * (b - a);
      fc = f_envelope(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + gr * (b - a);
      fd = f_envelope(d);
    }
  }
  r.numeric_u = 0.5 * (a + b);
  r.numeric_max = f_envelope(r.numeric_u);
  return r;
}

}  // namespace klab
