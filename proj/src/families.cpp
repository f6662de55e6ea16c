#include "klab/families.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "klab/sphere.hpp"
#include "klab/sumrule.hpp"

namespace klab {
namespace {

constexpr double kPi = 3.14159265358979323846;

// ==========================================================================
// quadrature tables
// ==========================================================================
// Nodes in the polar angle phi with rho^2 = sin(phi), so obar = +-cos(phi)
// exactly; the measure contributes sin^{n-1}(phi) which is folded into the
// per-dimension weights. Angular charts: theta on the circle for n=1, the
// (chi, theta, psi) chart of S^3 for n=2.
// ==========================================================================

struct FamilyQuad {
  Vec phi, wphi;      // effective weights, sin factor included
  Vec a1, wa1;
  Vec a2, wa2;
  Vec a3, wa3;
  double pad_phi = 0.0, pad_a1 = 0.0, pad_a2 = 0.0;  // max consecutive spacing
};

double max_spacing(const Vec& v) {
  double m = 0.0;
  for (size_t i = 1; i < v.size(); ++i) m = std::max(m, std::abs(v[i] - v[i - 1]));
  return m;
}

FamilyQuad build_quad(int n, const FamilyCounts& c) {
  FamilyQuad q;
  gauss_legendre(static_cast<int>(c.n_phi), 0.0, 0.5 * kPi, &q.phi, &q.wphi);
  if (n == 2) {
    for (long long i = 0; i < c.n_phi; ++i) q.wphi[i] *= std::sin(q.phi[i]);
    gauss_legendre(static_cast<int>(c.n_a1), 0.0, kPi, &q.a1, &q.wa1);
    for (long long i = 0; i < c.n_a1; ++i) {
      double s = std::sin(q.a1[i]);
      q.wa1[i] *= s * s;
    }
    gauss_legendre(static_cast<int>(c.n_a2), 0.0, kPi, &q.a2, &q.wa2);
    for (long long i = 0; i < c.n_a2; ++i) q.wa2[i] *= std::sin(q.a2[i]);
    q.a3.resize(c.n_a3);
    q.wa3.assign(c.n_a3, 2.0 * kPi / static_cast<double>(c.n_a3));
    for (long long i = 0; i < c.n_a3; ++i) q.a3[i] = 2.0 * kPi * static_cast<double>(i) / static_cast<double>(c.n_a3);
    q.pad_a1 = max_spacing(q.a1);
    q.pad_a2 = max_spacing(q.a2);
  } else {
    q.a1.resize(c.n_a1);
    q.wa1.assign(c.n_a1, 2.0 * kPi / static_cast<double>(c.n_a1));
    for (long long i = 0; i < c.n_a1; ++i) q.a1[i] = 2.0 * kPi * static_cast<double>(i) / static_cast<double>(c.n_a1);
  }
  q.pad_phi = max_spacing(q.phi);
  return q;
}

// Index interval of nodes whose coordinate lies in [lo - pad, hi + pad];
// coords must be monotone. {{0,0}} encodes "no index admissible", which the
// engine prunes entirely (distinct from an empty allow list, which means
// everything is admissible).
std::vector<std::array<long long, 2>> mono_window(const Vec& coord, double lo, double hi,
                                                  double pad) {
  const double a = lo - pad, b = hi + pad;
  long long first = -1, last = -1;
  for (long long i = 0; i < static_cast<long long>(coord.size()); ++i) {
    if (coord[i] >= a && coord[i] <= b) {
      if (first < 0) first = i;
      last = i;
    }
  }
  if (first < 0) return {{0, 0}};
  return {{first, last + 1}};
}

// Window on the uniform circle grid, inflated one node each side; handles
// wrap-around, so up to two intervals. Empty result means all indices.
std::vector<std::array<long long, 2>> circle_window(long long N, double center, double half) {
  if (!(half < kPi)) return {};
  const double step = 2.0 * kPi / static_cast<double>(N);
  double c = std::fmod(center, 2.0 * kPi);
  if (c < 0) c += 2.0 * kPi;
  long long k0 = static_cast<long long>(std::floor((c - half) / step)) - 1;
  long long k1 = static_cast<long long>(std::ceil((c + half) / step)) + 1;
  if (k1 - k0 + 1 >= N) return {};
  long long lo = ((k0 % N) + N) % N;
  long long hi = ((k1 % N) + N) % N;
  if (lo <= hi) return {{lo, hi + 1}};
  return {{0, hi + 1}, {lo, N}};
}

struct Windows {
  // [0]: hemisphere obar > 0, [1]: obar < 0.
  std::vector<std::array<long long, 2>> phi[2];
  std::vector<std::array<long long, 2>> a1, a2, a3;
};

double horizontal_radius(const Family& fam, double delta) {
  return fam.kind == FamilyKind::Knapp ? std::pow(delta, 0.25) : delta;
}

// Conservative support windows for the input indicator seen from output x at
// radius t. Members satisfy |uy| <= Rh and |ybar| <= delta, with
// uy = ux - t rho u and ybar = xbar - t^2 obar - (t rho / 2) ux^T J u; the
// shear term is bounded by |ux| Rh / 2 since ux^T J ux = 0.
Windows make_windows(const GroupContext& ctx, const Family& fam, double delta, const Vec& x,
                     double t, const FamilyQuad& q, const FamilyCounts& c) {
  Windows w;
  if (fam.kind == FamilyKind::Annulus) return w;  // support is the whole sphere

  const int hd = ctx.hdim();
  double a2sum = 0.0;
  for (int i = 0; i < hd; ++i) a2sum += x[i] * x[i];
  const double a = std::sqrt(a2sum);
  const double xb = x[hd];
  const double Rh = horizontal_radius(fam, delta);
  const double V = delta;

  const double rlo = std::max(0.0, (a - Rh) / t);
  const double rhi = std::min(1.0, (a + Rh) / t);
  const double shear = 0.5 * a * Rh;
  const double olo = (xb - V - shear) / (t * t);
  const double ohi = (xb + V + shear) / (t * t);

  for (int hs = 0; hs < 2; ++hs) {
    double clo = hs == 0 ? olo : -ohi;
    double chi = hs == 0 ? ohi : -olo;
    clo = std::max(clo, 0.0);
    chi = std::min(chi, 1.0);
    if (clo > chi || rlo > rhi) {
      w.phi[hs] = {{0, 0}};
      continue;
    }
    const double flo_c = std::acos(chi);
    const double fhi_c = std::acos(clo);
    const double flo_s = std::asin(std::min(1.0, rlo * rlo));
    const double fhi_s = std::asin(std::min(1.0, rhi * rhi));
    const double flo = std::max(flo_c, flo_s);
    const double fhi = std::min(fhi_c, fhi_s);
    if (flo > fhi) {
      w.phi[hs] = {{0, 0}};
      continue;
    }
    w.phi[hs] = mono_window(q.phi, flo, fhi, q.pad_phi);
  }

  if (Rh < a) {
    // Direction of u confined to a cap of opening asin(Rh/a) around ux/a.
    const double cap = std::asin(std::min(1.0, Rh / a));
    if (ctx.n == 1) {
      w.a1 = circle_window(c.n_a1, std::atan2(x[1], x[0]), cap);
    } else {
      // Chart windows on S^3: nesting the spherical triangle inequality,
      // 1 - cos d_sub <= (1 - cos d) / (sin chi sin chi*), each level valid
      // while the sines stay away from 0.
      double uh[4];
      for (int i = 0; i < 4; ++i) uh[i] = x[i] / a;
      const double chis = std::acos(std::clamp(uh[0], -1.0, 1.0));
      const double wlo = std::max(0.0, chis - cap), whi = std::min(kPi, chis + cap);
      w.a1 = mono_window(q.a1, wlo, whi, q.pad_a1);
      const double ss = std::sin(chis);
      const double slo = std::min(std::sin(wlo), std::sin(whi));
      if (ss > 1e-9 && slo > 1e-9) {
        const double omc2 = (1.0 - std::cos(cap)) / (slo * ss);
        if (omc2 < 2.0) {
          const double d2 = std::acos(1.0 - omc2);
          const double ths = std::acos(std::clamp(uh[1] / ss, -1.0, 1.0));
          const double tlo = std::max(0.0, ths - d2), thi = std::min(kPi, ths + d2);
          w.a2 = mono_window(q.a2, tlo, thi, q.pad_a2);
          const double st = std::sin(ths);
          const double stlo = std::min(std::sin(tlo), std::sin(thi));
          if (st > 1e-9 && stlo > 1e-9) {
            const double omc1 = (1.0 - std::cos(d2)) / (stlo * st);
            if (omc1 < 2.0) w.a3 = circle_window(c.n_a3, std::atan2(uh[3], uh[2]), std::acos(1.0 - omc1));
          }
        }
      }
    }
  }
  return w;
}

// ==========================================================================
// resolution guards
// ==========================================================================
// The grid must resolve the thinnest dimension of the support: node spacing
// below a quarter of the constraint width in each relevant coordinate. All
// spacings are measured from the actual node tables, not the nominal counts.
// ==========================================================================

void check_resolution(const Family& fam, double delta, const FamilyQuad& q,
                      const FamilyCounts& c) {
  if (fam.kind == FamilyKind::Annulus) return;  // doubling guard covers it
  const int n = fam.n;
  const double Rh = horizontal_radius(fam, delta);
  double t_max;
  switch (fam.kind) {
    case FamilyKind::Ball: t_max = 2.0; break;
    case FamilyKind::SingleShell: t_max = 1.0 + delta; break;
    default: t_max = fam.fixed_t(); break;
  }
  double a_max;
  switch (fam.kind) {
    case FamilyKind::Ball: a_max = 2.0; break;
    case FamilyKind::SingleShell: a_max = 1.0 + delta; break;
    default: a_max = std::sqrt(2.0 * n) * std::pow(delta, 0.75) / 4.0; break;
  }

  const double horiz_need = Rh / 4.0;
  const double vert_need = delta / (4.0 * t_max * t_max);

  double max_drho = 0.0;
  for (size_t i = 1; i < q.phi.size(); ++i) {
    max_drho = std::max(max_drho, std::abs(std::sqrt(std::sin(q.phi[i])) -
                                           std::sqrt(std::sin(q.phi[i - 1]))));
  }
  auto fail = [&](const char* what, double have, double need) {
    throw std::runtime_error(std::string("quadrature too coarse for delta: ") + what +
                             " spacing " + std::to_string(have) + " >= " +
                             std::to_string(need) + " (" + family_name(fam.kind) + ")");
  };
  if (max_drho * t_max >= horiz_need) fail("radial", max_drho * t_max, horiz_need);

  double ang_step;
  if (n == 1) {
    ang_step = 2.0 * kPi / static_cast<double>(c.n_a1);
  } else {
    ang_step = std::max({q.pad_a1, q.pad_a2, 2.0 * kPi / static_cast<double>(c.n_a3)});
  }
  const double arc = (a_max + Rh) * ang_step;
  if (arc >= horiz_need) fail("transverse", arc, horiz_need);

  // Vertical spacing, only where support can live: everywhere for the ball
  // and shell families, the polar cap for Knapp.
  const double sin_cap = fam.kind == FamilyKind::Knapp
                             ? std::min(1.0, 1.2 * std::pow((a_max + Rh) / t_max, 2.0))
                             : 1.0;
  double max_dcos = 0.0;
  for (size_t i = 1; i < q.phi.size(); ++i) {
    if (std::min(std::sin(q.phi[i]), std::sin(q.phi[i - 1])) > sin_cap) continue;
    max_dcos = std::max(max_dcos, std::abs(std::cos(q.phi[i]) - std::cos(q.phi[i - 1])));
  }
  if (max_dcos >= vert_need) fail("vertical", max_dcos, vert_need);
}

double eval_with_quad(const GroupContext& ctx, const Family& fam, double delta, const Vec& x,
                      double t, const FamilyQuad& q, const FamilyCounts& c) {
  const int n = ctx.n;
  const int hd = 2 * n;
  Windows win = make_windows(ctx, fam, delta, x, t, q, c);

  double total = 0.0;
  for (int hs = 0; hs < 2; ++hs) {
    const double hemi = hs == 0 ? 1.0 : -1.0;
    std::vector<DimSpec> dims;
    dims.push_back({q.phi, q.wphi, win.phi[hs]});
    dims.push_back({q.a1, q.wa1, win.a1});
    if (n == 2) {
      dims.push_back({q.a2, q.wa2, win.a2});
      dims.push_back({q.a3, q.wa3, win.a3});
    }
    TermFn term = [&](const std::vector<int>& idx) -> double {
      const double phi = q.phi[idx[0]];
      const double rho = std::sqrt(std::sin(phi));
      double u[4];
      if (n == 1) {
        u[0] = std::cos(q.a1[idx[1]]);
        u[1] = std::sin(q.a1[idx[1]]);
      } else {
        const double chi = q.a1[idx[1]], th = q.a2[idx[2]], ps = q.a3[idx[3]];
        const double schi = std::sin(chi), sth = std::sin(th);
        u[0] = std::cos(chi);
        u[1] = schi * std::cos(th);
        u[2] = schi * sth * std::cos(ps);
        u[3] = schi * sth * std::sin(ps);
      }
      const double tr = t * rho;
      double uy2 = 0.0;
      for (int i = 0; i < hd; ++i) {
        const double d = x[i] - tr * u[i];
        uy2 += d * d;
      }
      double symp = 0.0;
      for (int i = 0; i < hd; ++i) {
        double ji = 0.0;
        for (int j = 0; j < hd; ++j) ji += ctx.J(i, j) * u[j];
        symp += x[i] * ji;
      }
      const double yb = x[hd] - t * t * hemi * std::cos(phi) - 0.5 * tr * symp;

      bool member;
      switch (fam.kind) {
        case FamilyKind::Ball:
        case FamilyKind::SingleShell:
          member = uy2 + yb * yb <= delta * delta;
          break;
        case FamilyKind::Knapp:
          member = uy2 <= std::sqrt(delta) && std::abs(yb) <= delta;
          break;
        default: {
          const double kn = std::pow(uy2 * uy2 + yb * yb, 0.25);
          member = std::abs(kn - fam.fixed_t()) <= 2.0 * delta;
          break;
        }
      }
      return member ? 1.0 : 0.0;
    };
    total += nested_windowed_sum(dims, term, /*parallel=*/false);
  }
  return total;
}

}  // namespace

const char* family_name(FamilyKind k) {
  switch (k) {
    case FamilyKind::Ball: return "ball";
    case FamilyKind::Annulus: return "annulus";
    case FamilyKind::Knapp: return "knapp";
    default: return "single_shell";
  }
}

FamilyKind family_from_name(const std::string& s) {
  if (s == "ball") return FamilyKind::Ball;
  if (s == "annulus") return FamilyKind::Annulus;
  if (s == "knapp") return FamilyKind::Knapp;
  if (s == "single_shell" || s == "shell") return FamilyKind::SingleShell;
  throw std::invalid_argument("unknown family: " + s);
}

double Family::predicted_slope() const {
  switch (kind) {
    case FamilyKind::Ball: return 2.0 * n;
    case FamilyKind::Annulus: return 0.0;
    case FamilyKind::Knapp: return 0.5 * n;
    default: return 2.0 * n;
  }
}

double Family::fixed_t() const {
  switch (kind) {
    case FamilyKind::Ball:
    case FamilyKind::SingleShell: return 0.0;  // per-sample |x|_K
    case FamilyKind::Knapp: return 1.5;
    default: return t_param > 0.0 ? t_param : 1.0;
  }
}

std::vector<double> Family::default_deltas() const {
  std::vector<double> d;
  const int kmax = n == 1 ? 9 : 6;
  for (int k = 3; k <= kmax; ++k) d.push_back(std::ldexp(1.0, -k));
  return d;
}

FamilyCounts family_counts(const Family& fam, double delta) {
  FamilyCounts c;
  const int n = fam.n;
  switch (fam.kind) {
    case FamilyKind::Ball:
    case FamilyKind::SingleShell:
      c.n_phi = static_cast<long long>(std::ceil((fam.kind == FamilyKind::Ball ? 48.0 : 20.0) / delta));
      if (n == 1) {
        c.n_a1 = static_cast<long long>(std::ceil(32.0 * kPi / delta));
      } else {
        c.n_a1 = c.n_a2 = static_cast<long long>(std::ceil(8.0 * kPi / delta));
        c.n_a3 = static_cast<long long>(std::ceil(20.0 * kPi / delta));
      }
      break;
    case FamilyKind::Knapp:
      c.n_phi = std::max<long long>(512, static_cast<long long>(std::ceil(64.0 / std::sqrt(delta))));
      if (n == 1) {
        c.n_a1 = 512;
      } else {
        c.n_a1 = 32;
        c.n_a2 = 32;
        c.n_a3 = 64;
      }
      break;
    default:
      if (n == 1) {
        c.n_phi = 256;
        c.n_a1 = 256;
      } else {
        c.n_phi = 128;
        c.n_a1 = 24;
        c.n_a2 = 24;
        c.n_a3 = 48;
      }
      break;
  }
  return c;
}

FamilyCounts doubled_counts(const FamilyCounts& c) {
  return {2 * c.n_phi, 2 * c.n_a1, c.n_a2 > 0 ? 2 * c.n_a2 : 0, c.n_a3 > 0 ? 2 * c.n_a3 : 0};
}

bool family_member(const Family& fam, double delta, const Vec& y) {
  const int hd = 2 * fam.n;
  double uy2 = 0.0;
  for (int i = 0; i < hd; ++i) uy2 += y[i] * y[i];
  const double yb = y[hd];
  switch (fam.kind) {
    case FamilyKind::Ball:
    case FamilyKind::SingleShell:
      return uy2 + yb * yb <= delta * delta;
    case FamilyKind::Knapp:
      return uy2 <= std::sqrt(delta) && std::abs(yb) <= delta;
    default:
      return std::abs(std::pow(uy2 * uy2 + yb * yb, 0.25) - fam.fixed_t()) <= 2.0 * delta;
  }
}

Vec family_sample_point(const GroupContext& ctx, const Family& fam, double delta, Rng& rng,
                        double* t_out) {
  const int d = ctx.dim();
  const int hd = ctx.hdim();
  Vec x(d, 0.0);
  switch (fam.kind) {
    case FamilyKind::Ball: {
      for (int it = 0; it < 1000000; ++it) {
        for (int i = 0; i < d; ++i) x[i] = rng.uniform(-2.0, 2.0);
        const double kn = koranyi_norm(ctx, x);
        if (kn >= 1.0 && kn <= 2.0) {
          *t_out = kn;
          return x;
        }
      }
      throw std::runtime_error("ball output sampler failed");
    }
    case FamilyKind::SingleShell: {
      for (int it = 0; it < 100000000; ++it) {
        for (int i = 0; i < d; ++i) x[i] = rng.uniform(-1.2, 1.2);
        const double kn = koranyi_norm(ctx, x);
        if (std::abs(kn - 1.0) <= delta) {
          // witness radius through the input ball; sup_t A_t >= A_{|x|_K}
          *t_out = kn;
          return x;
        }
      }
      throw std::runtime_error("shell output sampler failed");
    }
    case FamilyKind::Annulus: {
      for (int it = 0; it < 1000000; ++it) {
        double s = 0.0;
        for (int i = 0; i < hd; ++i) {
          x[i] = rng.uniform(-0.5 * delta, 0.5 * delta);
          s += x[i] * x[i];
        }
        if (s <= 0.25 * delta * delta) break;
      }
      x[hd] = rng.uniform(-0.5 * delta, 0.5 * delta);
      *t_out = 1.0;
      return x;
    }
    default: {
      const double t = fam.fixed_t();
      const double hw = std::pow(delta, 0.75) / 4.0;
      for (int i = 0; i < hd; ++i) x[i] = rng.uniform(-hw, hw);
      x[hd] = t * t + rng.uniform(-0.25 * delta, 0.25 * delta);
      *t_out = t;
      return x;
    }
  }
}

double family_sample_value(const GroupContext& ctx, const Family& fam, double delta, const Vec& x,
                           double t, const FamilyCounts& counts) {
  FamilyQuad quad = build_quad(ctx.n, counts);
  return eval_with_quad(ctx, fam, delta, x, t, quad, counts);
}

FamilyEvalResult evaluate_family_lower_bound(const GroupContext& ctx, const Family& fam,
                                             double delta, const FamilyEvalConfig& cfg) {
  if (fam.n != ctx.n) throw std::invalid_argument("family/context dimension mismatch");
  const FamilyCounts counts = family_counts(fam, delta);
  const FamilyQuad quad = build_quad(ctx.n, counts);
  check_resolution(fam, delta, quad, counts);

  std::vector<double> vals(cfg.samples, 0.0);
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic) if (cfg.parallel)
#endif
  for (int s = 0; s < cfg.samples; ++s) {
    Rng rng = Rng::for_index(cfg.seed, static_cast<std::uint64_t>(s));
    double t = 0.0;
    Vec x = family_sample_point(ctx, fam, delta, rng, &t);
    vals[s] = eval_with_quad(ctx, fam, delta, x, t, quad, counts);
  }

  FamilyEvalResult r;
  r.delta = delta;
  r.samples = cfg.samples;
  if (cfg.doubling_guard) {
    Rng rng = Rng::for_index(cfg.seed, 0);
    double t = 0.0;
    Vec x = family_sample_point(ctx, fam, delta, rng, &t);
    const FamilyCounts c2 = doubled_counts(counts);
    const FamilyQuad q2 = build_quad(ctx.n, c2);
    const double v2 = eval_with_quad(ctx, fam, delta, x, t, q2, c2);
    const double v1 = vals[0];
    r.guard_rel = std::abs(v2 - v1) / std::max({std::abs(v1), std::abs(v2), 1e-300});
    if (r.guard_rel > 0.05) {
      throw std::runtime_error("quadrature too coarse for delta: doubling changed sample 0 by " +
                               std::to_string(r.guard_rel) + " (" + family_name(fam.kind) + ")");
    }
  }

  std::vector<double> sorted = vals;
  std::sort(sorted.begin(), sorted.end());
  const int k = static_cast<int>(std::floor(cfg.quantile * (cfg.samples - 1) + 1e-9));
  r.value = sorted[k];
  r.vmin = sorted.front();
  r.vmax = sorted.back();
  return r;
}

ScalingFit fit_scaling(const std::vector<double>& deltas, const std::vector<double>& values) {
  const size_t m = deltas.size();
  if (m != values.size() || m < 2) throw std::invalid_argument("fit_scaling: need >= 2 points");
  std::vector<double> xs(m), ys(m);
  for (size_t i = 0; i < m; ++i) {
    if (!(values[i] > 0.0)) throw std::runtime_error("fit_scaling: nonpositive value at delta " + std::to_string(deltas[i]));
    xs[i] = std::log2(deltas[i]);
    ys[i] = std::log2(values[i]);
  }
  double mx = 0.0, my = 0.0;
  for (size_t i = 0; i < m; ++i) { mx += xs[i]; my += ys[i]; }
  mx /= static_cast<double>(m);
  my /= static_cast<double>(m);
  double sxx = 0.0, sxy = 0.0;
  for (size_t i = 0; i < m; ++i) {
    sxx += (xs[i] - mx) * (xs[i] - mx);
    sxy += (xs[i] - mx) * (ys[i] - my);
  }
  ScalingFit f;
  f.slope = sxy / sxx;
  f.intercept = my - f.slope * mx;
  if (m > 2) {
    double ss = 0.0;
    for (size_t i = 0; i < m; ++i) {
      const double r = ys[i] - (f.intercept + f.slope * xs[i]);
      ss += r * r;
    }
    f.stderr_slope = std::sqrt(ss / static_cast<double>(m - 2) / sxx);
  }
  return f;
}

ScalingExperiment run_scaling(const GroupContext& ctx, const Family& fam,
                              const std::vector<double>& deltas, const FamilyEvalConfig& cfg) {
  ScalingExperiment ex;
  ex.fam = fam;
  std::vector<double> vals;
  for (double d : deltas) {
    ex.points.push_back(evaluate_family_lower_bound(ctx, fam, d, cfg));
    vals.push_back(ex.points.back().value);
  }
  ex.fit = fit_scaling(deltas, vals);
  return ex;
}

}  // namespace klab
