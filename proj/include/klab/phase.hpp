#pragma once
// Local phase functions for the sphere S = {F = 0}. Each phase writes the
// incidence relation in graph form over a different coordinate patch and
// exposes Phi together with its analytic gradient Xi = grad_{(x,t)} Phi.
// Xi vectors have length 2n+2, laid out [d/du_1 .. d/du_{2n}, d/dxbar, d/dt].

#include <memory>

#include "klab/heisenberg.hpp"
#include "klab/sphere.hpp"

namespace klab {

class Phase {
 public:
  explicit Phase(GroupContext ctx) : ctx_(std::move(ctx)) {}
  virtual ~Phase() = default;
  virtual double value(const Vec& x, double t, const Vec& y) const = 0;
  virtual Vec Xi(const Vec& x, double t, const Vec& y) const = 0;
  virtual const char* name() const = 0;
  const GroupContext& ctx() const { return ctx_; }

 protected:
  GroupContext ctx_;
};

// ==========================================================================
// Phi = ybar * G with G = xbar + 1/2 ux^T J uy + t^2 (1 - S),
// S = sqrt(1 - |v|^4 / t^4). Graph over the vertical coordinate, valid away
// from the equator.
// ==========================================================================
class PhaseNearPole : public Phase {
 public:
  using Phase::Phase;
  double value(const Vec& x, double t, const Vec& y) const override;
  Vec Xi(const Vec& x, double t, const Vec& y) const override;
  const char* name() const override { return "np"; }
};

// ==========================================================================
// Phi = ybar * Hbar, Hbar = xbar + 1/2 ux^T J uy + sigma sqrt(t^4 - |v|^4).
// Same patch as near-pole but with the vertical branch carried explicitly.
// ==========================================================================
class PhaseIntermediate : public Phase {
 public:
  PhaseIntermediate(GroupContext ctx, int sigma) : Phase(std::move(ctx)), sigma_(sigma) {}
  double value(const Vec& x, double t, const Vec& y) const override;
  Vec Xi(const Vec& x, double t, const Vec& y) const override;
  const char* name() const override { return "im"; }
  int sigma() const { return sigma_; }

 private:
  int sigma_;
};

// ==========================================================================
// Phi = y1 * H1(x,t,y',ybar), H1 solved by Newton on F = 0 with the branch
// carried by the stored seed. Graph over the first horizontal coordinate,
// valid near the equator where the vertical graph degenerates.
// ==========================================================================
class PhaseEquator : public Phase {
 public:
  PhaseEquator(GroupContext ctx, double seed) : Phase(std::move(ctx)), seed_(seed) {}
  double value(const Vec& x, double t, const Vec& y) const override;
  Vec Xi(const Vec& x, double t, const Vec& y) const override;
  const char* name() const override { return "eq"; }
  double solve(const Vec& x, double t, const Vec& y) const;

 private:
  double seed_;
};

// ==========================================================================
// Rescaled near-pole family: Phi_l = ybar (xbar + 1/2 ux^T J uy + t^2 g_l(w)),
// w = (2^{-2l} ux - uy)/t, g_l(w) = 2^{4l}(1 - sqrt(1 - 2^{-4l}|w|^4)) kept in
// the cancellation-free form |w|^4 / (1 + sqrt(1 - 2^{-4l}|w|^4)).
// ==========================================================================
class PhaseRescaled : public Phase {
 public:
  PhaseRescaled(GroupContext ctx, int ell) : Phase(std::move(ctx)), ell_(ell) {}
  double value(const Vec& x, double t, const Vec& y) const override;
  Vec Xi(const Vec& x, double t, const Vec& y) const override;
  const char* name() const override { return "npl"; }
  int ell() const { return ell_; }
  double g(const Vec& w) const;
  Vec grad_g(const Vec& w) const;

 private:
  int ell_;
};

// Phase through the sampled surface point, chosen by region. For the
// intermediate patch the vertical branch is picked by residual against y.
std::unique_ptr<Phase> make_phase(const GroupContext& ctx, RegionLabel region, const Vec& x,
                                  double t, const Vec& y);

}  // namespace klab
