#pragma once
// Sharpness families: one-parameter test functions whose averaged mass decays
// with a predictable power of delta. Each family fixes an input indicator, a
// distribution of output points, and a witness radius t; the reported value
// is a low quantile of A_t f over the sampled outputs, so a single bad sample
// cannot fake a scaling law.

#include <cstdint>
#include <string>
#include <vector>

#include "klab/heisenberg.hpp"
#include "klab/rng.hpp"
#include "klab/smallmat.hpp"

namespace klab {

enum class FamilyKind { Ball, Annulus, Knapp, SingleShell };

const char* family_name(FamilyKind k);
FamilyKind family_from_name(const std::string& s);

struct Family {
  FamilyKind kind;
  int n;
  double t_param = 0.0;  // Annulus radius; 0 means the default 1.0
  // Predicted log2(value) vs log2(delta) slope.
  double predicted_slope() const;
  // Witness radius; Ball and SingleShell use the per-sample |x|_K instead.
  double fixed_t() const;
  // Default delta ladder for this group dimension.
  std::vector<double> default_deltas() const;
};

// Quadrature sizes; a1..a3 are the angular counts (theta for n=1, the
// chi/theta/psi chart for n=2).
struct FamilyCounts {
  long long n_phi = 0, n_a1 = 0, n_a2 = 0, n_a3 = 0;
};
FamilyCounts family_counts(const Family& fam, double delta);
FamilyCounts doubled_counts(const FamilyCounts& c);

struct FamilyEvalConfig {
  int samples = 200;
  double quantile = 0.10;
  std::uint64_t seed = 2026;
  bool parallel = true;
  bool doubling_guard = true;  // re-run one sample at doubled counts
};

struct FamilyEvalResult {
  double delta = 0.0;
  double value = 0.0;      // quantile of the per-sample averages
  double vmin = 0.0, vmax = 0.0;
  double guard_rel = 0.0;  // doubling-guard relative change on sample 0
  int samples = 0;
};

// Input indicator f_delta evaluated at a group point.
bool family_member(const Family& fam, double delta, const Vec& y);

// Draw one output point (and the witness t) for the family.
Vec family_sample_point(const GroupContext& ctx, const Family& fam, double delta,
                        Rng& rng, double* t_out);

// A_t f_delta at a single output point via windowed spherical quadrature.
double family_sample_value(const GroupContext& ctx, const Family& fam, double delta,
                           const Vec& x, double t, const FamilyCounts& counts);

// Quantile over the sampled outputs. Throws if the quadrature cannot resolve
// the support at this delta.
FamilyEvalResult evaluate_family_lower_bound(const GroupContext& ctx, const Family& fam,
                                             double delta, const FamilyEvalConfig& cfg);

// Least squares in log2-log2 coordinates.
struct ScalingFit {
  double slope = 0.0;
  double intercept = 0.0;
  double stderr_slope = 0.0;
};
ScalingFit fit_scaling(const std::vector<double>& deltas, const std::vector<double>& values);

struct ScalingExperiment {
  Family fam;
  std::vector<FamilyEvalResult> points;
  ScalingFit fit;
};
ScalingExperiment run_scaling(const GroupContext& ctx, const Family& fam,
                              const std::vector<double>& deltas, const FamilyEvalConfig& cfg);

}  // namespace klab
