#pragma once
// Deterministic summation over product quadrature grids. The sum is organized
// as a nested pairwise tree, one level per grid dimension, whose shape depends
// only on the per-dimension sizes. Index windows prune subtrees that cannot
// meet the integrand's support; a pruned subtree contributes exactly 0.0,
// which is bit-identical to pairwise-summing its all-zero terms, so windowed
// and full evaluations agree bitwise as long as the windows are conservative.

#include <array>
#include <functional>
#include <vector>

#include "klab/smallmat.hpp"

namespace klab {

struct DimSpec {
  Vec coord;
  Vec weight;
  // Allowed index intervals [lo, hi), in increasing order; empty means all
  // indices are allowed. Terms outside must evaluate to zero for pruning to be
  // exact.
  std::vector<std::array<long long, 2>> allow;

  long long size() const { return static_cast<long long>(weight.size()); }
};

// Clamp [lo, hi) to [0, n) and append if nonempty.
void add_interval(std::vector<std::array<long long, 2>>* allow, long long lo, long long hi,
                  long long n);

using TermFn = std::function<double(const std::vector<int>& idx)>;

// Sum of (prod_d weight[d][idx_d]) * term(idx) over the full index product.
// With parallel=true the outermost dimension is distributed across OpenMP
// threads; the reduction tree is identical either way.
double nested_windowed_sum(const std::vector<DimSpec>& dims, const TermFn& term, bool parallel);

}  // namespace klab
