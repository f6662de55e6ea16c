#include "klab/sumrule.hpp"

#include <algorithm>

namespace klab {

void add_interval(std::vector<std::array<long long, 2>>* allow, long long lo, long long hi,
                  long long n) {
  lo = std::max(lo, 0LL);
  hi = std::min(hi, n);
  if (lo < hi) allow->push_back({lo, hi});
}

namespace {

bool range_allowed(const DimSpec& ds, long long a, long long b) {
  if (ds.allow.empty()) return true;
  for (const auto& iv : ds.allow)
    if (iv[0] < b && a < iv[1]) return true;
  return false;
}

struct Walker {
  const std::vector<DimSpec>& dims;
  const TermFn& term;
  std::vector<int> idx;

  double over_range(int d, double w, long long a, long long b) {
    if (!range_allowed(dims[d], a, b)) return 0.0;
    if (b - a == 1) {
      idx[d] = static_cast<int>(a);
      const double wd = w * dims[d].weight[a];
      if (d + 1 == static_cast<int>(dims.size())) return wd * term(idx);
      return over_range(d + 1, wd, 0, dims[d + 1].size());
    }
    const long long m = a + (b - a) / 2;
    return over_range(d, w, a, m) + over_range(d, w, m, b);
  }
};

}  // namespace

double nested_windowed_sum(const std::vector<DimSpec>& dims, const TermFn& term, bool parallel) {
  if (dims.empty()) return 0.0;
  for (const auto& ds : dims)
    if (ds.size() == 0) return 0.0;
  const long long n0 = dims[0].size();
  if (!parallel) {
    Walker w{dims, term, std::vector<int>(dims.size(), 0)};
    return w.over_range(0, 1.0, 0, n0);
  }
  // Leaves of the outermost tree level computed in parallel, then reduced in
  // the same fixed order the serial recursion would use.
  Vec partial(static_cast<size_t>(n0), 0.0);
#pragma omp parallel
  {
    Walker w{dims, term, std::vector<int>(dims.size(), 0)};
#pragma omp for schedule(dynamic, 1)
    for (long long i = 0; i < n0; ++i) {
      if (!range_allowed(dims[0], i, i + 1)) continue;
      w.idx[0] = static_cast<int>(i);
      const double wd = dims[0].weight[i];
      partial[i] = dims.size() == 1 ? wd * term(w.idx)
                                    : w.over_range(1, wd, 0, dims[1].size());
    }
  }
  return pairwise_sum(partial);
}

}  // namespace klab
