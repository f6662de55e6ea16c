#include "klab/grid.hpp"

#include <cassert>
#include <cmath>
#include <stdexcept>

namespace klab {

double Box::volume() const {
  double v = 1.0;
  for (int d = 0; d < dims(); ++d) v *= hi[d] - lo[d];
  return v;
}

GridFunction::GridFunction(Box box, std::vector<int> shape, Vec data)
    : box_(std::move(box)), shape_(std::move(shape)), data_(std::move(data)) {
  const int d = box_.dims();
  assert(static_cast<int>(shape_.size()) == d);
  stride_.assign(d, 1);
  size_t total = 1;
  for (int k = d - 1; k >= 0; --k) {
    assert(shape_[k] >= 2);
    stride_[k] = total;
    total *= shape_[k];
  }
  assert(data_.size() == total);
}

GridFunction GridFunction::sample(const Box& box, const std::vector<int>& shape,
                                  const PointFunc& f) {
  const int d = box.dims();
  size_t total = 1;
  for (int k = 0; k < d; ++k) total *= shape[k];
  Vec data(total);
  Vec x(d);
  std::vector<int> idx(d, 0);
  for (size_t flat = 0; flat < total; ++flat) {
    size_t rem = flat;
    for (int k = d - 1; k >= 0; --k) {
      idx[k] = static_cast<int>(rem % shape[k]);
      rem /= shape[k];
    }
    for (int k = 0; k < d; ++k)
      x[k] = box.lo[k] + (box.hi[k] - box.lo[k]) * idx[k] / (shape[k] - 1);
    data[flat] = f(x);
  }
  return GridFunction(box, shape, std::move(data));
}

double GridFunction::eval(const Vec& x) const {
  const int d = box_.dims();
  std::vector<int> base(d);
  Vec frac(d);
  for (int k = 0; k < d; ++k) {
    if (x[k] < box_.lo[k] || x[k] > box_.hi[k]) return 0.0;
    const double u = (x[k] - box_.lo[k]) / (box_.hi[k] - box_.lo[k]) * (shape_[k] - 1);
    int b = static_cast<int>(std::floor(u));
    if (b > shape_[k] - 2) b = shape_[k] - 2;
    base[k] = b;
    frac[k] = u - b;
  }
  double acc = 0.0;
  const int corners = 1 << d;
  for (int c = 0; c < corners; ++c) {
    double w = 1.0;
    size_t flat = 0;
    for (int k = 0; k < d; ++k) {
      const int bit = (c >> k) & 1;
      w *= bit ? frac[k] : 1.0 - frac[k];
      flat += stride_[k] * (base[k] + bit);
    }
    acc += w * data_[flat];
  }
  return acc;
}

Vec time_grid_65() {
  Vec t(65);
  for (int k = 0; k <= 64; ++k) t[k] = 1.0 + k / 64.0;
  return t;
}

Vec time_grid_dyadic(int jmin, int jmax) {
  Vec t;
  t.reserve(static_cast<size_t>(jmax - jmin + 1) * 64);
  for (int j = jmin; j <= jmax; ++j) {
    const double s = std::ldexp(1.0, j);
    for (int k = 0; k < 64; ++k) t.push_back(s * (1.0 + k / 64.0));
  }
  return t;
}

double lp_norm(const PointFunc& f, const Box& box, const std::vector<int>& cells, double p) {
  const int d = box.dims();
  size_t total = 1;
  for (int k = 0; k < d; ++k) total *= cells[k];
  double cellvol = 1.0;
  for (int k = 0; k < d; ++k) cellvol *= (box.hi[k] - box.lo[k]) / cells[k];
  Vec terms(total);
#pragma omp parallel for schedule(static)
  for (long long flat = 0; flat < static_cast<long long>(total); ++flat) {
    Vec x(d);
    size_t rem = flat;
    for (int k = d - 1; k >= 0; --k) {
      const int i = static_cast<int>(rem % cells[k]);
      rem /= cells[k];
      x[k] = box.lo[k] + (box.hi[k] - box.lo[k]) * (i + 0.5) / cells[k];
    }
    terms[flat] = std::pow(std::abs(f(x)), p);
  }
  return std::pow(pairwise_sum(terms) * cellvol, 1.0 / p);
}

}  // namespace klab
