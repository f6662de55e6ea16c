#include "klab/smallmat.hpp"

#include <algorithm>
#include <cstdlib>
#include <numeric>

namespace klab {

Mat Mat::identity(int d) {
  Mat I(d, d);
  for (int i = 0; i < d; ++i) I(i, i) = 1.0;
  return I;
}

Mat operator+(const Mat& A, const Mat& B) {
  assert(A.nr == B.nr && A.nc == B.nc);
  Mat C(A.nr, A.nc);
  for (size_t k = 0; k < A.a.size(); ++k) C.a[k] = A.a[k] + B.a[k];
  return C;
}

Mat operator-(const Mat& A, const Mat& B) {
  assert(A.nr == B.nr && A.nc == B.nc);
  Mat C(A.nr, A.nc);
  for (size_t k = 0; k < A.a.size(); ++k) C.a[k] = A.a[k] - B.a[k];
  return C;
}

Mat operator*(double s, const Mat& A) {
  Mat C = A;
  for (double& v : C.a) v *= s;
  return C;
}

Mat matmul(const Mat& A, const Mat& B) {
  assert(A.nc == B.nr);
  Mat C(A.nr, B.nc);
  for (int i = 0; i < A.nr; ++i)
    for (int k = 0; k < A.nc; ++k) {
      const double aik = A(i, k);
      if (aik == 0.0) continue;
      for (int j = 0; j < B.nc; ++j) C(i, j) += aik * B(k, j);
    }
  return C;
}

Vec matvec(const Mat& A, const Vec& x) {
  assert(static_cast<int>(x.size()) == A.nc);
  Vec y(A.nr, 0.0);
  for (int i = 0; i < A.nr; ++i) {
    double s = 0.0;
    for (int j = 0; j < A.nc; ++j) s += A(i, j) * x[j];
    y[i] = s;
  }
  return y;
}

Mat transpose(const Mat& A) {
  Mat T(A.nc, A.nr);
  for (int i = 0; i < A.nr; ++i)
    for (int j = 0; j < A.nc; ++j) T(j, i) = A(i, j);
  return T;
}

Mat outer(const Vec& u, const Vec& v) {
  Mat C(static_cast<int>(u.size()), static_cast<int>(v.size()));
  for (size_t i = 0; i < u.size(); ++i)
    for (size_t j = 0; j < v.size(); ++j) C(static_cast<int>(i), static_cast<int>(j)) = u[i] * v[j];
  return C;
}

double dot(const Vec& u, const Vec& v) {
  assert(u.size() == v.size());
  double s = 0.0;
  for (size_t i = 0; i < u.size(); ++i) s += u[i] * v[i];
  return s;
}

double norm2(const Vec& u) { return std::sqrt(dot(u, u)); }

Vec vadd(const Vec& u, const Vec& v) {
  Vec w(u.size());
  for (size_t i = 0; i < u.size(); ++i) w[i] = u[i] + v[i];
  return w;
}

Vec vsub(const Vec& u, const Vec& v) {
  Vec w(u.size());
  for (size_t i = 0; i < u.size(); ++i) w[i] = u[i] - v[i];
  return w;
}

Vec vscale(double s, const Vec& u) {
  Vec w(u.size());
  for (size_t i = 0; i < u.size(); ++i) w[i] = s * u[i];
  return w;
}

double max_abs(const Mat& A) {
  double m = 0.0;
  for (double v : A.a) m = std::max(m, std::abs(v));
  return m;
}

double frobenius(const Mat& A) {
  double s = 0.0;
  for (double v : A.a) s += v * v;
  return std::sqrt(s);
}

// ==========================================================================
// LU with partial pivoting
// ==========================================================================

namespace {

// Returns pivot sign, or 0 on exact singularity. A is factored in place.
int lu_factor(Mat& A, std::vector<int>& piv) {
  const int d = A.nr;
  piv.resize(d);
  std::iota(piv.begin(), piv.end(), 0);
  int sign = 1;
  for (int k = 0; k < d; ++k) {
    int p = k;
    double best = std::abs(A(k, k));
    for (int i = k + 1; i < d; ++i)
      if (std::abs(A(i, k)) > best) { best = std::abs(A(i, k)); p = i; }
    if (best == 0.0) return 0;
    if (p != k) {
      for (int j = 0; j < d; ++j) std::swap(A(k, j), A(p, j));
      std::swap(piv[k], piv[p]);
      sign = -sign;
    }
    for (int i = k + 1; i < d; ++i) {
      A(i, k) /= A(k, k);
      const double lik = A(i, k);
      for (int j = k + 1; j < d; ++j) A(i, j) -= lik * A(k, j);
    }
  }
  return sign;
}

}  // namespace

double lu_det(Mat A) {
  assert(A.nr == A.nc);
  std::vector<int> piv;
  const int sign = lu_factor(A, piv);
  if (sign == 0) return 0.0;
  double d = sign;
  for (int k = 0; k < A.nr; ++k) d *= A(k, k);
  return d;
}

Vec lu_solve(Mat A, Vec b) {
  assert(A.nr == A.nc && static_cast<int>(b.size()) == A.nr);
  const int d = A.nr;
  std::vector<int> piv;
  const int sign = lu_factor(A, piv);
  assert(sign != 0 && "lu_solve: singular matrix");
  (void)sign;
  Vec x(d);
  for (int i = 0; i < d; ++i) x[i] = b[piv[i]];
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < i; ++j) x[i] -= A(i, j) * x[j];
  for (int i = d - 1; i >= 0; --i) {
    for (int j = i + 1; j < d; ++j) x[i] -= A(i, j) * x[j];
    x[i] /= A(i, i);
  }
  return x;
}

Mat lu_inverse(Mat A) {
  assert(A.nr == A.nc);
  const int d = A.nr;
  std::vector<int> piv;
  const int sign = lu_factor(A, piv);
  assert(sign != 0 && "lu_inverse: singular matrix");
  (void)sign;
  Mat inv(d, d);
  Vec x(d);
  for (int col = 0; col < d; ++col) {
    for (int i = 0; i < d; ++i) x[i] = (piv[i] == col) ? 1.0 : 0.0;
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < i; ++j) x[i] -= A(i, j) * x[j];
    for (int i = d - 1; i >= 0; --i) {
      for (int j = i + 1; j < d; ++j) x[i] -= A(i, j) * x[j];
      x[i] /= A(i, i);
    }
    for (int i = 0; i < d; ++i) inv(i, col) = x[i];
  }
  return inv;
}

// ==========================================================================
// One-sided Jacobi SVD
// ==========================================================================

Svd jacobi_svd(Mat A) {
  const bool flip = A.nr < A.nc;
  if (flip) A = transpose(A);
  const int m = A.nr, n = A.nc;
  Mat V = Mat::identity(n);
  const double tol = 1e-15;
  for (int sweep = 0; sweep < 60; ++sweep) {
    bool rotated = false;
    for (int p = 0; p < n - 1; ++p) {
      for (int q = p + 1; q < n; ++q) {
        double app = 0.0, aqq = 0.0, apq = 0.0;
        for (int i = 0; i < m; ++i) {
          app += A(i, p) * A(i, p);
          aqq += A(i, q) * A(i, q);
          apq += A(i, p) * A(i, q);
        }
        if (std::abs(apq) <= tol * std::sqrt(app * aqq)) continue;
        rotated = true;
        const double zeta = (aqq - app) / (2.0 * apq);
        const double tau = (zeta >= 0 ? 1.0 : -1.0) / (std::abs(zeta) + std::sqrt(1.0 + zeta * zeta));
        const double c = 1.0 / std::sqrt(1.0 + tau * tau);
        const double s = c * tau;
        for (int i = 0; i < m; ++i) {
          const double ap = A(i, p), aq = A(i, q);
          A(i, p) = c * ap - s * aq;
          A(i, q) = s * ap + c * aq;
        }
        for (int i = 0; i < n; ++i) {
          const double vp = V(i, p), vq = V(i, q);
          V(i, p) = c * vp - s * vq;
          V(i, q) = s * vp + c * vq;
        }
      }
    }
    if (!rotated) break;
  }
  Svd out;
  out.s.resize(n);
  out.U = Mat(m, n);
  for (int j = 0; j < n; ++j) {
    double nrm = 0.0;
    for (int i = 0; i < m; ++i) nrm += A(i, j) * A(i, j);
    nrm = std::sqrt(nrm);
    out.s[j] = nrm;
    if (nrm > 0.0)
      for (int i = 0; i < m; ++i) out.U(i, j) = A(i, j) / nrm;
  }
  // sort descending by singular value
  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](int i, int j) { return out.s[i] > out.s[j]; });
  Svd sorted;
  sorted.s.resize(n);
  sorted.U = Mat(m, n);
  Mat Vs(n, n);
  for (int j = 0; j < n; ++j) {
    sorted.s[j] = out.s[order[j]];
    for (int i = 0; i < m; ++i) sorted.U(i, j) = out.U(i, order[j]);
    for (int i = 0; i < n; ++i) Vs(i, j) = V(i, order[j]);
  }
  sorted.V = Vs;
  if (flip) std::swap(sorted.U, sorted.V);
  return sorted;
}

Vec singular_values(const Mat& A) { return jacobi_svd(A).s; }

int rank_of(const Vec& s, double rel_tol, double abs_tol) {
  if (s.empty()) return 0;
  const double cut = std::max(rel_tol * s[0], abs_tol);
  int r = 0;
  for (double v : s)
    if (v > cut) ++r;
  return r;
}

Vec left_null_vector(const Mat& U) {
  const int m = U.nr, k = U.nc;
  assert(k < m);
  // Gram-Schmidt a canonical basis vector against the columns of U; pick the
  // first candidate whose residual stays away from zero (deterministic).
  for (int cand = 0; cand < m; ++cand) {
    Vec v(m, 0.0);
    v[cand] = 1.0;
    for (int pass = 0; pass < 2; ++pass) {
      for (int j = 0; j < k; ++j) {
        double c = 0.0;
        for (int i = 0; i < m; ++i) c += U(i, j) * v[i];
        for (int i = 0; i < m; ++i) v[i] -= c * U(i, j);
      }
    }
    const double nrm = norm2(v);
    if (nrm > 0.3) return vscale(1.0 / nrm, v);
  }
  assert(false && "left_null_vector: no stable complement direction");
  return Vec(m, 0.0);
}

double pairwise_sum(const double* v, size_t n) {
  if (n == 0) return 0.0;
  if (n == 1) return v[0];
  const size_t m = n / 2;
  return pairwise_sum(v, m) + pairwise_sum(v + m, n - m);
}

}  // namespace klab
