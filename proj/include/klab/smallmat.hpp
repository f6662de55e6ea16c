#pragma once
// Small dense matrices for dimensions up to ~12: enough linear algebra for the
// lemma checks and curvature reports without pulling in an external library.
// Row-major, bounds unchecked in release builds.

#include <cassert>
#include <cmath>
#include <cstddef>
#include <vector>

namespace klab {

using Vec = std::vector<double>;

struct Mat {
  int nr = 0, nc = 0;
  std::vector<double> a;

  Mat() = default;
  Mat(int r, int c) : nr(r), nc(c), a(static_cast<size_t>(r) * c, 0.0) {}

  double& operator()(int i, int j) {
    assert(i >= 0 && i < nr && j >= 0 && j < nc);
    return a[static_cast<size_t>(i) * nc + j];
  }
  double operator()(int i, int j) const {
    assert(i >= 0 && i < nr && j >= 0 && j < nc);
    return a[static_cast<size_t>(i) * nc + j];
  }

  static Mat identity(int d);
  static Mat zeros(int r, int c) { return Mat(r, c); }
};

Mat operator+(const Mat& A, const Mat& B);
Mat operator-(const Mat& A, const Mat& B);
Mat operator*(double s, const Mat& A);
Mat matmul(const Mat& A, const Mat& B);
Vec matvec(const Mat& A, const Vec& x);
Mat transpose(const Mat& A);
Mat outer(const Vec& u, const Vec& v);

double dot(const Vec& u, const Vec& v);
double norm2(const Vec& u);
Vec vadd(const Vec& u, const Vec& v);
Vec vsub(const Vec& u, const Vec& v);
Vec vscale(double s, const Vec& u);

double max_abs(const Mat& A);
double frobenius(const Mat& A);

// LU with partial pivoting. lu_det returns the signed determinant; lu_inverse
// asserts invertibility (used only on matrices known to be regular).
double lu_det(Mat A);
Mat lu_inverse(Mat A);
Vec lu_solve(Mat A, Vec b);

// One-sided Jacobi SVD. A (m x n) with m >= n is handled directly, otherwise
// the transpose is processed. Singular values sorted descending; U is m x k,
// V is n x k with k = min(m,n), A = U diag(s) V^T.
struct Svd {
  Vec s;
  Mat U, V;
};
Svd jacobi_svd(Mat A);
Vec singular_values(const Mat& A);

// Rank with a relative threshold on sigma_max plus an absolute floor; the floor
// keeps pure finite-difference noise (sigma_max itself ~1e-8) at rank 0.
int rank_of(const Vec& s, double rel_tol, double abs_tol);

// Unit vector spanning the orthogonal complement of the column span of U
// (expects U with orthonormal columns, one missing direction).
Vec left_null_vector(const Mat& U);

// Deterministic summation: recursive halving with the split at (a+b)/2. The
// tree shape depends only on n, so partial sums can be computed by different
// threads and still combine to a bit-identical total.
double pairwise_sum(const double* v, size_t n);
inline double pairwise_sum(const Vec& v) { return pairwise_sum(v.data(), v.size()); }

}  // namespace klab
