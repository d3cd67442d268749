#pragma once

// Test-side reference implementations, written independently of the library.

#include <cmath>
#include <complex>
#include <random>
#include <vector>

#include <Eigen/Dense>

namespace oracle {

using cplx = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;

// Determinant by cofactor expansion along the first row.
inline cplx laplace_det(const CMatrix& m) {
  const Eigen::Index n = m.rows();
  if (n == 0) return 1.0;
  if (n == 1) return m(0, 0);
  cplx det = 0.0;
  for (Eigen::Index c = 0; c < n; ++c) {
    CMatrix minor(n - 1, n - 1);
    for (Eigen::Index i = 1; i < n; ++i) {
      for (Eigen::Index j = 0, jj = 0; j < n; ++j) {
        if (j != c) minor(i - 1, jj++) = m(i, j);
      }
    }
    det += (c % 2 == 0 ? 1.0 : -1.0) * m(0, c) * laplace_det(minor);
  }
  return det;
}

// Sum of all order-r principal minors, enumerated over bitmasks.
inline cplx minor_sum(const CMatrix& m, int r) {
  const int n = static_cast<int>(m.rows());
  cplx total = 0.0;
  for (unsigned mask = 0; mask < (1u << n); ++mask) {
    if (__builtin_popcount(mask) != r) continue;
    std::vector<int> idx;
    for (int i = 0; i < n; ++i)
      if (mask & (1u << i)) idx.push_back(i);
    CMatrix sub(r, r);
    for (int i = 0; i < r; ++i)
      for (int j = 0; j < r; ++j) sub(i, j) = m(idx[i], idx[j]);
    total += laplace_det(sub);
  }
  return total;
}

inline CMatrix random_matrix(int n, std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  CMatrix m(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) m(i, j) = cplx(g(rng), g(rng));
  return m;
}

// |<a|b>| for vectors of unit norm.
inline double ray(const CVector& a, const CVector& b) { return std::abs(a.dot(b)) / (a.norm() * b.norm()); }

// Fock-space ladder operator with `n` levels.
inline CMatrix lowering(int n) {
  CMatrix a = CMatrix::Zero(n, n);
  for (int i = 1; i < n; ++i) a(i - 1, i) = std::sqrt(static_cast<double>(i));
  return a;
}

// Eigenstate of u a + v a† with eigenvalue alpha from the three-term recurrence
// u sqrt(n+1) c_{n+1} + v sqrt(n) c_{n-1} = alpha c_n, c_0 = 1.
inline CVector squeezed_recurrence(cplx alpha, cplx u, cplx v, int n) {
  CVector c = CVector::Zero(n);
  c(0) = 1.0;
  if (n > 1) c(1) = alpha / u;
  for (int k = 1; k + 1 < n; ++k) {
    c(k + 1) = (alpha * c(k) - v * std::sqrt(static_cast<double>(k)) * c(k - 1)) / (u * std::sqrt(k + 1.0));
  }
  return c / c.norm();
}

}  // namespace oracle
