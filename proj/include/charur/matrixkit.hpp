#pragma once

#include <cstddef>
#include <vector>

#include "charur/types.hpp"

namespace charur {

/// Characteristic coefficients C_0..C_n of a square matrix M, defined by
/// det(M - lambda) = sum_r C_r (-lambda)^(n-r). C_0 = 1, C_1 = tr M, C_n = det M.
struct CharCoeffs {
  std::vector<cplx> coeffs;

  std::size_t order() const { return coeffs.empty() ? 0 : coeffs.size() - 1; }
  cplx operator[](std::size_t r) const { return coeffs.at(r); }
};

/// Throws InvalidInput unless `m` is square, non-empty and finite.
void require_square_finite(const CMatrix& m, const char* what);

bool is_hermitian(const CMatrix& m, double rel_tol = tol::kHermitian);

/// Faddeev-LeVerrier recurrence.
CharCoeffs char_coeffs(const CMatrix& m);
CharCoeffs char_coeffs(const RMatrix& m);

/// Sum of the determinants of all C(n, r) principal r x r submatrices.
/// Brute-force enumeration; kept as an independent check on char_coeffs.
cplx principal_minor_sum(const CMatrix& m, int r);

/// Smallest eigenvalue of a Hermitian matrix. Throws InvalidInput when `h` is
/// not Hermitian within tol::kHermitian (entrywise, relative to max-norm).
double psd_min_eig(const CMatrix& h);
double psd_min_eig(const RMatrix& h);

/// Scaling-and-squaring Pade exponential.
CMatrix expm(const CMatrix& m);

struct EigenDecomposition {
  CVector values;
  CMatrix vectors;  // unit-norm columns
};

/// Dense eigendecomposition of a general complex matrix.
EigenDecomposition eig_general(const CMatrix& m);

struct NullVector {
  CVector vector;       // unit norm
  double sigma_min{};   // smallest singular value = residual norm
  double sigma_next{};  // second-smallest singular value
};

/// Right singular vector of the smallest singular value: the least-squares
/// solution of m x = 0 with |x| = 1.
NullVector null_vector(const CMatrix& m);

}  // namespace charur
