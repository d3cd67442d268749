#include "charur/matrixkit.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include <unsupported/Eigen/MatrixFunctions>

#include "charur/error.hpp"

namespace charur {

void require_square_finite(const CMatrix& m, const char* what) {
  if (m.rows() == 0 || m.rows() != m.cols()) {
    fail(ErrorKind::InvalidInput, std::string(what) + ": matrix must be square and non-empty (got " +
                                      std::to_string(m.rows()) + "x" + std::to_string(m.cols()) + ")");
  }
  if (!m.allFinite()) fail(ErrorKind::InvalidInput, std::string(what) + ": non-finite entry");
}

bool is_hermitian(const CMatrix& m, double rel_tol) {
  if (m.rows() != m.cols()) return false;
  const double scale = std::max(m.cwiseAbs().maxCoeff(), 1e-300);
  return (m - m.adjoint()).cwiseAbs().maxCoeff() <= rel_tol * scale;
}

CharCoeffs char_coeffs(const CMatrix& m) {
  require_square_finite(m, "char_coeffs");
  const Eigen::Index n = m.rows();

  // c[k] is the coefficient of lambda^k in det(lambda - M); c[n] = 1.
  std::vector<cplx> c(n + 1, cplx{0.0});
  c[n] = 1.0;
  CMatrix acc = CMatrix::Zero(n, n);
  const CMatrix id = CMatrix::Identity(n, n);
  for (Eigen::Index k = 1; k <= n; ++k) {
    acc = m * acc + c[n - k + 1] * id;
    c[n - k] = -(m * acc).trace() / static_cast<double>(k);
  }

  CharCoeffs out;
  out.coeffs.resize(n + 1);
  for (Eigen::Index r = 0; r <= n; ++r) {
    out.coeffs[r] = (r % 2 == 0 ? 1.0 : -1.0) * c[n - r];
  }
  out.coeffs[0] = 1.0;
  return out;
}

CharCoeffs char_coeffs(const RMatrix& m) { return char_coeffs(CMatrix(m.cast<cplx>())); }

cplx principal_minor_sum(const CMatrix& m, int r) {
  require_square_finite(m, "principal_minor_sum");
  const int n = static_cast<int>(m.rows());
  if (r < 1 || r > n) {
    fail(ErrorKind::InvalidInput, "principal_minor_sum: order " + std::to_string(r) +
                                      " outside 1.." + std::to_string(n));
  }

  std::vector<bool> pick(n, false);
  std::fill(pick.begin(), pick.begin() + r, true);
  std::vector<int> idx(r);
  CMatrix sub(r, r);
  cplx total{0.0};
  do {
    for (int i = 0, w = 0; i < n; ++i) {
      if (pick[i]) idx[w++] = i;
    }
    for (int a = 0; a < r; ++a) {
      for (int b = 0; b < r; ++b) sub(a, b) = m(idx[a], idx[b]);
    }
    total += sub.fullPivLu().determinant();
  } while (std::prev_permutation(pick.begin(), pick.end()));
  return total;
}

double psd_min_eig(const CMatrix& h) {
  require_square_finite(h, "psd_min_eig");
  if (!is_hermitian(h)) fail(ErrorKind::InvalidInput, "psd_min_eig: matrix is not Hermitian");
  Eigen::SelfAdjointEigenSolver<CMatrix> es(h, Eigen::EigenvaluesOnly);
  return es.eigenvalues().minCoeff();
}

double psd_min_eig(const RMatrix& h) { return psd_min_eig(CMatrix(h.cast<cplx>())); }

CMatrix expm(const CMatrix& m) {
  require_square_finite(m, "expm");
  return m.exp();
}

EigenDecomposition eig_general(const CMatrix& m) {
  require_square_finite(m, "eig_general");
  Eigen::ComplexEigenSolver<CMatrix> es(m, true);
  if (es.info() != Eigen::Success) fail(ErrorKind::Numeric, "eig_general: QR iteration did not converge");
  EigenDecomposition out{es.eigenvalues(), es.eigenvectors()};
  for (Eigen::Index c = 0; c < out.vectors.cols(); ++c) out.vectors.col(c).normalize();
  return out;
}

NullVector null_vector(const CMatrix& m) {
  require_square_finite(m, "null_vector");
  Eigen::BDCSVD<CMatrix> svd(m, Eigen::ComputeFullV);
  const auto& s = svd.singularValues();
  const Eigen::Index last = s.size() - 1;
  NullVector out;
  out.vector = svd.matrixV().col(last);
  out.sigma_min = s(last);
  out.sigma_next = last > 0 ? s(last - 1) : 0.0;
  return out;
}

}  // namespace charur
