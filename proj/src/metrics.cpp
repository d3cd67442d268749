#include "charur/metrics.hpp"

#include <algorithm>
#include <cmath>

#include "charur/error.hpp"
#include "charur/matrixkit.hpp"

namespace charur {

namespace {

bool is_identity(const CMatrix& m) { return m.isIdentity(0.0); }

// Inner product with real and imaginary parts summed separately, so that
// <a, b> = conj(<b, a>) and <a, a> is real bit for bit.
cplx exact_inner(const CVector& a, const CVector& b) {
  double s1 = 0.0, s2 = 0.0, s3 = 0.0, s4 = 0.0;
  for (Eigen::Index i = 0; i < a.size(); ++i) {
    s1 += a(i).real() * b(i).real();
    s2 += a(i).imag() * b(i).imag();
    s3 += a(i).real() * b(i).imag();
    s4 += a(i).imag() * b(i).real();
  }
  return {s1 + s2, s3 - s4};
}

}  // namespace

void require_positive_observable(const Operator& x) {
  if (x.matrix.rows() != x.basis.dim()) fail(ErrorKind::InvalidObservable, "distance: operator dimension mismatch");
  if (is_identity(x.matrix)) return;
  if (!is_hermitian(x.matrix)) fail(ErrorKind::InvalidObservable, "distance: " + x.label + " is not Hermitian");
  const double min_eig = psd_min_eig(x.matrix);
  if (!(min_eig > tol::kPsd)) {
    fail(ErrorKind::InvalidObservable, "distance: " + x.label + " is not strictly positive (min eigenvalue " +
                                           short_num(min_eig) + ")");
  }
}

DistanceResult g_overlap(const StateVector& psi1, const StateVector& psi2, const Operator& x) {
  if (!(psi1.basis() == psi2.basis()) || !(psi1.basis() == x.basis)) {
    fail(ErrorKind::BasisMismatch, "distance: states and observable on different bases");
  }
  require_positive_observable(x);
  const CVector y1 = x.matrix * psi1.amplitudes();
  const CVector y2 = x.matrix * psi2.amplitudes();
  const double n1 = exact_inner(y1, y1).real();
  const double n2 = exact_inner(y2, y2).real();
  const double num = std::abs(exact_inner(y2, y1));
  DistanceResult r;
  r.observable = x.label;
  // Identical vectors can miss 1 by an ulp through the square roots.
  const double denom = std::sqrt(n1) * std::sqrt(n2);
  r.g = std::clamp(num / denom, 0.0, 1.0);
  if (psi1.amplitudes() == psi2.amplitudes()) r.g = 1.0;
  r.d_sq = 2.0 * (1.0 - r.g);
  return r;
}

}  // namespace charur
