#include "charur/specfun.hpp"

#include <cmath>
#include <string>

#include "charur/error.hpp"

namespace charur {

cplx pochhammer(cplx a, int n) {
  if (n < 0) fail(ErrorKind::InvalidInput, "pochhammer: n must be >= 0");
  cplx out{1.0};
  for (int i = 0; i < n; ++i) out *= a + static_cast<double>(i);
  return out;
}

double log_pochhammer(double a, int n) {
  if (!(a > 0.0)) fail(ErrorKind::InvalidInput, "log_pochhammer: a must be > 0");
  if (n < 0) fail(ErrorKind::InvalidInput, "log_pochhammer: n must be >= 0");
  return std::lgamma(a + n) - std::lgamma(a);
}

SeriesResult hyp0f1_series(double c, double x, int max_terms) {
  if (!(c > 0.0)) fail(ErrorKind::InvalidInput, "hyp0f1: c must be > 0");
  if (!(x >= 0.0) || !std::isfinite(x)) fail(ErrorKind::InvalidInput, "hyp0f1: x must be finite and >= 0");
  SeriesResult r;
  double term = 1.0;
  double sum = 1.0;
  r.terms_used = 1;
  if (x == 0.0) {
    r.value = sum;
    r.converged = true;
    return r;
  }
  for (int n = 0; n + 1 < max_terms; ++n) {
    term *= x / ((c + n) * (n + 1.0));
    sum += term;
    ++r.terms_used;
    // Terms decay monotonically once n exceeds sqrt(x).
    if (term < 1e-16 * sum && (n + 1.0) * (n + 1.0) > x) {
      r.converged = true;
      break;
    }
  }
  r.value = sum;
  return r;
}

double hyp0f1(double c, double x) {
  const SeriesResult r = hyp0f1_series(c, x);
  if (!r.converged || !std::isfinite(r.value.real())) {
    fail(ErrorKind::Numeric, "hyp0f1: series did not converge within 10^4 terms");
  }
  return r.value.real();
}

CVector gauss2f1_coefficients(cplx a, int n, cplx c) {
  if (n < 0) fail(ErrorKind::InvalidInput, "gauss2f1_terminating: n must be >= 0");
  CVector t(n + 1);
  t(0) = 1.0;
  for (int m = 0; m < n; ++m) {
    const cplx denom = (c + static_cast<double>(m)) * (m + 1.0);
    if (std::abs(c + static_cast<double>(m)) == 0.0) {
      fail(ErrorKind::InvalidInput, "gauss2f1_terminating: (c)_m vanishes at m = " + std::to_string(m + 1));
    }
    t(m + 1) = t(m) * (a + static_cast<double>(m)) * (static_cast<double>(m - n)) / denom;
  }
  return t;
}

cplx gauss2f1_terminating(cplx a, int n, cplx c, cplx x) {
  const CVector t = gauss2f1_coefficients(a, n, c);
  cplx acc = t(n);
  for (int m = n - 1; m >= 0; --m) acc = acc * x + t(m);
  return acc;
}

}  // namespace charur
