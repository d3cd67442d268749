#pragma once

#include "charur/types.hpp"

namespace charur {

struct SeriesResult {
  cplx value{};
  int terms_used = 0;
  bool converged = false;  // last term / partial sum < 1e-16
};

/// (a)_n = a (a+1) ... (a+n-1), (a)_0 = 1.
cplx pochhammer(cplx a, int n);

/// log (a)_n for real a > 0.
double log_pochhammer(double a, int n);

/// 0F1(;c;x) = sum x^n / ((c)_n n!) for c > 0, x >= 0. Never throws on
/// non-convergence; inspect `converged`.
SeriesResult hyp0f1_series(double c, double x, int max_terms = 10000);

/// As hyp0f1_series but throws Numeric if 10^4 terms do not converge.
double hyp0f1(double c, double x);

/// The (n+1)-term polynomial 2F1(a, -n; c; x). Throws InvalidInput when
/// (c)_m vanishes for some m <= n.
cplx gauss2f1_terminating(cplx a, int n, cplx c, cplx x);

/// Coefficients t_m = (a)_m (-n)_m / ((c)_m m!), m = 0..n, of the polynomial
/// above in powers of x.
CVector gauss2f1_coefficients(cplx a, int n, cplx c);

}  // namespace charur
