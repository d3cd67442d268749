#include <cmath>

#include "doctest.h"

#include "charur/error.hpp"
#include "charur/specfun.hpp"

using namespace charur;

TEST_SUITE("specfun") {
  TEST_CASE("Pochhammer symbol") {
    CHECK(pochhammer(2.5, 0) == cplx(1.0));
    CHECK(pochhammer(1.0, 5).real() == doctest::Approx(120.0));
    CHECK(pochhammer(0.5, 3).real() == doctest::Approx(15.0 / 8.0));
    CHECK(pochhammer(-2.0, 3) == cplx(0.0));
    CHECK(log_pochhammer(0.75, 40) == doctest::Approx(std::lgamma(40.75) - std::lgamma(0.75)).epsilon(1e-13));
  }

  TEST_CASE("0F1 against modified Bessel functions") {
    // 0F1(;c;x) = Gamma(c) x^{(1-c)/2} I_{c-1}(2 sqrt x)
    for (double c : {1.0, 1.5, 2.5, 4.0}) {
      for (double x : {0.1, 1.0, 9.0, 50.0}) {
        const double want = std::tgamma(c) * std::pow(x, 0.5 * (1.0 - c)) * std::cyl_bessel_i(c - 1.0, 2.0 * std::sqrt(x));
        CHECK(hyp0f1(c, x) == doctest::Approx(want).epsilon(1e-12));
      }
    }
    CHECK(hyp0f1(1.5, 0.0) == 1.0);
  }

  TEST_CASE("0F1 closed forms") {
    const double x = 1.7;
    CHECK(hyp0f1(1.5, x * x / 4.0) == doctest::Approx(std::sinh(x) / x).epsilon(1e-14));
    CHECK(hyp0f1(0.5, x * x / 4.0) == doctest::Approx(std::cosh(x)).epsilon(1e-14));
  }

  TEST_CASE("0F1 reports non-convergence instead of throwing") {
    const SeriesResult r = hyp0f1_series(1.0, 1e6, 5);
    CHECK_FALSE(r.converged);
    CHECK(r.terms_used <= 5);
  }

  TEST_CASE("terminating 2F1 against Chu-Vandermonde and binomial identities") {
    // 2F1(a, -n; c; 1) = (c - a)_n / (c)_n
    for (int n : {0, 1, 4, 9}) {
      const cplx a(0.3, 0.7), c(2.5, -0.2);
      const cplx want = pochhammer(c - a, n) / pochhammer(c, n);
      CHECK(std::abs(gauss2f1_terminating(a, n, c, 1.0) - want) <= 1e-12 * std::max(1.0, std::abs(want)));
    }
    // 2F1(b, -n; b; x) = (1 - x)^n
    const cplx x(0.4, -0.3);
    CHECK(std::abs(gauss2f1_terminating(1.7, 6, 1.7, x) - std::pow(1.0 - x, 6)) <= 1e-13);
  }

  TEST_CASE("2F1 coefficients sum to the value") {
    const cplx a(1.2, 0.1), c(3.0, 0.0), x(0.6, 0.2);
    const CVector t = gauss2f1_coefficients(a, 7, c);
    cplx direct = 0.0;
    for (Eigen::Index m = 0; m < t.size(); ++m) direct += t(m) * std::pow(x, static_cast<int>(m));
    CHECK(std::abs(direct - gauss2f1_terminating(a, 7, c, x)) <= 1e-13);
  }

  TEST_CASE("2F1 with a vanishing lower Pochhammer symbol throws") {
    try {
      gauss2f1_terminating(0.5, 3, -1.0, 0.5);
      FAIL("expected InvalidInput");
    } catch (const Error& e) {
      CHECK(e.kind() == ErrorKind::InvalidInput);
    }
  }
}
