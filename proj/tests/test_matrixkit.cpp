#include <random>

#include "doctest.h"
#include "oracles.hpp"

#include "charur/error.hpp"
#include "charur/matrixkit.hpp"

using namespace charur;

TEST_SUITE("matrixkit") {
  TEST_CASE("characteristic coefficients match cofactor-expanded principal minors") {
    std::mt19937_64 rng(7);
    for (int t = 0; t < 60; ++t) {
      const int n = 1 + t % 6;
      const CMatrix m = oracle::random_matrix(n, rng);
      const CharCoeffs c = char_coeffs(m);
      REQUIRE(c.order() == static_cast<std::size_t>(n));
      CHECK(c[0] == cplx(1.0));
      for (int r = 1; r <= n; ++r) {
        const cplx want = oracle::minor_sum(m, r);
        CHECK(std::abs(c[r] - want) <= 1e-10 * std::max(1.0, std::abs(want)));
        CHECK(std::abs(principal_minor_sum(m, r) - want) <= 1e-10 * std::max(1.0, std::abs(want)));
      }
    }
  }

  TEST_CASE("diagonal matrix gives elementary symmetric polynomials") {
    RMatrix d = RMatrix::Zero(3, 3);
    d.diagonal() << 1.0, 2.0, 3.0;
    const CharCoeffs c = char_coeffs(d);
    CHECK(c[1].real() == doctest::Approx(6.0));
    CHECK(c[2].real() == doctest::Approx(11.0));
    CHECK(c[3].real() == doctest::Approx(6.0));
  }

  TEST_CASE("odd antisymmetric determinant vanishes") {
    std::mt19937_64 rng(3);
    std::normal_distribution<double> g;
    RMatrix a(5, 5);
    for (int i = 0; i < 5; ++i)
      for (int j = 0; j < 5; ++j) a(i, j) = g(rng);
    const RMatrix anti = a - a.transpose();
    CHECK(std::abs(char_coeffs(anti)[5]) <= 1e-12 * std::pow(anti.norm(), 5));
  }

  TEST_CASE("input validation") {
    CMatrix rect(2, 3);
    rect.setZero();
    CHECK_THROWS_AS(char_coeffs(rect), Error);
    CMatrix nan = CMatrix::Identity(2, 2);
    nan(0, 1) = std::nan("");
    try {
      char_coeffs(nan);
      FAIL("expected InvalidInput");
    } catch (const Error& e) {
      CHECK(e.kind() == ErrorKind::InvalidInput);
    }
    CMatrix nonherm = CMatrix::Identity(2, 2);
    nonherm(0, 1) = 1.0;
    CHECK_THROWS_AS(psd_min_eig(nonherm), Error);
  }

  TEST_CASE("psd_min_eig of a Hermitian matrix") {
    CMatrix h(2, 2);
    h << 2.0, kI, -kI, 2.0;
    CHECK(psd_min_eig(h) == doctest::Approx(1.0));
  }

  TEST_CASE("expm agrees with the power series for a small matrix") {
    std::mt19937_64 rng(11);
    const CMatrix m = 0.3 * oracle::random_matrix(4, rng);
    CMatrix series = CMatrix::Identity(4, 4), term = CMatrix::Identity(4, 4);
    for (int k = 1; k < 40; ++k) {
      term = term * m / static_cast<double>(k);
      series += term;
    }
    CHECK((expm(m) - series).norm() <= 1e-13);
  }

  TEST_CASE("eig_general residuals") {
    std::mt19937_64 rng(5);
    const CMatrix m = oracle::random_matrix(6, rng);
    const EigenDecomposition e = eig_general(m);
    for (int i = 0; i < 6; ++i) {
      CHECK(std::abs(e.vectors.col(i).norm() - 1.0) <= 1e-12);
      CHECK((m * e.vectors.col(i) - e.values(i) * e.vectors.col(i)).norm() <= 1e-10);
    }
  }

  TEST_CASE("null_vector recovers a known kernel") {
    CMatrix m(3, 3);
    m << 1.0, 2.0, 3.0, 4.0, 5.0, 6.0, 7.0, 8.0, 9.0;  // kernel (1, -2, 1)
    const NullVector nv = null_vector(m);
    CVector want(3);
    want << 1.0, -2.0, 1.0;
    CHECK(oracle::ray(nv.vector, want) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(nv.sigma_min <= 1e-12);
    CHECK(nv.sigma_next > 0.1);
  }
}
