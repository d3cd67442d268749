#include <random>

#include "doctest.h"

#include "charur/error.hpp"
#include "charur/intelligent.hpp"

using namespace charur;

namespace {

ErrorKind kind_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  FAIL("expected an error");
  return ErrorKind::Numeric;
}

}  // namespace

TEST_SUITE("intelligent") {
  TEST_CASE("su(2) combination J1 + i lambda J2 has eigenvalues m sqrt(1 - lambda^2)") {
    const ObservableSet spin = su2_set(1.0);
    CVector beta(3);
    beta << 1.0, 0.5 * kI, 0.0;
    const CombinationSolution sol = solve_combination_eigenstates(CombinationSpec::make(beta, spin));
    REQUIRE(sol.physical.size() == 3);
    std::vector<double> re;
    for (const Eigenpair& e : sol.physical) {
      CHECK(e.residual <= 1e-12);
      CHECK(std::abs(e.value.imag()) <= 1e-12);
      re.push_back(e.value.real());
    }
    std::sort(re.begin(), re.end());
    CHECK(re[0] == doctest::Approx(-std::sqrt(0.75)));
    CHECK(std::abs(re[1]) <= 1e-12);
    CHECK(re[2] == doctest::Approx(std::sqrt(0.75)));
    CHECK_FALSE(sol.degraded);
  }

  TEST_CASE("solver eigenvector at a known eigenvalue reproduces the Barut-Girardello state") {
    const cplx z(0.8, -1.1);
    const TargetedSolution sol = solve_at_eigenvalue(CombinationSpec::su11(1.0, 0.0, 0.0, 0.5, 64), z);
    CHECK(ray_overlap(sol.state, bg_cs(z, 0.5, 64)) >= 1.0 - 1e-10);
    CHECK(sol.residual <= 1e-10);
    CHECK(sol.separation > 1e-3);
  }

  TEST_CASE("combination validation and size limit") {
    CVector beta = CVector::Zero(3);
    CHECK(kind_of([&] { CombinationSpec::make(beta, su11_set(0.5, 8)); }) == ErrorKind::InvalidInput);
    CHECK(kind_of([&] { CombinationSpec::make(CVector::Ones(2), su11_set(0.5, 8)); }) == ErrorKind::InvalidInput);
    CHECK(kind_of([] { solve_combination_eigenstates(CombinationSpec::su11(1.0, 0.2, 0.1, 0.5, 600)); }) ==
          ErrorKind::UnsupportedScale);
  }

  TEST_CASE("minimizer certificate") {
    const ObservableSet set = su11_set(1.0, 96);
    const MinimizerCertificate cs = minimizer_certificate(su11_cs(cplx(0.4, 0.3), 1.0, 96), set);
    CHECK(cs.verdict == "minimizer");
    for (const PairCertificate& p : cs.pairs) {
      CHECK(p.residual <= 1e-8);
      CHECK(std::abs(std::norm(p.beta_i) + std::norm(p.beta_j) - 1.0) <= 1e-12);
    }

    IntelligentParams ip;
    ip.u = std::polar(0.5, 0.4);
    ip.v = std::conj(ip.u);
    ip.w = 1.5;
    ip.k = 1.0;
    ip.z = intelligent_discrete_eigenvalue(ip, 1);
    CHECK(minimizer_certificate(su11_intelligent(ip, 96), set).verdict == "robertson-minimizer");

    std::mt19937_64 rng(3);
    const StateVector psi = random_state(BasisSpec::su11(1.0, 96), rng, 12);
    const MinimizerCertificate c = minimizer_certificate(psi, set);
    CHECK(c.verdict == "not-minimizer");
    // lambda_min (trace - lambda_min) = det for the pair's Robertson matrix.
    const URReport rep = char_ur_report(set, psi);
    for (const PairCertificate& p : c.pairs) {
      const PairGaps& g = rep.pair(p.i, p.j);
      const double lmin = p.residual * p.residual;
      CHECK(p.residual > 1e-3);
      CHECK(lmin * (g.var_x + g.var_y - lmin) == doctest::Approx(p.schr_gap).epsilon(1e-9));
    }
  }

  TEST_CASE("pairwise eigen-equations single out su(1,1) coherent states") {
    const ObservableSet set = su11_set(0.5, 96);
    for (const cplx xi : {cplx(0.2, 0.1), cplx(-0.5, 0.4), cplx(0.0, -0.7)}) {
      const StateVector psi = su11_cs(xi, 0.5, 96);
      const MinimizerCertificate c = minimizer_certificate(psi, set);
      for (const PairCertificate& p : c.pairs) {
        CVector beta = CVector::Zero(3);
        beta(p.i) = p.beta_i;
        beta(p.j) = p.beta_j;
        const TargetedSolution sol = solve_at_eigenvalue(CombinationSpec::make(beta, set), p.z);
        CHECK(ray_overlap(sol.state, psi) >= 1.0 - 1e-8);
      }
    }
  }

  TEST_CASE("squeezing floor candidate") {
    PairGaps a, b, c;
    a.var_x = 0.5;
    a.var_y = 0.5;
    b.var_x = 0.3;
    b.var_y = 0.3 * (1.0 + 1e-8);
    c.var_x = 0.1;
    c.var_y = 0.9;
    CHECK(delta0_candidate({a, b, c}) == doctest::Approx(std::sqrt(0.3)));
    CHECK(kind_of([&] { delta0_candidate({c}); }) == ErrorKind::InvalidInput);
  }
}
