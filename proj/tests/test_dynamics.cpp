#include <cmath>

#include "doctest.h"
#include "oracles.hpp"

#include "charur/dynamics.hpp"
#include "charur/error.hpp"
#include "charur/expr.hpp"
#include "charur/moments.hpp"
#include "charur/serialize.hpp"

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

OscillatorProfile frequency_step() {
  return OscillatorProfile::frequency([](double t) { return t < 0.0 ? 1.0 : 2.0; }, 1.0);
}

OscillatorProfile constant_quadratic(double g1, double g2, double g3) {
  return OscillatorProfile::quadratic([g1](double) { return g1; }, [g2](double) { return g2; },
                                      [g3](double) { return g3; }, 1.0);
}

RVector grid(double lo, double hi, int n) { return RVector::LinSpaced(n, lo, hi); }

// Position variance of a grid wavefunction.
double grid_variance(const CVector& psi, const RVector& x) {
  const RVector w = psi.cwiseAbs2();
  const double norm = w.sum();
  const double mean = w.dot(x) / norm;
  return w.dot((x.array() - mean).square().matrix()) / norm;
}

}  // namespace

TEST_SUITE("dynamics") {
  TEST_CASE("frequency step against the piecewise closed form") {
    const std::vector<double> t = linspace(0.0, 10.0, 501);
    const UvTrajectory uv = uv_trajectory(integrate_epsilon(frequency_step(), t), 1.0);
    double err = 0.0;
    for (std::size_t i = 0; i < t.size(); ++i) {
      const cplx u = std::cos(2 * t[i]) + 1.25 * kI * std::sin(2 * t[i]);
      const cplx v = 0.75 * kI * std::sin(2 * t[i]);
      err = std::max({err, std::abs(uv.u[i] - u), std::abs(uv.v[i] - v)});
    }
    CHECK(err <= 1e-9);
    CHECK(uv.shell_drift <= 1e-8);
  }

  TEST_CASE("flow route agrees with the epsilon route") {
    const std::vector<double> t = linspace(0.0, 6.0, 121);
    const OscillatorProfile p = OscillatorProfile::frequency([](double s) { return 1.0 + 0.3 * std::sin(1.7 * s); }, 1.0);
    const UvTrajectory a = uv_trajectory(integrate_epsilon(p, t), 1.0);
    const UvTrajectory b = uv_from_flow(p, t);
    for (std::size_t i = 0; i < t.size(); ++i) {
      CHECK(std::abs(a.u[i] - b.u[i]) <= 1e-9);
      CHECK(std::abs(a.v[i] - b.v[i]) <= 1e-9);
    }
  }

  TEST_CASE("effective frequency") {
    CHECK(effective_frequency(constant_quadratic(0.5, 0.0, 0.5), 0.3) == doctest::Approx(1.0));
    CHECK(kind_of([] { effective_frequency(constant_quadratic(0.0, 0.1, 0.5), 0.0); }) == ErrorKind::SingularProfile);
  }

  TEST_CASE("initial data must satisfy the Wronskian condition") {
    const std::vector<double> t = linspace(0.0, 1.0, 11);
    CHECK(kind_of([&] { integrate_epsilon(frequency_step(), t, 1.0, 1.0); }) == ErrorKind::InvalidInput);
  }

  TEST_CASE("Fock-space evolution under a quadratic Hamiltonian follows the flow invariant") {
    const int n = 96;
    const cplx alpha(0.8, -0.3);
    const OscillatorProfile p = constant_quadratic(0.6, 0.2, 0.4);
    const CMatrix h = quadratic_hamiltonian(0.6, 0.2, 0.4, 1.0, n);
    for (double t : {0.7, 1.3}) {
      const StateVector evolved = evolve_fock(glauber(alpha, n), h, t);
      const UvTrajectory uv = uv_from_flow(p, {0.0, t});
      const StateVector want = canonical_ss(alpha, SqueezeParams::make(uv.u[1], uv.v[1]), n);
      CHECK(ray_overlap(evolved, want) >= 1.0 - 1e-8);
    }
  }

  TEST_CASE("a quartic term breaks Gaussianity") {
    const int n = 80;
    const RVector x = grid(-7.0, 7.0, 561);
    const StateVector psi = glauber(1.0, n);
    const CMatrix quad = quadratic_hamiltonian(0.5, 0.0, 0.5, 1.0, n);
    const CMatrix quartic = quadratic_hamiltonian(0.5, 0.0, 0.5, 1.0, n, 0.3);
    const double gaussian = gaussian_fit_residual(fock_to_grid(evolve_fock(psi, quad, 1.0).amplitudes(), x), x);
    const double distorted = gaussian_fit_residual(fock_to_grid(evolve_fock(psi, quartic, 1.0).amplitudes(), x), x);
    CHECK(gaussian <= 1e-6);
    CHECK(distorted >= 1e-3);
  }

  TEST_CASE("closed-form wavefunction against the Hermite-function expansion") {
    const RVector x = grid(-9.0, 9.0, 721);
    const cplx alpha(0.6, 0.9);
    for (const SqueezeParams& sq : {SqueezeParams::polar(0.5, 0.8), SqueezeParams::make(std::polar(1.2, 2.0), std::polar(0.5, -0.6))}) {
      const CVector a = wavefunction(alpha, sq, x);
      const CVector b = fock_to_grid(canonical_ss(alpha, sq, 128).amplitudes(), x);
      CHECK(oracle::ray(a, b) >= 1.0 - 1e-12);
      const double dx = x(1) - x(0);
      CHECK(a.squaredNorm() * dx == doctest::Approx(1.0).epsilon(1e-10));
      CHECK(grid_variance(a, x) == doctest::Approx(uv_moments(sq).dq2).epsilon(1e-9));
    }
    CHECK(kind_of([&] { wavefunction(0.0, 1.0, 1.0, x); }) == ErrorKind::DegenerateParameter);
  }

  TEST_CASE("grid variance along a trajectory tracks |u - v|^2 / 2") {
    const std::vector<double> t = linspace(0.0, 3.0, 31);
    const UvTrajectory uv = uv_trajectory(integrate_epsilon(frequency_step(), t), 1.0);
    const RVector x = grid(-10.0, 10.0, 801);
    const std::vector<CVector> series = wavefunction_series(0.5, uv, x);
    for (std::size_t i = 0; i < t.size(); ++i) {
      CHECK(grid_variance(series[i], x) == doctest::Approx(0.5 * std::norm(uv.u[i] - uv.v[i])).epsilon(1e-9));
      if (i > 0) CHECK(std::abs(series[i].dot(series[i - 1])) * (x(1) - x(0)) > 0.9);
    }
  }

  TEST_CASE("classical flow conserves the expectation energy of a static profile") {
    const OscillatorProfile p = constant_quadratic(0.6, 0.2, 0.4);
    const SqueezeParams sq = SqueezeParams::polar(0.4, 0.3);
    const ClassicalTrajectory c = classical_flow(p, phase_point(cplx(0.5, 0.5), sq.u, sq.v), linspace(0.0, 8.0, 81));
    for (double e : c.energy) CHECK(e == doctest::Approx(c.energy.front()).epsilon(1e-10));
  }

  TEST_CASE("expressions") {
    CHECK(Expression::parse("1 + 0.5*sin(2*t)")(0.25) == doctest::Approx(1.0 + 0.5 * std::sin(0.5)));
    CHECK(Expression::parse("-t^2")(3.0) == doctest::Approx(-9.0));
    CHECK(Expression::parse("2^3^2")(0.0) == doctest::Approx(512.0));
    CHECK(Expression::parse("1 + step(t - 1)")(1.0) == 2.0);
    CHECK(Expression::parse("exp(log(pi))")(0.0) == doctest::Approx(3.14159265358979));
    CHECK(kind_of([] { Expression::parse("1 + "); }) == ErrorKind::InvalidInput);
    CHECK(kind_of([] { Expression::parse("foo(t)"); }) == ErrorKind::InvalidInput);
  }

  TEST_CASE("sampled profiles interpolate smooth data") {
    json samples = {{"t", json::array()}, {"omega", json::array()}};
    for (int i = 0; i <= 200; ++i) {
      samples["t"].push_back(0.05 * i);
      samples["omega"].push_back(1.0 + 0.2 * std::sin(0.05 * i));
    }
    const OscillatorProfile p = profile_from_json({{"kind", "omega"}, {"samples", samples}});
    CHECK(p.omega(3.333) == doctest::Approx(1.0 + 0.2 * std::sin(3.333)).epsilon(1e-6));
    CHECK(p.omega(50.0) == doctest::Approx(1.0 + 0.2 * std::sin(10.0)));
    CHECK(kind_of([] { profile_from_json({{"kind", "omega"}}); }) == ErrorKind::InvalidInput);
  }
}
