#include <random>

#include "doctest.h"

#include "charur/error.hpp"
#include "charur/metrics.hpp"
#include "charur/states.hpp"

using namespace charur;

TEST_SUITE("metrics") {
  TEST_CASE("identity observable reproduces the overlap") {
    std::mt19937_64 rng(12);
    const BasisSpec b = BasisSpec::fock(16);
    const StateVector a = random_state(b, rng), c = random_state(b, rng);
    const DistanceResult d = g_overlap(a, c, identity_op(b));
    CHECK(d.g == doctest::Approx(ray_overlap(a, c)).epsilon(1e-14));
    CHECK(d.d_sq == doctest::Approx(2.0 * (1.0 - d.g)));
    CHECK(d.observable == identity_op(b).label);
    CHECK(g_overlap(a, a, identity_op(b)).g == 1.0);
  }

  TEST_CASE("K3 weighting on su(1,1) states") {
    const Operator k3 = su11_rep(0.5, 64).k3;
    const StateVector a = su11_cs(0.3, 0.5, 64), c = su11_cs(cplx(0.0, 0.3), 0.5, 64);
    const DistanceResult ac = g_overlap(a, c, k3), ca = g_overlap(c, a, k3);
    CHECK(ac.g == ca.g);
    CHECK(ac.g < 1.0);
    CHECK(g_overlap(a, a, k3).g == 1.0);
  }

  TEST_CASE("observable contract") {
    const BosonOps ops = boson_rep(8);
    const StateVector a = fock_state(0, 8);
    try {
      g_overlap(a, a, ops.q);  // indefinite
      FAIL("expected InvalidObservable");
    } catch (const Error& e) {
      CHECK(e.kind() == ErrorKind::InvalidObservable);
    }
    try {
      g_overlap(a, fock_state(0, 9), identity_op(BasisSpec::fock(8)));
      FAIL("expected BasisMismatch");
    } catch (const Error& e) {
      CHECK(e.kind() == ErrorKind::BasisMismatch);
    }
  }
}
