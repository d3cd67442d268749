#include <random>

#include "doctest.h"
#include "oracles.hpp"

#include "charur/error.hpp"
#include "charur/matrixkit.hpp"
#include "charur/moments.hpp"

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

TEST_SUITE("moments") {
  TEST_CASE("Fock states") {
    const ObservableSet qp = canonical_set(1, 32);
    for (int n : {0, 1, 5}) {
      const MomentReport m = moment_report(qp, fock_state(n, 32));
      CHECK(m.sigma(0, 0) == doctest::Approx(n + 0.5).epsilon(1e-14));
      CHECK(m.sigma(1, 1) == doctest::Approx(n + 0.5).epsilon(1e-14));
      CHECK(std::abs(m.sigma(0, 1)) <= 1e-14);
      CHECK(m.commut(0, 1) == doctest::Approx(0.5).epsilon(1e-14));
      CHECK(m.commut(1, 0) == doctest::Approx(-0.5).epsilon(1e-14));
    }
  }

  TEST_CASE("Glauber means and variances") {
    const cplx alpha(0.8, -1.2);
    const MomentReport m = moment_report(canonical_set(1, 64), glauber(alpha, 64));
    CHECK(m.means(0) == doctest::Approx(std::sqrt(2.0) * alpha.real()).epsilon(1e-13));
    CHECK(m.means(1) == doctest::Approx(std::sqrt(2.0) * alpha.imag()).epsilon(1e-13));
    CHECK(m.sigma.isApprox(0.5 * RMatrix::Identity(2, 2), 1e-12));
  }

  TEST_CASE("squeezed-state moments match the (u, v) closed form") {
    for (const auto& [u, v] : std::vector<std::pair<cplx, cplx>>{{std::cosh(0.5), std::polar(std::sinh(0.5), 0.9)},
                                                                  {std::polar(1.3, 0.4), std::polar(0.6, -2.0)}}) {
      const SqueezeParams sq = SqueezeParams::make(u, v);
      const MomentReport m = moment_report(canonical_set(1, 96), canonical_ss(cplx(0.3, 0.2), sq, 96));
      const UvMoments w = uv_moments(sq);
      CHECK(m.sigma(0, 0) == doctest::Approx(w.dq2).epsilon(1e-12));
      CHECK(m.sigma(1, 1) == doctest::Approx(w.dp2).epsilon(1e-12));
      CHECK(m.sigma(0, 1) == doctest::Approx(w.dpq).epsilon(1e-12));
    }
  }

  TEST_CASE("heavy tails are refused unless allowed") {
    CVector amps = CVector::Ones(20);
    const StateVector s = StateVector::from_amplitudes(BasisSpec::fock(20), amps);
    const ObservableSet qp = canonical_set(1, 20);
    CHECK(kind_of([&] { moment_report(qp, s); }) == ErrorKind::Truncation);
    MomentOptions opts;
    opts.allow_tail = true;
    CHECK(moment_report(qp, s, opts).tail_mass == doctest::Approx(0.1));
  }

  TEST_CASE("pure and density routes agree; mixtures") {
    std::mt19937_64 rng(21);
    const ObservableSet set = su11_set(0.5, 24);
    const StateVector psi = random_state(set.basis(), rng);
    const MomentReport a = moment_report(set, psi);
    const MomentReport b = moment_report(set, DensityMatrix::from_state(psi));
    CHECK((a.sigma - b.sigma).norm() <= 1e-12);
    CHECK((a.commut - b.commut).norm() <= 1e-12);

    const ObservableSet qp = canonical_set(1, 16);
    const DensityMatrix mix = DensityMatrix::mixture({fock_state(0, 16), fock_state(1, 16)}, {1.0, 1.0});
    CHECK(moment_report(qp, mix).sigma(0, 0) == doctest::Approx(1.0));
  }

  TEST_CASE("serial and parallel kernels give the same report") {
    std::mt19937_64 rng(2);
    const ObservableSet set = canonical_set(2, 8);
    const StateVector psi = random_state(set.basis(), rng);
    MomentOptions par;
    par.parallel = true;
    const MomentReport a = moment_report(set, psi), b = moment_report(set, psi, par);
    CHECK(a.sigma == b.sigma);
    CHECK(a.commut == b.commut);
  }

  TEST_CASE("single-mode Gaussian sigma") {
    const SqueezeParams sq = SqueezeParams::polar(0.4, 1.3);
    CMatrix u(1, 1), v(1, 1), ct(1, 1);
    u(0, 0) = sq.u;
    v(0, 0) = sq.v;
    ct(0, 0) = 1.0;
    const RMatrix s = gaussian_sigma(u, v, ct);
    const UvMoments w = uv_moments(sq);
    CHECK(s(0, 0) == doctest::Approx(w.dq2).epsilon(1e-13));
    CHECK(s(1, 1) == doctest::Approx(w.dp2).epsilon(1e-13));
    CHECK(s(0, 1) == doctest::Approx(w.dpq).epsilon(1e-13));
    // Pair form with <[q, p]> = i.
    CHECK(gaussian_sigma_pair(sq.u, sq.v, kI).isApprox(s, 1e-13));
    u(0, 0) = 1.0;
    v(0, 0) = 1.0;
    CHECK(kind_of([&] { gaussian_sigma(u, v, ct); }) == ErrorKind::InvalidInput);
  }

  TEST_CASE("two-mode Gaussian sigma against a Fock-space Bogoliubov vacuum") {
    // T = exp([[-iH, Z], [Z*, iH*]]) with H Hermitian and Z symmetric is
    // symplectic: u u† - v v† = I and u v^T = v u^T.
    CMatrix h(2, 2), z(2, 2);
    h << 0.3, cplx(0.1, -0.2), cplx(0.1, 0.2), -0.4;
    z << cplx(0.15, 0.05), cplx(-0.1, 0.08), cplx(-0.1, 0.08), cplx(0.05, -0.12);
    CMatrix x(4, 4);
    x << -kI * h, z, z.conjugate(), kI * h.conjugate();
    const CMatrix t = expm(x);
    const CMatrix u = t.topLeftCorner(2, 2), v = t.topRightCorner(2, 2);
    CHECK((u * u.adjoint() - v * v.adjoint() - CMatrix::Identity(2, 2)).norm() <= 1e-13);
    CHECK((u * v.transpose() - v * u.transpose()).norm() <= 1e-13);

    // Vacuum of b_i = sum_j u_ij a_j + v_ij a_j†: kernel of sum_i b_i† b_i.
    const int n = 14;
    const MultimodeOps m = tensor_rep(2, n);
    CMatrix number = CMatrix::Zero(n * n, n * n);
    for (int i = 0; i < 2; ++i) {
      CMatrix b = CMatrix::Zero(n * n, n * n);
      for (int j = 0; j < 2; ++j) b += u(i, j) * m.a[j].matrix + v(i, j) * m.adag[j].matrix;
      number += b.adjoint() * b;
    }
    Eigen::SelfAdjointEigenSolver<CMatrix> es(number);
    const StateVector vac = StateVector::from_amplitudes(m.a[0].basis, es.eigenvectors().col(0));
    CHECK(es.eigenvalues()(0) <= 1e-8);

    const RMatrix want = moment_report(canonical_set(2, n), vac).sigma;
    const RMatrix got = gaussian_sigma(u, v, CMatrix::Identity(2, 2));
    CHECK((got - want).cwiseAbs().maxCoeff() <= 1e-7);
  }

  TEST_CASE("observable registry") {
    const BasisSpec su11 = basis_for_observables("su11:1/2", 16);
    CHECK(su11 == BasisSpec::su11(0.5, 16));
    CHECK(observable_set("su11", su11).size() == 3);
    CHECK(observable_set("su11:0.5", su11).labels() == std::vector<std::string>{"K1", "K2", "K3"});
    CHECK(kind_of([&] { observable_set("su11:1", su11); }) == ErrorKind::BasisMismatch);
    CHECK(kind_of([] { basis_for_observables("canonical:3", 8); }) == ErrorKind::UnsupportedScale);
    CHECK(kind_of([] { basis_for_observables("spin", 8); }) == ErrorKind::InvalidInput);
    CHECK(observable_set("canonical:2", BasisSpec::multimode(2, 4)).size() == 4);
    CHECK(observable_set("a2-quadratures", BasisSpec::fock(10)).size() == 2);
    CHECK(observable_set("su2:1", BasisSpec::su2(1.0)).size() == 3);
  }

  TEST_CASE("observable sets must be Hermitian") {
    const BosonOps b = boson_rep(6);
    CHECK(kind_of([&] { ObservableSet::make("bad", {b.a, b.q}); }) == ErrorKind::InvalidObservable);
  }
}
