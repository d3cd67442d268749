#pragma once

#include <functional>
#include <string>
#include <vector>

#include "charur/states.hpp"

namespace charur {

using Scalar1D = std::function<double(double)>;

/// Either a frequency profile omega(t), H = omega0 (p^2 + omega^2 q^2 / omega0^2)/2,
/// or a quadratic profile H = omega0 [g1 p^2 + g2 (pq + qp) + g3 q^2].
struct OscillatorProfile {
  enum class Kind { Frequency, Quadratic };
  Kind kind = Kind::Frequency;
  double omega0 = 1.0;
  Scalar1D omega;
  Scalar1D g1, g2, g3;
  // Optional closed-form derivatives; central differences otherwise.
  Scalar1D dg1, ddg1, dg2;

  static OscillatorProfile frequency(Scalar1D omega, double omega0);
  static OscillatorProfile quadratic(Scalar1D g1, Scalar1D g2, Scalar1D g3, double omega0);

  /// Coefficients (g1, g2, g3) at t for either kind.
  double c1(double t) const;
  double c2(double t) const;
  double c3(double t) const;
};

/// Omega^2(t) of the reduced equation eps'' + Omega^2 eps = 0. Throws
/// SingularProfile where g1 = 0.
double effective_frequency(const OscillatorProfile& profile, double t);

struct IntegrationOptions {
  double abs_tol = 1e-13;
  double rel_tol = 1e-13;
  double drift_tol = 1e-8;
  int max_steps = 100000;  // per output interval; exceeding it throws StepSize
};

struct EpsilonTrajectory {
  std::vector<double> t;
  std::vector<cplx> eps, deps;
  double wronskian_drift = 0.0;  // max |eps* eps' - eps eps'* - 2i|
};

/// eps(t_grid[0]) = eps0, eps'(t_grid[0]) = deps0. Requires the Wronskian of
/// the initial data to be 2i within 1e-12; throws StepSize if the drift along
/// the grid exceeds drift_tol.
EpsilonTrajectory integrate_epsilon(const OscillatorProfile& profile, const std::vector<double>& t_grid, cplx eps0,
                                    cplx deps0, const IntegrationOptions& opts = {});

/// Canonical initial data eps(0) = 1/sqrt(omega0), eps'(0) = i sqrt(omega0).
EpsilonTrajectory integrate_epsilon(const OscillatorProfile& profile, const std::vector<double>& t_grid,
                                    const IntegrationOptions& opts = {});

struct UvTrajectory {
  std::vector<double> t;
  std::vector<cplx> u, v;
  double shell_drift = 0.0;  // max ||u|^2 - |v|^2 - 1|
};

/// u = (sqrt(omega0) eps + eps'/(i sqrt(omega0)))/2, v = u - sqrt(omega0) eps.
UvTrajectory uv_trajectory(const EpsilonTrajectory& traj, double omega0);

/// (u, v) of the invariant A(t) = c0^T M(t)^{-1} (q, p), c0 = (1, i)/sqrt2, where
/// M(t) is the classical flow of the Heisenberg equations from t_grid[0].
/// Valid for any quadratic profile.
UvTrajectory uv_from_flow(const OscillatorProfile& profile, const std::vector<double>& t_grid,
                          const IntegrationOptions& opts = {});

struct ClassicalPhasePoint {
  double q_mean = 0.0;
  double p_mean = 0.0;
  double q_t = 0.0;  // Dq
  double p_t = 0.0;  // Dpq / Dq
};

/// Phase point of the eigenstate of u a + v a† with eigenvalue alpha.
ClassicalPhasePoint phase_point(cplx alpha, cplx u, cplx v);

/// Expectation Hamiltonian omega0 [g1 (<p>^2 + p~^2 + 1/(4 q~^2)) +
/// 2 g2 (<p><q> + p~ q~) + g3 (<q>^2 + q~^2)].
double expectation_energy(const OscillatorProfile& profile, double t, const ClassicalPhasePoint& x);

struct ClassicalTrajectory {
  std::vector<double> t;
  std::vector<ClassicalPhasePoint> points;
  std::vector<double> energy;
};

/// Integrates both canonical pairs (<q>, <p>) and (q~, p~). Throws
/// SingularProfile if q~ collapses to 0.
ClassicalTrajectory classical_flow(const OscillatorProfile& profile, const ClassicalPhasePoint& init,
                                   const std::vector<double>& t_grid, const IntegrationOptions& opts = {});

/// Gaussian wavefunction of the eigenstate of u a + v a† (eigenvalue alpha) on
/// a position grid. The root of (u - v) is taken nearest to `sqrt_hint` when
/// the hint is nonzero (principal root otherwise). u = v throws
/// DegenerateParameter; |u| <= |v| throws InvalidInput.
CVector wavefunction(cplx alpha, cplx u, cplx v, const RVector& x, cplx sqrt_hint = 0.0);
CVector wavefunction(cplx alpha, const SqueezeParams& sq, const RVector& x);

/// Wavefunctions along a (u, v) trajectory with the root of (u - v) tracked by
/// continuity.
std::vector<CVector> wavefunction_series(cplx alpha, const UvTrajectory& uv, const RVector& x);

/// sum_n c_n psi_n(x) with Hermite functions psi_n.
CVector fock_to_grid(const CVector& amplitudes, const RVector& x);

/// Relative L2 residual of the best Gaussian exp(c0 + c1 x + c2 x^2) fitted to
/// log psi on points carrying at least `floor` of the peak density.
double gaussian_fit_residual(const CVector& psi, const RVector& x, double floor = 1e-6);

/// omega0 [g1 p^2 + g2 (pq + qp) + g3 q^2] + quartic q^4 on a Fock basis.
CMatrix quadratic_hamiltonian(double g1, double g2, double g3, double omega0, int cutoff, double quartic = 0.0);

/// exp(-i H t) psi for a time-independent Hamiltonian.
StateVector evolve_fock(const StateVector& psi, const CMatrix& h, double t);

/// Uniform grid of n points on [t0, t1].
std::vector<double> linspace(double t0, double t1, int n);

}  // namespace charur
