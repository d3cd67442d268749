#include "charur/dynamics.hpp"

#include <array>
#include <cmath>
#include <string>

#include <boost/numeric/odeint.hpp>
#include <unsupported/Eigen/MatrixFunctions>

#include "charur/error.hpp"
#include "charur/hilbert.hpp"

namespace charur {

namespace odeint = boost::numeric::odeint;

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr double kFdStep = 1e-5;

double d1(const Scalar1D& f, double t) { return (f(t + kFdStep) - f(t - kFdStep)) / (2.0 * kFdStep); }
double d2(const Scalar1D& f, double t) { return (f(t + kFdStep) - 2.0 * f(t) + f(t - kFdStep)) / (kFdStep * kFdStep); }

void check_grid(const std::vector<double>& t) {
  if (t.empty()) fail(ErrorKind::InvalidInput, "time grid is empty");
  for (std::size_t i = 1; i < t.size(); ++i) {
    if (!(t[i] > t[i - 1])) fail(ErrorKind::InvalidInput, "time grid must be strictly increasing");
  }
}

// Integrates x' = f(t, x) and records x at every grid time.
template <class State, class System>
std::vector<State> integrate_on_grid(System system, State x0, const std::vector<double>& t, const IntegrationOptions& opts) {
  std::vector<State> out;
  out.reserve(t.size());
  if (t.size() == 1) {
    out.push_back(x0);
    return out;
  }
  auto stepper = odeint::make_dense_output(opts.abs_tol, opts.rel_tol, odeint::runge_kutta_dopri5<State>());
  const double dt0 = std::min(1e-3, (t[1] - t[0]) / 4.0);
  try {
    odeint::integrate_times(stepper, system, x0, t.begin(), t.end(), dt0,
                            [&](const State& x, double) { out.push_back(x); }, odeint::max_step_checker(opts.max_steps));
  } catch (const odeint::step_adjustment_error& e) {
    fail(ErrorKind::StepSize, std::string("integration step size underflow: ") + e.what());
  } catch (const odeint::no_progress_error& e) {
    fail(ErrorKind::StepSize, std::string("integration step budget exhausted: ") + e.what());
  }
  if (out.size() != t.size()) fail(ErrorKind::StepSize, "integration stopped before the end of the grid");
  return out;
}

}  // namespace

OscillatorProfile OscillatorProfile::frequency(Scalar1D omega, double omega0) {
  if (!(omega0 > 0.0)) fail(ErrorKind::InvalidInput, "profile: omega0 must be > 0");
  OscillatorProfile p;
  p.kind = Kind::Frequency;
  p.omega0 = omega0;
  p.omega = std::move(omega);
  return p;
}

OscillatorProfile OscillatorProfile::quadratic(Scalar1D g1, Scalar1D g2, Scalar1D g3, double omega0) {
  if (!(omega0 > 0.0)) fail(ErrorKind::InvalidInput, "profile: omega0 must be > 0");
  OscillatorProfile p;
  p.kind = Kind::Quadratic;
  p.omega0 = omega0;
  p.g1 = std::move(g1);
  p.g2 = std::move(g2);
  p.g3 = std::move(g3);
  return p;
}

double OscillatorProfile::c1(double t) const { return kind == Kind::Frequency ? 0.5 : g1(t); }
double OscillatorProfile::c2(double t) const { return kind == Kind::Frequency ? 0.0 : g2(t); }
double OscillatorProfile::c3(double t) const {
  if (kind == Kind::Frequency) {
    const double w = omega(t) / omega0;
    return 0.5 * w * w;
  }
  return g3(t);
}

double effective_frequency(const OscillatorProfile& p, double t) {
  if (p.kind == OscillatorProfile::Kind::Frequency) {
    const double w = p.omega(t);
    return w * w;
  }
  const double w0 = p.omega0;
  const double a = p.g1(t), b = p.g2(t), c = p.g3(t);
  if (a == 0.0 || !std::isfinite(a)) fail(ErrorKind::SingularProfile, "effective_frequency: g1(t) = 0 at t = " + std::to_string(t));
  const double da = p.dg1 ? p.dg1(t) : d1(p.g1, t);
  const double dda = p.ddg1 ? p.ddg1(t) : d2(p.g1, t);
  const double db = p.dg2 ? p.dg2(t) : d1(p.g2, t);
  return 4.0 * w0 * w0 * a * c + 2.0 * w0 * b * da / a + dda / (2.0 * a) - 3.0 * da * da / (4.0 * a * a) -
         4.0 * w0 * w0 * b * b - 2.0 * w0 * db;
}

EpsilonTrajectory integrate_epsilon(const OscillatorProfile& profile, const std::vector<double>& t_grid, cplx eps0,
                                    cplx deps0, const IntegrationOptions& opts) {
  check_grid(t_grid);
  const cplx w0 = std::conj(eps0) * deps0 - eps0 * std::conj(deps0);
  if (std::abs(w0 - 2.0 * kI) > 1e-12) fail(ErrorKind::InvalidInput, "integrate_epsilon: initial Wronskian must be 2i");

  using State = std::array<double, 4>;  // Re eps, Im eps, Re eps', Im eps'
  auto system = [&](const State& x, State& dx, double t) {
    const double om2 = effective_frequency(profile, t);
    dx[0] = x[2];
    dx[1] = x[3];
    dx[2] = -om2 * x[0];
    dx[3] = -om2 * x[1];
  };
  const auto states = integrate_on_grid(system, State{eps0.real(), eps0.imag(), deps0.real(), deps0.imag()}, t_grid, opts);

  EpsilonTrajectory out;
  out.t = t_grid;
  for (const State& x : states) {
    const cplx e{x[0], x[1]}, de{x[2], x[3]};
    out.eps.push_back(e);
    out.deps.push_back(de);
    const cplx w = std::conj(e) * de - e * std::conj(de);
    out.wronskian_drift = std::max(out.wronskian_drift, std::abs(w - 2.0 * kI));
  }
  if (out.wronskian_drift > opts.drift_tol) {
    fail(ErrorKind::StepSize, "integrate_epsilon: Wronskian drift " + std::to_string(out.wronskian_drift) + " exceeds tolerance");
  }
  return out;
}

EpsilonTrajectory integrate_epsilon(const OscillatorProfile& profile, const std::vector<double>& t_grid,
                                    const IntegrationOptions& opts) {
  const double s = std::sqrt(profile.omega0);
  return integrate_epsilon(profile, t_grid, 1.0 / s, kI * s, opts);
}

UvTrajectory uv_trajectory(const EpsilonTrajectory& traj, double omega0) {
  if (!(omega0 > 0.0)) fail(ErrorKind::InvalidInput, "uv_trajectory: omega0 must be > 0");
  const double s = std::sqrt(omega0);
  UvTrajectory out;
  out.t = traj.t;
  for (std::size_t i = 0; i < traj.t.size(); ++i) {
    const cplx u = 0.5 * (s * traj.eps[i] + traj.deps[i] / (kI * s));
    const cplx v = u - s * traj.eps[i];
    out.u.push_back(u);
    out.v.push_back(v);
    out.shell_drift = std::max(out.shell_drift, std::abs(std::norm(u) - std::norm(v) - 1.0));
  }
  return out;
}

UvTrajectory uv_from_flow(const OscillatorProfile& profile, const std::vector<double>& t_grid,
                          const IntegrationOptions& opts) {
  check_grid(t_grid);
  // Columns of M: d/dt (q, p) = w0 [[2 g2, 2 g1], [-2 g3, -2 g2]] (q, p).
  using State = std::array<double, 4>;  // M00, M10, M01, M11
  const double w0 = profile.omega0;
  auto system = [&](const State& m, State& dm, double t) {
    const double a = profile.c1(t), b = profile.c2(t), c = profile.c3(t);
    for (int col = 0; col < 2; ++col) {
      const double q = m[2 * col], p = m[2 * col + 1];
      dm[2 * col] = w0 * (2.0 * b * q + 2.0 * a * p);
      dm[2 * col + 1] = -w0 * (2.0 * c * q + 2.0 * b * p);
    }
  };
  const auto states = integrate_on_grid(system, State{1.0, 0.0, 0.0, 1.0}, t_grid, opts);

  UvTrajectory out;
  out.t = t_grid;
  const double r2 = std::sqrt(2.0);
  for (const State& m : states) {
    // M^{-1} for det M = 1 (Liouville): [[M11, -M01], [-M10, M00]].
    const double det = m[0] * m[3] - m[2] * m[1];
    const double i00 = m[3] / det, i01 = -m[2] / det, i10 = -m[1] / det, i11 = m[0] / det;
    const cplx cq = (i00 + kI * i10) / r2;
    const cplx cp = (i01 + kI * i11) / r2;
    const cplx u = (cq - kI * cp) / r2;
    const cplx v = (cq + kI * cp) / r2;
    out.u.push_back(u);
    out.v.push_back(v);
    out.shell_drift = std::max(out.shell_drift, std::abs(std::norm(u) - std::norm(v) - 1.0));
  }
  return out;
}

ClassicalPhasePoint phase_point(cplx alpha, cplx u, cplx v) {
  const double r2 = std::sqrt(2.0);
  ClassicalPhasePoint x;
  x.q_mean = r2 * (alpha * (std::conj(u) - std::conj(v))).real();
  x.p_mean = r2 * (alpha * (std::conj(u) + std::conj(v))).imag();
  x.q_t = std::abs(u - v) / r2;
  x.p_t = (u * std::conj(v)).imag() / x.q_t;
  return x;
}

double expectation_energy(const OscillatorProfile& profile, double t, const ClassicalPhasePoint& x) {
  const double a = profile.c1(t), b = profile.c2(t), c = profile.c3(t);
  return profile.omega0 * (a * (x.p_mean * x.p_mean + x.p_t * x.p_t + 1.0 / (4.0 * x.q_t * x.q_t)) +
                           2.0 * b * (x.p_mean * x.q_mean + x.p_t * x.q_t) + c * (x.q_mean * x.q_mean + x.q_t * x.q_t));
}

ClassicalTrajectory classical_flow(const OscillatorProfile& profile, const ClassicalPhasePoint& init,
                                   const std::vector<double>& t_grid, const IntegrationOptions& opts) {
  check_grid(t_grid);
  if (!(init.q_t > 0.0)) fail(ErrorKind::InvalidInput, "classical_flow: q~(0) must be > 0");
  using State = std::array<double, 4>;  // <q>, <p>, q~, p~
  const double w0 = profile.omega0;
  auto system = [&](const State& x, State& dx, double t) {
    const double a = profile.c1(t), b = profile.c2(t), c = profile.c3(t);
    if (!(x[2] > 1e-12)) fail(ErrorKind::SingularProfile, "classical_flow: q~ collapsed to 0 at t = " + std::to_string(t));
    dx[0] = w0 * (2.0 * a * x[1] + 2.0 * b * x[0]);
    dx[1] = -w0 * (2.0 * b * x[1] + 2.0 * c * x[0]);
    dx[2] = w0 * (2.0 * a * x[3] + 2.0 * b * x[2]);
    dx[3] = -w0 * (-a / (2.0 * x[2] * x[2] * x[2]) + 2.0 * b * x[3] + 2.0 * c * x[2]);
  };
  const auto states = integrate_on_grid(system, State{init.q_mean, init.p_mean, init.q_t, init.p_t}, t_grid, opts);
  ClassicalTrajectory out;
  out.t = t_grid;
  for (std::size_t i = 0; i < states.size(); ++i) {
    const State& x = states[i];
    ClassicalPhasePoint pt{x[0], x[1], x[2], x[3]};
    out.points.push_back(pt);
    out.energy.push_back(expectation_energy(profile, t_grid[i], pt));
  }
  return out;
}

CVector wavefunction(cplx alpha, cplx u, cplx v, const RVector& x, cplx sqrt_hint) {
  const double scale = std::max(std::abs(u), std::abs(v));
  if (std::abs(u - v) <= 1e-14 * std::max(scale, 1.0)) {
    fail(ErrorKind::DegenerateParameter, "wavefunction: u = v is the infinitely squeezed limit");
  }
  if (!(std::abs(u) > std::abs(v))) fail(ErrorKind::InvalidInput, "wavefunction: requires |u| > |v|");
  cplx root = std::sqrt(u - v);
  if (sqrt_hint != 0.0 && std::abs(root - sqrt_hint) > std::abs(-root - sqrt_hint)) root = -root;
  const cplx width = (u + v) / (u - v);
  const cplx center = std::sqrt(2.0) * alpha / (u + v);
  const cplx constant = 0.5 * ((std::conj(u) + std::conj(v)) / (u + v) * alpha * alpha - std::norm(alpha));
  const double pref = std::pow(kPi, -0.25);
  CVector psi(x.size());
  for (Eigen::Index i = 0; i < x.size(); ++i) {
    const cplx d = x(i) - center;
    psi(i) = pref / root * std::exp(-0.5 * width * d * d + constant);
  }
  return psi;
}

CVector wavefunction(cplx alpha, const SqueezeParams& sq, const RVector& x) { return wavefunction(alpha, sq.u, sq.v, x); }

std::vector<CVector> wavefunction_series(cplx alpha, const UvTrajectory& uv, const RVector& x) {
  std::vector<CVector> out;
  cplx hint = 0.0;
  for (std::size_t i = 0; i < uv.t.size(); ++i) {
    cplx root = std::sqrt(uv.u[i] - uv.v[i]);
    if (hint != 0.0 && std::abs(root - hint) > std::abs(-root - hint)) root = -root;
    out.push_back(wavefunction(alpha, uv.u[i], uv.v[i], x, root));
    hint = root;
  }
  return out;
}

CVector fock_to_grid(const CVector& amplitudes, const RVector& x) {
  CVector psi = CVector::Zero(x.size());
  const Eigen::Index n = amplitudes.size();
  for (Eigen::Index i = 0; i < x.size(); ++i) {
    const double xi = x(i);
    double prev = 0.0;
    double cur = std::pow(kPi, -0.25) * std::exp(-0.5 * xi * xi);
    cplx acc = amplitudes(0) * cur;
    for (Eigen::Index k = 0; k + 1 < n; ++k) {
      const double next = std::sqrt(2.0 / (k + 1.0)) * xi * cur - std::sqrt(k / (k + 1.0)) * prev;
      prev = cur;
      cur = next;
      acc += amplitudes(k + 1) * cur;
    }
    psi(i) = acc;
  }
  return psi;
}

double gaussian_fit_residual(const CVector& psi, const RVector& x, double floor) {
  if (psi.size() != x.size() || x.size() < 3) fail(ErrorKind::InvalidInput, "gaussian_fit_residual: grid mismatch");
  const double peak = psi.cwiseAbs2().maxCoeff();
  if (!(peak > 0.0)) fail(ErrorKind::InvalidInput, "gaussian_fit_residual: zero wavefunction");
  std::vector<Eigen::Index> idx;
  for (Eigen::Index i = 0; i < x.size(); ++i) {
    if (std::norm(psi(i)) >= floor * peak) idx.push_back(i);
  }
  if (idx.size() < 3) fail(ErrorKind::InvalidInput, "gaussian_fit_residual: too few significant points");
  // Unwrap the phase along the significant points, which are contiguous for a
  // single-peaked state; gaps restart the unwrapping from the raw phase.
  const Eigen::Index m = static_cast<Eigen::Index>(idx.size());
  CMatrix design(m, 3);
  CVector target(m);
  RVector weight(m);
  double prev_phase = 0.0;
  for (Eigen::Index r = 0; r < m; ++r) {
    const cplx val = psi(idx[r]);
    double phase = std::arg(val);
    if (r > 0) {
      while (phase - prev_phase > kPi) phase -= 2.0 * kPi;
      while (phase - prev_phase < -kPi) phase += 2.0 * kPi;
    }
    prev_phase = phase;
    const double xi = x(idx[r]);
    weight(r) = std::abs(val);
    design(r, 0) = weight(r);
    design(r, 1) = weight(r) * xi;
    design(r, 2) = weight(r) * xi * xi;
    target(r) = weight(r) * cplx(std::log(std::abs(val)), phase);
  }
  const CVector coef = design.colPivHouseholderQr().solve(target);
  CVector fit(x.size());
  for (Eigen::Index i = 0; i < x.size(); ++i) {
    const double xi = x(i);
    fit(i) = std::exp(coef(0) + coef(1) * xi + coef(2) * xi * xi);
  }
  return (psi - fit).norm() / psi.norm();
}

CMatrix quadratic_hamiltonian(double g1, double g2, double g3, double omega0, int cutoff, double quartic) {
  const BosonOps b = boson_rep(cutoff);
  const CMatrix& q = b.q.matrix;
  const CMatrix& p = b.p.matrix;
  CMatrix h = omega0 * (g1 * p * p + g2 * (p * q + q * p) + g3 * q * q);
  if (quartic != 0.0) {
    const CMatrix q2 = q * q;
    h += quartic * q2 * q2;
  }
  return 0.5 * (h + h.adjoint());
}

StateVector evolve_fock(const StateVector& psi, const CMatrix& h, double t) {
  if (h.rows() != psi.dim() || h.cols() != psi.dim()) fail(ErrorKind::BasisMismatch, "evolve_fock: dimension mismatch");
  Eigen::SelfAdjointEigenSolver<CMatrix> es(h);
  if (es.info() != Eigen::Success) fail(ErrorKind::Numeric, "evolve_fock: eigensolver failed");
  const CMatrix& vecs = es.eigenvectors();
  CVector coeff = vecs.adjoint() * psi.amplitudes();
  for (Eigen::Index i = 0; i < coeff.size(); ++i) coeff(i) *= std::polar(1.0, -es.eigenvalues()(i) * t);
  return StateVector::from_amplitudes(psi.basis(), vecs * coeff, "evolved", psi.params());
}

std::vector<double> linspace(double t0, double t1, int n) {
  if (n < 1) fail(ErrorKind::InvalidInput, "linspace: need at least one point");
  std::vector<double> t(n);
  for (int i = 0; i < n; ++i) t[i] = n == 1 ? t0 : t0 + (t1 - t0) * i / (n - 1.0);
  return t;
}

}  // namespace charur
