#include "charur/hilbert.hpp"

#include <cmath>
#include <cstdlib>
#include <numeric>
#include <sstream>

#include <unsupported/Eigen/KroneckerProduct>

#include "charur/error.hpp"
#include "charur/matrixkit.hpp"

namespace charur {

namespace {

void require_cutoff(int cutoff, const char* what) {
  if (cutoff < 2) fail(ErrorKind::InvalidInput, std::string(what) + ": cutoff must be >= 2");
}

bool is_half_integer(double j) {
  const double twice = 2.0 * j;
  return twice >= 1.0 && std::abs(twice - std::round(twice)) < 1e-12;
}

Operator make_op(std::string label, CMatrix m, const BasisSpec& basis, bool hermitian) {
  return Operator{std::move(label), std::move(m), basis, hermitian};
}

// Number of top levels per mode that count as the truncation tail.
int tail_levels(int cutoff) { return (cutoff + 9) / 10; }

}  // namespace

BasisSpec BasisSpec::fock(int cutoff) {
  require_cutoff(cutoff, "fock basis");
  return BasisSpec{BasisKind::Fock, cutoff, 0.0, 0.0, 1};
}

BasisSpec BasisSpec::su11(double k, int cutoff) {
  if (!(k > 0.0) || !std::isfinite(k)) fail(ErrorKind::InvalidInput, "su11 basis: Bargmann index k must be > 0");
  require_cutoff(cutoff, "su11 basis");
  return BasisSpec{BasisKind::Su11, cutoff, k, 0.0, 1};
}

BasisSpec BasisSpec::su2(double j) {
  if (!is_half_integer(j)) fail(ErrorKind::InvalidInput, "su2 basis: 2j must be a positive integer");
  const double jj = std::round(2.0 * j) / 2.0;
  return BasisSpec{BasisKind::Su2, static_cast<int>(std::lround(2.0 * jj)) + 1, 0.0, jj, 1};
}

BasisSpec BasisSpec::multimode(int modes, int cutoff) {
  if (modes > 2) fail(ErrorKind::UnsupportedScale, "multimode basis: at most 2 modes are supported");
  if (modes < 1) fail(ErrorKind::InvalidInput, "multimode basis: need at least one mode");
  require_cutoff(cutoff, "multimode basis");
  return BasisSpec{BasisKind::Multimode, cutoff, 0.0, 0.0, modes};
}

int BasisSpec::dim() const {
  if (kind == BasisKind::Multimode) return modes == 1 ? cutoff : cutoff * cutoff;
  return cutoff;
}

std::string BasisSpec::describe() const {
  std::ostringstream os;
  switch (kind) {
    case BasisKind::Fock: os << "fock(N=" << cutoff << ")"; break;
    case BasisKind::Su11: os << "su11(k=" << k << ", N=" << cutoff << ")"; break;
    case BasisKind::Su2: os << "su2(j=" << j << ")"; break;
    case BasisKind::Multimode: os << "multimode(s=" << modes << ", N=" << cutoff << ")"; break;
  }
  return os.str();
}

int default_fock_cutoff() {
  if (const char* env = std::getenv("CHARUR_CUTOFF")) {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && v >= 2 && v <= 4096) return static_cast<int>(v);
  }
  return kDefaultFockCutoff;
}

double top_decile_mass(const BasisSpec& basis, const CVector& amplitudes) {
  if (!basis.truncated()) return 0.0;
  const int n = basis.cutoff;
  const int first_tail = n - tail_levels(n);
  double mass = 0.0;
  if (basis.kind == BasisKind::Multimode && basis.modes == 2) {
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) {
        if (i >= first_tail || j >= first_tail) mass += std::norm(amplitudes(i * n + j));
      }
    }
    return mass;
  }
  for (int i = first_tail; i < amplitudes.size(); ++i) mass += std::norm(amplitudes(i));
  return mass;
}

double tail_mass(const StateVector& psi, int level) {
  if (level < 0 || level >= psi.dim()) fail(ErrorKind::InvalidInput, "tail_mass: level outside basis");
  return psi.amplitudes().tail(psi.dim() - level).squaredNorm();
}

StateVector StateVector::from_amplitudes(const BasisSpec& basis, CVector amplitudes, std::string family,
                                         std::map<std::string, cplx> params) {
  if (amplitudes.size() != basis.dim()) {
    fail(ErrorKind::InvalidInput, "state: amplitude count " + std::to_string(amplitudes.size()) +
                                      " does not match " + basis.describe());
  }
  if (!amplitudes.allFinite()) fail(ErrorKind::InvalidInput, "state: non-finite amplitude");
  const double norm = amplitudes.norm();
  if (!(norm > 0.0)) fail(ErrorKind::InvalidInput, "state: null vector cannot be normalized");
  amplitudes /= norm;

  StateVector s;
  s.tail_mass_ = top_decile_mass(basis, amplitudes);
  s.amplitudes_ = std::move(amplitudes);
  s.basis_ = basis;
  s.family_ = std::move(family);
  s.params_ = std::move(params);
  return s;
}

StateVector StateVector::restore(const BasisSpec& basis, CVector amplitudes, std::string family,
                                 std::map<std::string, cplx> params) {
  if (amplitudes.size() != basis.dim()) fail(ErrorKind::InvalidInput, "state: amplitude count does not match basis");
  if (!amplitudes.allFinite()) fail(ErrorKind::InvalidInput, "state: non-finite amplitude");
  if (std::abs(amplitudes.norm() - 1.0) > tol::kNormalization) fail(ErrorKind::InvalidInput, "state: amplitudes not normalized");
  StateVector s;
  s.tail_mass_ = top_decile_mass(basis, amplitudes);
  s.amplitudes_ = std::move(amplitudes);
  s.basis_ = basis;
  s.family_ = std::move(family);
  s.params_ = std::move(params);
  return s;
}

DensityMatrix DensityMatrix::from_matrix(const BasisSpec& basis, CMatrix rho) {
  require_square_finite(rho, "density matrix");
  if (rho.rows() != basis.dim()) fail(ErrorKind::InvalidInput, "density matrix: dimension does not match basis");
  if (!is_hermitian(rho, tol::kHermitian)) fail(ErrorKind::InvalidInput, "density matrix: not Hermitian");
  if (std::abs(rho.trace() - 1.0) > tol::kNormalization) fail(ErrorKind::InvalidInput, "density matrix: trace != 1");
  rho = 0.5 * (rho + rho.adjoint()).eval();
  if (psd_min_eig(rho) < -tol::kPsd) fail(ErrorKind::InvalidInput, "density matrix: not positive semidefinite");

  DensityMatrix d;
  d.basis_ = basis;
  // Tail mass is the diagonal weight on the top decile of levels.
  CVector diag_sqrt = rho.diagonal().real().cwiseMax(0.0).cwiseSqrt().cast<cplx>();
  d.tail_mass_ = top_decile_mass(basis, diag_sqrt);
  d.matrix_ = std::move(rho);
  return d;
}

DensityMatrix DensityMatrix::from_state(const StateVector& psi) {
  DensityMatrix d;
  d.basis_ = psi.basis();
  d.matrix_ = psi.amplitudes() * psi.amplitudes().adjoint();
  d.tail_mass_ = psi.tail_mass();
  return d;
}

DensityMatrix DensityMatrix::mixture(const std::vector<StateVector>& states, const std::vector<double>& weights) {
  if (states.empty() || states.size() != weights.size()) {
    fail(ErrorKind::InvalidInput, "mixture: need one weight per state");
  }
  const double total = std::accumulate(weights.begin(), weights.end(), 0.0);
  if (!(total > 0.0)) fail(ErrorKind::InvalidInput, "mixture: weights must have positive sum");
  const BasisSpec& basis = states.front().basis();
  CMatrix rho = CMatrix::Zero(basis.dim(), basis.dim());
  for (std::size_t i = 0; i < states.size(); ++i) {
    if (!(states[i].basis() == basis)) fail(ErrorKind::BasisMismatch, "mixture: states on different bases");
    if (weights[i] < 0.0) fail(ErrorKind::InvalidInput, "mixture: negative weight");
    rho += (weights[i] / total) * states[i].amplitudes() * states[i].amplitudes().adjoint();
  }
  return from_matrix(basis, std::move(rho));
}

BosonOps boson_rep(int cutoff) {
  require_cutoff(cutoff, "boson_rep");
  const BasisSpec basis = BasisSpec::fock(cutoff);
  CMatrix a = CMatrix::Zero(cutoff, cutoff);
  for (int n = 1; n < cutoff; ++n) a(n - 1, n) = std::sqrt(static_cast<double>(n));
  const CMatrix adag = a.adjoint();
  const double r2 = std::sqrt(2.0);
  CMatrix q = (a + adag) / r2;
  CMatrix p = (a - adag) / (kI * r2);
  CMatrix num = CMatrix::Zero(cutoff, cutoff);
  for (int n = 0; n < cutoff; ++n) num(n, n) = n;
  return BosonOps{make_op("a", a, basis, false), make_op("a+", adag, basis, false), make_op("q", q, basis, true),
                  make_op("p", p, basis, true), make_op("n", num, basis, true)};
}

Su11Ops su11_rep(double k, int cutoff) {
  const BasisSpec basis = BasisSpec::su11(k, cutoff);
  CMatrix kp = CMatrix::Zero(cutoff, cutoff);
  CMatrix k3 = CMatrix::Zero(cutoff, cutoff);
  for (int n = 0; n < cutoff; ++n) {
    k3(n, n) = k + n;
    if (n + 1 < cutoff) kp(n + 1, n) = std::sqrt((n + 1.0) * (2.0 * k + n));
  }
  const CMatrix km = kp.adjoint();
  CMatrix k1 = (kp + km) / 2.0;
  CMatrix k2 = (kp - km) / (2.0 * kI);
  return Su11Ops{make_op("K1", k1, basis, true), make_op("K2", k2, basis, true), make_op("K3", k3, basis, true),
                 make_op("K+", kp, basis, false), make_op("K-", km, basis, false)};
}

Su11Ops su11_bosonic_sector(double k, int cutoff) {
  int parity = -1;
  if (std::abs(k - 0.25) < 1e-15) parity = 0;
  if (std::abs(k - 0.75) < 1e-15) parity = 1;
  if (parity < 0) fail(ErrorKind::InvalidInput, "su11_bosonic_sector: k must be 1/4 or 3/4");
  require_cutoff(cutoff, "su11_bosonic_sector");

  // Fock space large enough that the sector's top level still has its K+ image.
  const int fock_n = 2 * cutoff + 2;
  const BosonOps b = boson_rep(fock_n);
  const CMatrix kp_full = b.adag.matrix * b.adag.matrix / 2.0;
  const CMatrix k3_full = b.n.matrix / 2.0 + 0.25 * CMatrix::Identity(fock_n, fock_n);

  CMatrix kp(cutoff, cutoff), k3(cutoff, cutoff);
  for (int r = 0; r < cutoff; ++r) {
    for (int c = 0; c < cutoff; ++c) {
      kp(r, c) = kp_full(2 * r + parity, 2 * c + parity);
      k3(r, c) = k3_full(2 * r + parity, 2 * c + parity);
    }
  }
  const BasisSpec basis = BasisSpec::su11(k, cutoff);
  const CMatrix km = kp.adjoint();
  CMatrix k1 = (kp + km) / 2.0;
  CMatrix k2 = (kp - km) / (2.0 * kI);
  return Su11Ops{make_op("K1", k1, basis, true), make_op("K2", k2, basis, true), make_op("K3", k3, basis, true),
                 make_op("K+", kp, basis, false), make_op("K-", km, basis, false)};
}

Su2Ops su2_rep(double j) {
  const BasisSpec basis = BasisSpec::su2(j);
  const int d = basis.dim();
  const double jj = basis.j;
  CMatrix jp = CMatrix::Zero(d, d);
  CMatrix j3 = CMatrix::Zero(d, d);
  for (int i = 0; i < d; ++i) {
    const double m = -jj + i;
    j3(i, i) = m;
    if (i + 1 < d) jp(i + 1, i) = std::sqrt((jj - m) * (jj + m + 1.0));
  }
  const CMatrix jm = jp.adjoint();
  CMatrix j1 = (jp + jm) / 2.0;
  CMatrix j2 = (jp - jm) / (2.0 * kI);
  return Su2Ops{make_op("J1", j1, basis, true), make_op("J2", j2, basis, true), make_op("J3", j3, basis, true),
                make_op("J+", jp, basis, false), make_op("J-", jm, basis, false)};
}

Operator lift_to_mode(const Operator& single, int mode, int modes) {
  if (modes > 2) fail(ErrorKind::UnsupportedScale, "lift_to_mode: at most 2 modes are supported");
  const int n = single.dim();
  const BasisSpec basis = BasisSpec::multimode(modes, n);
  if (modes == 1) return make_op(single.label + "1", single.matrix, basis, single.hermitian);
  const CMatrix id = CMatrix::Identity(n, n);
  CMatrix m = mode == 0 ? CMatrix(Eigen::kroneckerProduct(single.matrix, id))
                        : CMatrix(Eigen::kroneckerProduct(id, single.matrix));
  return make_op(single.label + std::to_string(mode + 1), std::move(m), basis, single.hermitian);
}

MultimodeOps tensor_rep(int modes, int cutoff) {
  if (modes > 2) fail(ErrorKind::UnsupportedScale, "tensor_rep: at most 2 modes are supported");
  if (modes < 1) fail(ErrorKind::InvalidInput, "tensor_rep: need at least one mode");
  require_cutoff(cutoff, "tensor_rep");
  const BosonOps b = boson_rep(cutoff);
  MultimodeOps out;
  for (int m = 0; m < modes; ++m) {
    out.a.push_back(lift_to_mode(b.a, m, modes));
    out.adag.push_back(lift_to_mode(b.adag, m, modes));
    out.q.push_back(lift_to_mode(b.q, m, modes));
    out.p.push_back(lift_to_mode(b.p, m, modes));
  }
  return out;
}

Operator identity_op(const BasisSpec& basis) {
  return make_op("I", CMatrix::Identity(basis.dim(), basis.dim()), basis, true);
}

cplx expectation(const Operator& op, const StateVector& psi) {
  if (!(op.basis == psi.basis())) fail(ErrorKind::BasisMismatch, "expectation: operator and state bases differ");
  return psi.amplitudes().dot(op.matrix * psi.amplitudes());
}

cplx expectation(const Operator& op, const DensityMatrix& rho) {
  if (!(op.basis == rho.basis())) fail(ErrorKind::BasisMismatch, "expectation: operator and state bases differ");
  return (rho.matrix() * op.matrix).trace();
}

cplx overlap(const StateVector& a, const StateVector& b) {
  if (!(a.basis() == b.basis())) fail(ErrorKind::BasisMismatch, "overlap: states on different bases");
  return a.amplitudes().dot(b.amplitudes());
}

double ray_overlap(const StateVector& a, const StateVector& b) { return std::abs(overlap(a, b)); }

CMatrix commutator(const CMatrix& x, const CMatrix& y) { return x * y - y * x; }

}  // namespace charur
