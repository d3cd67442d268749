#include "charur/moments.hpp"

#include <cmath>
#include <string>

#include "charur/error.hpp"
#include "charur/kernels.hpp"
#include "charur/matrixkit.hpp"

namespace charur {

ObservableSet ObservableSet::make(std::string name, std::vector<Operator> ops) {
  if (ops.empty()) fail(ErrorKind::InvalidInput, "observable set: empty");
  for (const Operator& op : ops) {
    if (!(op.basis == ops.front().basis)) fail(ErrorKind::BasisMismatch, "observable set: operators on different bases");
    if (op.matrix.rows() != op.basis.dim()) fail(ErrorKind::InvalidInput, "observable set: operator dimension mismatch");
    if (!is_hermitian(op.matrix)) fail(ErrorKind::InvalidObservable, "observable set: " + op.label + " is not Hermitian");
  }
  return ObservableSet{std::move(name), std::move(ops)};
}

std::vector<std::string> ObservableSet::labels() const {
  std::vector<std::string> out;
  for (const Operator& op : ops) out.push_back(op.label);
  return out;
}

std::vector<const CMatrix*> ObservableSet::matrices() const {
  std::vector<const CMatrix*> out;
  for (const Operator& op : ops) out.push_back(&op.matrix);
  return out;
}

ObservableSet canonical_set(int modes, int cutoff) {
  if (modes == 1) {
    const BosonOps b = boson_rep(cutoff);
    return ObservableSet::make("canonical:1", {b.q, b.p});
  }
  const MultimodeOps m = tensor_rep(modes, cutoff);
  std::vector<Operator> ops;
  for (const Operator& q : m.q) ops.push_back(q);
  for (const Operator& p : m.p) ops.push_back(p);
  return ObservableSet::make("canonical:" + std::to_string(modes), std::move(ops));
}

ObservableSet su11_set(double k, int cutoff) {
  const Su11Ops s = su11_rep(k, cutoff);
  return ObservableSet::make("su11", {s.k1, s.k2, s.k3});
}

ObservableSet su2_set(double j) {
  const Su2Ops s = su2_rep(j);
  return ObservableSet::make("su2", {s.j1, s.j2, s.j3});
}

ObservableSet a2_quadratures(int cutoff) {
  const BosonOps b = boson_rep(cutoff);
  const CMatrix a2 = b.a.matrix * b.a.matrix;
  const CMatrix ad2 = a2.adjoint();
  const BasisSpec& basis = b.a.basis;
  Operator x{"X", (a2 + ad2) / 2.0, basis, true};
  Operator y{"Y", (a2 - ad2) / (2.0 * kI), basis, true};
  return ObservableSet::make("a2-quadratures", {x, y});
}

namespace {

struct ParsedName {
  std::string family;
  std::string arg;
  bool has_arg = false;
};

ParsedName parse_name(const std::string& spec) {
  ParsedName p;
  const auto colon = spec.find(':');
  p.family = spec.substr(0, colon);
  if (colon != std::string::npos) {
    p.arg = spec.substr(colon + 1);
    p.has_arg = true;
  }
  return p;
}

double parse_number(const std::string& text, const std::string& spec) {
  // Accepts decimals and simple fractions such as 1/2.
  try {
    const auto slash = text.find('/');
    std::size_t used = 0;
    if (slash == std::string::npos) {
      const double v = std::stod(text, &used);
      if (used != text.size()) throw std::invalid_argument(text);
      return v;
    }
    const double num = std::stod(text.substr(0, slash));
    const double den = std::stod(text.substr(slash + 1));
    return num / den;
  } catch (const std::exception&) {
    fail(ErrorKind::InvalidInput, "observables: cannot parse parameter of '" + spec + "'");
  }
}

}  // namespace

BasisSpec basis_for_observables(const std::string& spec, int cutoff) {
  const ParsedName p = parse_name(spec);
  if (p.family == "canonical") {
    const int s = p.has_arg ? static_cast<int>(parse_number(p.arg, spec)) : 1;
    if (s == 1) return BasisSpec::fock(cutoff);
    return BasisSpec::multimode(s, cutoff);
  }
  if (p.family == "su11") return BasisSpec::su11(p.has_arg ? parse_number(p.arg, spec) : 0.5, cutoff);
  if (p.family == "su2") return BasisSpec::su2(p.has_arg ? parse_number(p.arg, spec) : 0.5);
  if (p.family == "a2-quadratures") return BasisSpec::fock(cutoff);
  fail(ErrorKind::InvalidInput, "observables: unknown set '" + spec + "'");
}

ObservableSet observable_set(const std::string& spec, const BasisSpec& basis) {
  const ParsedName p = parse_name(spec);
  auto mismatch = [&]() { fail(ErrorKind::BasisMismatch, "observables '" + spec + "' do not act on " + basis.describe()); };
  if (p.family == "canonical") {
    const int s = p.has_arg ? static_cast<int>(parse_number(p.arg, spec)) : (basis.kind == BasisKind::Multimode ? basis.modes : 1);
    if (s > 2) fail(ErrorKind::UnsupportedScale, "observables: canonical sets support s <= 2");
    if (s < 1) fail(ErrorKind::InvalidInput, "observables: canonical mode count must be >= 1");
    if (s == 1 && basis.kind == BasisKind::Fock) return canonical_set(1, basis.cutoff);
    if (basis.kind == BasisKind::Multimode && basis.modes == s) {
      ObservableSet set = canonical_set(s, basis.cutoff);
      if (s == 1) {
        for (Operator& op : set.ops) op.basis = basis;
      }
      return set;
    }
    mismatch();
  }
  if (p.family == "su11") {
    if (basis.kind != BasisKind::Su11) mismatch();
    if (p.has_arg && std::abs(parse_number(p.arg, spec) - basis.k) > 1e-12) mismatch();
    return su11_set(basis.k, basis.cutoff);
  }
  if (p.family == "su2") {
    if (basis.kind != BasisKind::Su2) mismatch();
    if (p.has_arg && std::abs(parse_number(p.arg, spec) - basis.j) > 1e-12) mismatch();
    return su2_set(basis.j);
  }
  if (p.family == "a2-quadratures") {
    if (basis.kind != BasisKind::Fock) mismatch();
    return a2_quadratures(basis.cutoff);
  }
  fail(ErrorKind::InvalidInput, "observables: unknown set '" + spec + "'");
}

namespace {

void check_state(const ObservableSet& set, const BasisSpec& basis, double tail, const MomentOptions& opts) {
  if (!(set.basis() == basis)) {
    fail(ErrorKind::BasisMismatch, "moments: observables act on " + set.basis().describe() + ", state lives on " +
                                       basis.describe());
  }
  if (!opts.allow_tail && tail > opts.max_tail) {
    fail(ErrorKind::Truncation, "moments: state tail mass " + short_num(tail) + " exceeds " +
                                    short_num(opts.max_tail) + " (raise the cutoff or allow the tail)");
  }
}

// g(i, j) = <X_i X_j>, means(i) = <X_i>.
MomentReport assemble(const ObservableSet& set, const CMatrix& g, const RVector& means, double tail) {
  const int n = set.size();
  MomentReport r;
  r.labels = set.labels();
  r.means = means;
  r.sigma.resize(n, n);
  r.commut.resize(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      const cplx gij = 0.5 * (g(i, j) + std::conj(g(j, i)));
      r.sigma(i, j) = gij.real() - means(i) * means(j);
      r.commut(i, j) = gij.imag();
    }
  }
  r.sigma = 0.5 * (r.sigma + r.sigma.transpose()).eval();
  r.commut = 0.5 * (r.commut - r.commut.transpose()).eval();
  r.robertson = r.sigma.cast<cplx>() + kI * r.commut.cast<cplx>();
  r.sigma_min_eig = psd_min_eig(r.sigma);
  r.robertson_min_eig = psd_min_eig(r.robertson);
  r.tail_mass = tail;
  return r;
}

}  // namespace

MomentReport moment_report(const ObservableSet& set, const StateVector& psi, const MomentOptions& opts) {
  check_state(set, psi.basis(), psi.tail_mass(), opts);
  const auto mats = set.matrices();
  const CVector& v = psi.amplitudes();
  const CMatrix y = opts.parallel ? kernels::apply_ops_parallel(mats, v) : kernels::apply_ops_serial(mats, v);
  const CMatrix g = opts.parallel ? kernels::gram_parallel(y) : kernels::gram_serial(y);
  RVector means(set.size());
  for (int i = 0; i < set.size(); ++i) means(i) = v.dot(y.col(i)).real();
  return assemble(set, g, means, psi.tail_mass());
}

MomentReport moment_report(const ObservableSet& set, const DensityMatrix& rho, const MomentOptions& opts) {
  check_state(set, rho.basis(), rho.tail_mass(), opts);
  const int n = set.size();
  std::vector<CMatrix> xr;  // X_j rho
  for (const Operator& op : set.ops) xr.push_back(op.matrix * rho.matrix());
  CMatrix g(n, n);
  RVector means(n);
  for (int i = 0; i < n; ++i) {
    means(i) = xr[i].trace().real();
    // tr(rho X_i X_j) = tr(X_j rho X_i) = sum_ab (X_j rho)_ab (X_i)_ba
    for (int j = 0; j < n; ++j) g(i, j) = set.ops[i].matrix.transpose().cwiseProduct(xr[j]).sum();
  }
  return assemble(set, g, means, rho.tail_mass());
}

RMatrix gaussian_sigma(const CMatrix& u, const CMatrix& v, const CMatrix& ct) {
  const Eigen::Index s = u.rows();
  if (s == 0 || u.cols() != s || v.rows() != s || v.cols() != s || ct.rows() != s || ct.cols() != s) {
    fail(ErrorKind::InvalidInput, "gaussian_sigma: u, v, Ct must be s x s");
  }
  if (!u.allFinite() || !v.allFinite() || !ct.allFinite()) fail(ErrorKind::InvalidInput, "gaussian_sigma: non-finite input");
  CMatrix b(2 * s, 2 * s);
  b.topLeftCorner(s, s) = u + v;
  b.topRightCorner(s, s) = kI * (u - v);
  b.bottomLeftCorner(s, s) = (u + v).conjugate();
  b.bottomRightCorner(s, s) = kI * (v.conjugate() - u.conjugate());
  Eigen::FullPivLU<CMatrix> lu(b);
  const double scale = b.cwiseAbs().maxCoeff();
  lu.setThreshold(1e-12);
  if (!lu.isInvertible() || !(scale > 0.0)) fail(ErrorKind::InvalidInput, "gaussian_sigma: block matrix B is singular");
  CMatrix mid = CMatrix::Zero(2 * s, 2 * s);
  mid.topRightCorner(s, s) = ct;
  mid.bottomLeftCorner(s, s) = ct.transpose();
  const CMatrix binv = lu.inverse();
  const CMatrix sigma = binv * mid * binv.transpose();
  const double mag = std::max(sigma.cwiseAbs().maxCoeff(), 1e-300);
  if (sigma.imag().cwiseAbs().maxCoeff() > 1e-8 * mag) {
    fail(ErrorKind::InvalidInput, "gaussian_sigma: result is not real; Ct inconsistent with (u, v)");
  }
  RMatrix out = sigma.real();
  return 0.5 * (out + out.transpose());
}

RMatrix gaussian_sigma_pair(cplx u, cplx v, cplx mean_commutator) {
  const cplx ct = -kI * (std::norm(u) - std::norm(v)) * mean_commutator;
  CMatrix um(1, 1), vm(1, 1), cm(1, 1);
  um(0, 0) = u;
  vm(0, 0) = v;
  cm(0, 0) = ct;
  return gaussian_sigma(um, vm, cm);
}

UvMoments uv_moments(cplx u, cplx v) {
  return UvMoments{0.5 * std::norm(u - v), 0.5 * std::norm(u + v), (u * std::conj(v)).imag()};
}

UvMoments uv_moments(const SqueezeParams& sq) { return uv_moments(sq.u, sq.v); }

}  // namespace charur
