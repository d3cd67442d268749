#include "charur/states.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include <unsupported/Eigen/MatrixFunctions>

#include "charur/error.hpp"
#include "charur/specfun.hpp"

namespace charur {

namespace {

constexpr double kPi = 3.14159265358979323846;

StateVector finish(const BasisSpec& basis, CVector amps, std::string family, std::map<std::string, cplx> params) {
  return StateVector::from_amplitudes(basis, std::move(amps), std::move(family), std::move(params));
}

void require_tail(const StateVector& s, const char* what) {
  if (s.tail_mass() > tol::kMaxTail) {
    fail(ErrorKind::Truncation, std::string(what) + ": tail mass " + short_num(s.tail_mass()) +
                                    " exceeds 1e-8 at " + s.basis().describe());
  }
}

// Unnormalized amplitudes c_n = c_{n-1} * ratio(n), c_0 = 1, up to the first n
// where the remaining mass is negligible. Returns the level count needed.
template <class Ratio>
int series_extent(Ratio ratio, double tail, int hard_limit) {
  double total = 1.0;
  double term = 1.0;  // |c_n|^2
  for (int n = 1; n < hard_limit; ++n) {
    const double r = ratio(n);
    term *= r;
    total += term;
    // Once the ratio is below 1/2 the remainder is bounded by the current term.
    if (r < 0.5 && term <= tail * total) return n + 1;
  }
  fail(ErrorKind::Truncation, "series does not decay within " + std::to_string(hard_limit) + " levels");
}

int cutoff_for_extent(int extent, int min_cutoff) {
  // The top decile must start at or above `extent`.
  int n = std::max(min_cutoff, extent + 2);
  while (n - (n + 9) / 10 < extent) ++n;
  return n;
}

}  // namespace

SqueezeParams SqueezeParams::make(cplx u, cplx v) {
  if (!std::isfinite(std::abs(u)) || !std::isfinite(std::abs(v))) fail(ErrorKind::InvalidInput, "squeeze: non-finite u or v");
  const double shell = std::norm(u) - std::norm(v);
  if (!(std::abs(u) > std::abs(v)) || !(shell > 0.0)) {
    fail(ErrorKind::InvalidInput, "squeeze: requires |u| > |v|");
  }
  SqueezeParams p;
  p.normalized_flag = std::abs(shell - 1.0) <= tol::kNormalization;
  const double s = 1.0 / std::sqrt(shell);
  p.u = u * s;
  p.v = v * s;
  return p;
}

SqueezeParams SqueezeParams::polar(double r, double theta) {
  return make(std::cosh(r), std::sinh(r) * std::polar(1.0, theta));
}

cplx SqueezeParams::zeta() const {
  // atanh(|v|/|u|) = arccosh|u| on the shell, without the loss of precision of
  // arccosh near 1.
  const double r = std::atanh(std::abs(v) / std::abs(u));
  if (std::abs(v) == 0.0) return cplx{r, 0.0};
  return std::polar(r, std::arg(v) - std::arg(u) + kPi);
}

cplx IntelligentParams::l() const {
  cplx s = std::sqrt(w * w - 4.0 * u * v);
  if (s.real() < 0.0 || (s.real() == 0.0 && s.imag() < 0.0)) s = -s;
  return s;
}

bool IntelligentParams::normalizable() const {
  const cplx ll = l();
  const double two_u = 2.0 * std::abs(u);
  return std::abs(w + ll) < two_u || std::abs(w - ll) < two_u;
}

bool IntelligentParams::robertson_minimizing(double tol) const {
  const double scale = std::max({std::abs(u), std::abs(v), std::abs(w), 1.0});
  return std::abs(w.imag()) <= tol * scale && std::abs(v - std::conj(u)) <= tol * scale;
}

SqueezeOperator::SqueezeOperator(double r, int dim) : r_(r), dim_(dim) {
  if (!(r >= 0.0) || !std::isfinite(r)) fail(ErrorKind::InvalidInput, "squeeze operator: r must be finite and >= 0");
  if (dim < 2) fail(ErrorKind::InvalidInput, "squeeze operator: dim must be >= 2");
  // Generator r (a†^2 - a^2)/2 is real antisymmetric and couples n to n +/- 2.
  for (int parity = 0; parity < 2; ++parity) {
    const int m = (dim - parity + 1) / 2;
    RMatrix g = RMatrix::Zero(m, m);
    for (int i = 0; i + 1 < m; ++i) {
      const double n = 2.0 * i + parity;
      const double up = 0.5 * r * std::sqrt((n + 1.0) * (n + 2.0));
      g(i + 1, i) = up;
      g(i, i + 1) = -up;
    }
    RMatrix e = g.exp();
    (parity == 0 ? even_ : odd_) = e.cast<cplx>();
  }
}

CVector SqueezeOperator::apply(double phi, const CVector& psi) const {
  if (psi.size() != dim_) fail(ErrorKind::InvalidInput, "squeeze operator: vector dimension mismatch");
  // S(r e^{i phi}) = R S(r) R†, R = diag(e^{i phi n / 2}).
  CVector rotated(dim_);
  for (int n = 0; n < dim_; ++n) rotated(n) = std::polar(1.0, -0.5 * phi * n) * psi(n);
  CVector out(dim_);
  for (int parity = 0; parity < 2; ++parity) {
    const CMatrix& block = parity == 0 ? even_ : odd_;
    const int m = static_cast<int>(block.rows());
    CVector sub(m);
    for (int i = 0; i < m; ++i) sub(i) = rotated(2 * i + parity);
    const CVector res = block * sub;
    for (int i = 0; i < m; ++i) out(2 * i + parity) = res(i);
  }
  for (int n = 0; n < dim_; ++n) out(n) *= std::polar(1.0, 0.5 * phi * n);
  return out;
}

int squeeze_padding(int cutoff) { return std::max(48, cutoff / 2); }

int glauber_min_cutoff(cplx alpha) {
  const double a = std::abs(alpha);
  return static_cast<int>(std::floor(a * a + 10.0 * a + 20.0)) + 1;
}

StateVector fock_state(int n, int cutoff) {
  const BasisSpec basis = BasisSpec::fock(cutoff);
  if (n < 0 || n >= cutoff) fail(ErrorKind::InvalidInput, "fock_state: level outside basis");
  CVector amps = CVector::Zero(cutoff);
  amps(n) = 1.0;
  return finish(basis, std::move(amps), "fock", {{"n", cplx(n)}});
}

namespace {

CVector glauber_amplitudes(cplx alpha, int dim) {
  CVector c(dim);
  c(0) = std::exp(-0.5 * std::norm(alpha));
  for (int n = 1; n < dim; ++n) c(n) = c(n - 1) * alpha / std::sqrt(static_cast<double>(n));
  return c;
}

}  // namespace

StateVector glauber(cplx alpha, int cutoff) {
  const BasisSpec basis = BasisSpec::fock(cutoff);
  if (!std::isfinite(std::abs(alpha))) fail(ErrorKind::InvalidInput, "glauber: non-finite alpha");
  if (cutoff < glauber_min_cutoff(alpha)) {
    fail(ErrorKind::Truncation, "glauber: cutoff " + std::to_string(cutoff) + " below tail bound " +
                                    std::to_string(glauber_min_cutoff(alpha)));
  }
  return finish(basis, glauber_amplitudes(alpha, cutoff), "glauber", {{"alpha", alpha}});
}

StateVector canonical_ss(cplx alpha, const SqueezeParams& sq, int cutoff, const SqueezeOperator& op) {
  const BasisSpec basis = BasisSpec::fock(cutoff);
  const cplx zeta = sq.zeta();
  if (op.dim() < cutoff) fail(ErrorKind::InvalidInput, "canonical_ss: squeeze operator smaller than cutoff");
  if (std::abs(op.r() - std::abs(zeta)) > 1e-9 * std::max(1.0, op.r())) {
    fail(ErrorKind::InvalidInput, "canonical_ss: squeeze operator built for a different |zeta|");
  }
  const double phase_u = std::arg(sq.u);
  const CVector coherent = glauber_amplitudes(alpha * std::polar(1.0, -phase_u), op.dim());
  CVector full = std::polar(1.0, phase_u) * op.apply(std::arg(zeta), coherent);
  StateVector s = finish(basis, full.head(cutoff), "canonical-ss", {{"alpha", alpha}, {"u", sq.u}, {"v", sq.v}});
  require_tail(s, "canonical_ss");
  return s;
}

StateVector canonical_ss(cplx alpha, const SqueezeParams& sq, int cutoff) {
  const SqueezeOperator op(std::abs(sq.zeta()), cutoff + squeeze_padding(cutoff));
  return canonical_ss(alpha, sq, cutoff, op);
}

StateVector canonical_ss_auto(cplx alpha, const SqueezeParams& sq, double tail, int max_cutoff) {
  for (int n = 64; n <= max_cutoff; n += n / 2) {
    try {
      StateVector s = canonical_ss(alpha, sq, n);
      if (s.tail_mass() <= tail) return s;
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::Truncation) throw;
    }
  }
  fail(ErrorKind::Truncation, "canonical_ss_auto: no cutoff up to " + std::to_string(max_cutoff) + " meets the tail bound");
}

StateVector squeezed_fock(int n, const SqueezeParams& sq, int cutoff) {
  const BasisSpec basis = BasisSpec::fock(cutoff);
  if (n < 0 || n >= cutoff) fail(ErrorKind::InvalidInput, "squeezed_fock: level outside basis");
  const cplx zeta = sq.zeta();
  const SqueezeOperator op(std::abs(zeta), cutoff + squeeze_padding(cutoff));
  CVector fock = CVector::Zero(op.dim());
  fock(n) = 1.0;
  CVector full = op.apply(std::arg(zeta), fock);
  StateVector s = finish(basis, full.head(cutoff), "squeezed-fock", {{"n", cplx(n)}, {"u", sq.u}, {"v", sq.v}});
  require_tail(s, "squeezed_fock");
  return s;
}

double bg_log_norm(cplx z, double k) {
  if (!(k > 0.0)) fail(ErrorKind::InvalidInput, "bg_cs: k must be > 0");
  return 0.5 * (std::lgamma(2.0 * k) - std::log(hyp0f1(2.0 * k, std::norm(z))));
}

int bg_cs_cutoff(cplx z, double k, double tail, int min_cutoff) {
  if (!(k > 0.0)) fail(ErrorKind::InvalidInput, "bg_cs: k must be > 0");
  const double z2 = std::norm(z);
  if (z2 == 0.0) return std::max(min_cutoff, 2);
  const int extent = series_extent([&](int n) { return z2 / (n * (2.0 * k + n - 1.0)); }, tail, 100000);
  return cutoff_for_extent(extent, min_cutoff);
}

StateVector bg_cs(cplx z, double k, int cutoff) {
  const BasisSpec basis = BasisSpec::su11(k, cutoff);
  if (!std::isfinite(std::abs(z))) fail(ErrorKind::InvalidInput, "bg_cs: non-finite z");
  // Amplitudes z^n / sqrt(n! Gamma(2k+n)) up to the constant N_BG; the
  // recurrence keeps the factorial ratios in range.
  CVector c(cutoff);
  c(0) = 1.0;
  for (int n = 1; n < cutoff; ++n) c(n) = c(n - 1) * z / std::sqrt(n * (2.0 * k + n - 1.0));
  // Remaining series weight beyond the cutoff, bounded geometrically.
  const double last_ratio = std::norm(z) / (cutoff * (2.0 * k + cutoff - 1.0));
  const double beyond = std::norm(c(cutoff - 1)) * last_ratio / std::max(1e-300, 1.0 - std::min(last_ratio, 0.5));
  if (beyond > 1e-14 * c.squaredNorm()) {
    fail(ErrorKind::Truncation, "bg_cs: series tail beyond cutoff exceeds 1e-14; use cutoff >= " +
                                    std::to_string(bg_cs_cutoff(z, k, 1e-14)));
  }
  return finish(basis, std::move(c), "bg-cs", {{"z", z}, {"k", cplx(k)}});
}

int su11_cs_cutoff(cplx xi, double k, double tail, int min_cutoff) {
  const double x2 = std::norm(xi);
  if (!(x2 < 1.0)) fail(ErrorKind::InvalidInput, "su11_cs: requires |xi| < 1");
  if (!(k > 0.0)) fail(ErrorKind::InvalidInput, "su11_cs: k must be > 0");
  if (x2 == 0.0) return std::max(min_cutoff, 2);
  // |c_n|^2 ratio x2 (2k+n-1)/n approaches x2 < 1; tail bounded once it is below 1.
  double total = 1.0, term = 1.0;
  for (int n = 1; n < 1000000; ++n) {
    const double r = x2 * (2.0 * k + n - 1.0) / n;
    term *= r;
    total += term;
    if (r < 1.0 && term * r / (1.0 - r) <= tail * total) return cutoff_for_extent(n + 1, min_cutoff);
  }
  fail(ErrorKind::Truncation, "su11_cs_cutoff: series does not decay");
}

StateVector su11_cs(cplx xi, double k, int cutoff) {
  const BasisSpec basis = BasisSpec::su11(k, cutoff);
  if (!(std::abs(xi) < 1.0)) fail(ErrorKind::InvalidInput, "su11_cs: requires |xi| < 1");
  CVector c(cutoff);
  c(0) = 1.0;
  for (int n = 1; n < cutoff; ++n) c(n) = c(n - 1) * xi * std::sqrt((2.0 * k + n - 1.0) / n);
  return finish(basis, std::move(c), "su11-cs", {{"xi", xi}, {"k", cplx(k)}});
}

StateVector su11_cs_by_squeeze(cplx zeta, double k, int cutoff) {
  const BasisSpec basis = BasisSpec::su11(k, cutoff);
  const int dim = cutoff + squeeze_padding(cutoff);
  CMatrix gen = CMatrix::Zero(dim, dim);
  for (int n = 0; n + 1 < dim; ++n) {
    const double kp = std::sqrt((n + 1.0) * (2.0 * k + n));
    gen(n + 1, n) = zeta * kp;
    gen(n, n + 1) = -std::conj(zeta) * kp;
  }
  const CMatrix u = gen.exp();
  CVector full = u.col(0);
  return finish(basis, full.head(cutoff), "su11-cs", {{"zeta", zeta}, {"k", cplx(k)}});
}

namespace {

// Branch of l with |w + l| < 2|u|.
cplx convergent_branch(const IntelligentParams& p) {
  const cplx ll = p.l();
  const double two_u = 2.0 * std::abs(p.u);
  if (std::abs(p.w + ll) < two_u) return ll;
  if (std::abs(p.w - ll) < two_u) return -ll;
  fail(ErrorKind::InvalidInput, "intelligent state: normalizability |w +/- sqrt(w^2 - 4uv)| < 2|u| violated");
}

void check_intelligent(const IntelligentParams& p) {
  if (!(p.k > 0.0)) fail(ErrorKind::InvalidInput, "intelligent state: k must be > 0");
  if (std::abs(p.u) == 0.0) fail(ErrorKind::InvalidInput, "intelligent state: u must be nonzero");
  for (cplx c : {p.z, p.u, p.v, p.w}) {
    if (!std::isfinite(c.real()) || !std::isfinite(c.imag())) fail(ErrorKind::InvalidInput, "intelligent state: non-finite parameter");
  }
}

}  // namespace

StateVector su11_intelligent(const IntelligentParams& p, int cutoff) {
  check_intelligent(p);
  const BasisSpec basis = BasisSpec::su11(p.k, cutoff);
  if (std::abs(p.l()) <= 1e-10) {
    fail(ErrorKind::DegenerateParameter, "intelligent state: w^2 - 4uv vanishes; use the combination solver");
  }
  const cplx lc = convergent_branch(p);
  const cplx g = -(lc + p.w) / (2.0 * p.u);
  const cplx x = 2.0 * lc / (lc + p.w);
  const cplx a = p.k + p.z / lc;
  const double c = 2.0 * p.k;

  // amp_n = g^n sqrt((2k)_n / n!) 2F1(a, -n; 2k; x).
  CVector amps(cutoff);
  cplx prefactor{1.0};
  for (int n = 0; n < cutoff; ++n) {
    if (n > 0) prefactor *= g * std::sqrt((c + n - 1.0) / n);
    amps(n) = prefactor * gauss2f1_terminating(a, n, c, x);
  }
  if (!amps.allFinite()) fail(ErrorKind::Numeric, "intelligent state: amplitude overflow");
  StateVector s = finish(basis, std::move(amps), "su11-intelligent",
                         {{"z", p.z}, {"u", p.u}, {"v", p.v}, {"w", p.w}, {"k", cplx(p.k)}});
  require_tail(s, "su11_intelligent");
  return s;
}

cplx intelligent_discrete_eigenvalue(const IntelligentParams& p, int m) {
  check_intelligent(p);
  if (m < 0) fail(ErrorKind::InvalidInput, "intelligent eigenvalue: m must be >= 0");
  return -(p.k + m) * convergent_branch(p);
}

cplx intelligent_cs_xi(const IntelligentParams& p) {
  check_intelligent(p);
  return -(p.w + convergent_branch(p)) / (2.0 * p.u);
}

StateVector even_odd_cs(cplx alpha, Parity parity, int cutoff) {
  const BasisSpec basis = BasisSpec::fock(cutoff);
  if (parity == Parity::Odd && std::abs(alpha) == 0.0) {
    fail(ErrorKind::InvalidInput, "even_odd_cs: odd state with alpha = 0 is the null vector");
  }
  if (cutoff < glauber_min_cutoff(alpha)) {
    fail(ErrorKind::Truncation, "even_odd_cs: cutoff below tail bound " + std::to_string(glauber_min_cutoff(alpha)));
  }
  // Keep only the surviving parity so small alpha does not cancel catastrophically.
  CVector c = glauber_amplitudes(alpha, cutoff);
  const int drop = parity == Parity::Even ? 1 : 0;
  for (int n = drop; n < cutoff; n += 2) c(n) = 0.0;
  if (!(c.norm() > 0.0)) fail(ErrorKind::InvalidInput, "even_odd_cs: null vector");
  return finish(basis, std::move(c), parity == Parity::Even ? "even-cs" : "odd-cs", {{"alpha", alpha}});
}

StateVector su2_cs(cplx tau, double j) {
  const BasisSpec basis = BasisSpec::su2(j);
  if (!std::isfinite(std::abs(tau))) fail(ErrorKind::InvalidInput, "su2_cs: non-finite tau");
  const int d = basis.dim();
  const double two_j = d - 1.0;
  // Index n labels m = -j + n; amplitude tau^n sqrt(binom(2j, n)).
  CVector c(d);
  c(0) = 1.0;
  for (int n = 1; n < d; ++n) c(n) = c(n - 1) * tau * std::sqrt((two_j - n + 1.0) / n);
  return finish(basis, std::move(c), "su2-cs", {{"tau", tau}, {"j", cplx(basis.j)}});
}

namespace {

int default_support(const BasisSpec& basis, int support) {
  const int n = basis.cutoff;
  if (!basis.truncated()) return n;
  if (support <= 0) support = std::max(1, static_cast<int>(0.8 * n));
  return std::min(support, n);
}

}  // namespace

StateVector random_state(const BasisSpec& basis, std::mt19937_64& rng, int support) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  const int m = default_support(basis, support);
  const int n = basis.cutoff;
  CVector c = CVector::Zero(basis.dim());
  if (basis.kind == BasisKind::Multimode && basis.modes == 2) {
    for (int i = 0; i < m; ++i) {
      for (int j = 0; j < m; ++j) c(i * n + j) = cplx(gauss(rng), gauss(rng));
    }
  } else {
    for (int i = 0; i < m; ++i) c(i) = cplx(gauss(rng), gauss(rng));
  }
  return finish(basis, std::move(c), "random", {{"support", cplx(m)}});
}

DensityMatrix random_density(const BasisSpec& basis, std::mt19937_64& rng, int rank, int support) {
  if (rank < 1) fail(ErrorKind::InvalidInput, "random_density: rank must be >= 1");
  std::uniform_real_distribution<double> unif(0.05, 1.0);
  std::vector<StateVector> states;
  std::vector<double> weights;
  for (int i = 0; i < rank; ++i) {
    states.push_back(random_state(basis, rng, support));
    weights.push_back(unif(rng));
  }
  return DensityMatrix::mixture(states, weights);
}

}  // namespace charur
