#include "charur/intelligent.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "charur/error.hpp"
#include "charur/matrixkit.hpp"

namespace charur {

namespace {

constexpr int kMaxSolverDim = 512;

}  // namespace

CombinationSpec CombinationSpec::make(CVector beta, ObservableSet observables) {
  if (beta.size() != observables.size()) fail(ErrorKind::InvalidInput, "combination: one coefficient per observable");
  if (!beta.allFinite()) fail(ErrorKind::InvalidInput, "combination: non-finite coefficient");
  if (beta.cwiseAbs().maxCoeff() == 0.0) fail(ErrorKind::InvalidInput, "combination: all coefficients vanish");
  return CombinationSpec{std::move(beta), std::move(observables)};
}

CombinationSpec CombinationSpec::su11(cplx u, cplx v, cplx w, double k, int cutoff) {
  CVector beta(3);
  beta << u + v, kI * (v - u), w;
  return make(std::move(beta), su11_set(k, cutoff));
}

CombinationSpec CombinationSpec::pair(cplx u, cplx v, ObservableSet pair) {
  if (pair.size() != 2) fail(ErrorKind::InvalidInput, "combination: pair form needs two observables");
  CVector beta(2);
  beta << u + v, kI * (v - u);
  return make(std::move(beta), std::move(pair));
}

CMatrix CombinationSpec::matrix() const {
  const int d = observables.basis().dim();
  CMatrix a = CMatrix::Zero(d, d);
  for (int i = 0; i < observables.size(); ++i) a += beta(i) * observables.ops[i].matrix;
  return a;
}

CombinationSolution solve_combination_eigenstates(const CombinationSpec& spec) {
  const BasisSpec& basis = spec.observables.basis();
  if (basis.dim() > kMaxSolverDim) fail(ErrorKind::UnsupportedScale, "combination solver: dimension above 512");
  const CMatrix a = spec.matrix();
  const EigenDecomposition eig = eig_general(a);
  const double scale = std::max(a.cwiseAbs().maxCoeff(), 1e-300);

  CombinationSolution out;
  Eigen::JacobiSVD<CMatrix> vsvd(eig.vectors);
  out.min_vector_sigma = vsvd.singularValues().minCoeff();
  out.degraded = out.min_vector_sigma < 1e-10;

  for (Eigen::Index c = 0; c < eig.values.size(); ++c) {
    const CVector v = eig.vectors.col(c);
    const double tail = top_decile_mass(basis, v);
    if (tail > tol::kPhysicalTail) {
      ++out.filtered;
      continue;
    }
    Eigenpair p{eig.values(c), StateVector::from_amplitudes(basis, v, "combination-eigenstate"), 0.0};
    p.residual = (a * p.state.amplitudes() - p.value * p.state.amplitudes()).norm();
    if (p.residual > 1e-8 * scale) out.degraded = true;
    out.physical.push_back(std::move(p));
  }
  std::sort(out.physical.begin(), out.physical.end(), [](const Eigenpair& x, const Eigenpair& y) {
    if (std::abs(x.value) != std::abs(y.value)) return std::abs(x.value) < std::abs(y.value);
    return std::arg(x.value) < std::arg(y.value);
  });
  return out;
}

TargetedSolution solve_at_eigenvalue(const CombinationSpec& spec, cplx z) {
  const BasisSpec& basis = spec.observables.basis();
  if (basis.dim() > kMaxSolverDim) fail(ErrorKind::UnsupportedScale, "combination solver: dimension above 512");
  CMatrix a = spec.matrix();
  a.diagonal().array() -= z;
  const NullVector nv = null_vector(a);
  return TargetedSolution{StateVector::from_amplitudes(basis, nv.vector, "combination-eigenstate"), nv.sigma_min,
                          nv.sigma_next};
}

namespace {

// Unit norm, first nonzero component real and positive.
void fix_gauge(cplx& b0, cplx& b1) {
  const double norm = std::sqrt(std::norm(b0) + std::norm(b1));
  b0 /= norm;
  b1 /= norm;
  const cplx lead = std::abs(b0) > 1e-14 ? b0 : b1;
  const cplx phase = std::conj(lead) / std::abs(lead);
  b0 *= phase;
  b1 *= phase;
  if (std::abs(b0) > 1e-14) b0 = std::abs(b0);
  else b1 = std::abs(b1);
}

}  // namespace

MinimizerCertificate minimizer_certificate(const StateVector& psi, const ObservableSet& set, const MomentOptions& opts) {
  const MomentReport m = moment_report(set, psi, opts);
  const int n = set.size();
  const CVector& v = psi.amplitudes();
  // Centered vectors (X_a - <X_a>) psi; their Gram matrix is sigma + iC.
  CMatrix centered(v.size(), n);
  for (int a = 0; a < n; ++a) centered.col(a) = set.ops[a].matrix * v - m.means(a) * v;

  MinimizerCertificate cert;
  cert.observables = set.labels();
  bool all_pairs = true;
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      Eigen::Matrix2cd r2;
      r2(0, 0) = centered.col(i).squaredNorm();
      r2(1, 1) = centered.col(j).squaredNorm();
      r2(0, 1) = centered.col(i).dot(centered.col(j));
      r2(1, 0) = std::conj(r2(0, 1));
      Eigen::SelfAdjointEigenSolver<Eigen::Matrix2cd> es(r2);
      PairCertificate pc;
      pc.i = i;
      pc.j = j;
      pc.beta_i = es.eigenvectors()(0, 0);
      pc.beta_j = es.eigenvectors()(1, 0);
      fix_gauge(pc.beta_i, pc.beta_j);
      pc.z = pc.beta_i * m.means(i) + pc.beta_j * m.means(j);
      pc.residual = (pc.beta_i * centered.col(i) + pc.beta_j * centered.col(j)).norm();
      pc.schr_gap = pair_gaps_from(m.sigma, m.commut, i, j).schr_gap;
      if (pc.residual > 1e-8) all_pairs = false;
      cert.pairs.push_back(pc);
    }
  }
  const URReport rep = char_ur_report(set.labels(), m.sigma, m.commut);
  cert.robertson_gap = rep.order(n).gap;
  if (all_pairs) {
    cert.verdict = "minimizer";
  } else if (rep.order(n).saturated) {
    cert.verdict = "robertson-minimizer";
  } else {
    cert.verdict = "not-minimizer";
  }
  return cert;
}

double delta0_candidate(const std::vector<PairGaps>& scan, double rel_tol) {
  double best = std::numeric_limits<double>::infinity();
  for (const PairGaps& g : scan) {
    const double scale = std::max({g.var_x, g.var_y, 1e-300});
    if (std::abs(g.var_x - g.var_y) <= rel_tol * scale) best = std::min(best, std::sqrt(0.5 * (g.var_x + g.var_y)));
  }
  if (!std::isfinite(best)) fail(ErrorKind::InvalidInput, "delta0_candidate: no equal-variance points in the scan");
  return best;
}

}  // namespace charur
