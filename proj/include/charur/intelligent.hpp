#pragma once

#include <string>
#include <vector>

#include "charur/moments.hpp"
#include "charur/urcheck.hpp"

namespace charur {

/// The operator sum_i beta_i X_i over Hermitian observables with complex
/// coefficients; e.g. a = (q + i p)/sqrt2 and u K- + v K+ + w K3 =
/// (u+v) K1 + i(v-u) K2 + w K3.
struct CombinationSpec {
  CVector beta;
  ObservableSet observables;

  /// Throws InvalidInput for a length mismatch or an all-zero beta.
  static CombinationSpec make(CVector beta, ObservableSet observables);
  /// u K- + v K+ + w K3 over (K1, K2, K3).
  static CombinationSpec su11(cplx u, cplx v, cplx w, double k, int cutoff);
  /// u (X - iY) + v (X + iY) over a pair.
  static CombinationSpec pair(cplx u, cplx v, ObservableSet pair);

  CMatrix matrix() const;
};

struct Eigenpair {
  cplx value;
  StateVector state;
  double residual = 0.0;  // |A psi - value psi|
};

struct CombinationSolution {
  std::vector<Eigenpair> physical;  // tail mass <= 1e-6, sorted by |value| then arg
  int filtered = 0;                 // eigenpairs dropped as truncation artifacts
  bool degraded = false;            // near-defective pencil or poor residuals
  double min_vector_sigma = 0.0;    // smallest singular value of the eigenvector matrix
};

/// Dense eigendecomposition of the combination (dimension <= 512).
CombinationSolution solve_combination_eigenstates(const CombinationSpec& spec);

struct TargetedSolution {
  StateVector state;
  double residual = 0.0;    // smallest singular value of A - z
  double separation = 0.0;  // next singular value
};

/// Least-squares eigenvector of the combination at a known eigenvalue z: the
/// right singular vector of A - z for its smallest singular value. Used where
/// a truncated non-normal operator has no faithful dense eigenpair.
TargetedSolution solve_at_eigenvalue(const CombinationSpec& spec, cplx z);

struct PairCertificate {
  int i = 0, j = 1;
  cplx beta_i, beta_j;  // unit norm, first nonzero component real positive
  cplx z;
  double residual = 0.0;  // |(beta_i X_i + beta_j X_j - z) psi|
  double schr_gap = 0.0;
};

struct MinimizerCertificate {
  std::vector<std::string> observables;
  std::vector<PairCertificate> pairs;  // all i < j
  double robertson_gap = 0.0;          // det sigma - det C over the full set
  std::string verdict;                 // "minimizer", "robertson-minimizer" or "not-minimizer"
};

/// For every pair, the best-fit combination minimizing the eigen-residual;
/// its squared residual is the smaller eigenvalue of the pair's 2x2 Robertson
/// matrix, whose determinant is the Schrodinger gap.
MinimizerCertificate minimizer_certificate(const StateVector& psi, const ObservableSet& set,
                                           const MomentOptions& opts = {});

/// Candidate squeezing floor: the smallest sqrt(var) over scan points whose two
/// variances agree to `rel_tol`. Throws InvalidInput if the slice is empty.
double delta0_candidate(const std::vector<PairGaps>& scan, double rel_tol = 1e-6);

}  // namespace charur
