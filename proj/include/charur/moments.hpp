#pragma once

#include <string>
#include <vector>

#include "charur/hilbert.hpp"
#include "charur/states.hpp"

namespace charur {

/// Ordered Hermitian observables on one basis. Canonical sets are ordered
/// (q_1..q_s, p_1..p_s).
struct ObservableSet {
  std::string name;
  std::vector<Operator> ops;

  /// Validates Hermiticity (1e-12) and a shared basis.
  static ObservableSet make(std::string name, std::vector<Operator> ops);

  int size() const { return static_cast<int>(ops.size()); }
  const BasisSpec& basis() const { return ops.front().basis; }
  std::vector<std::string> labels() const;
  std::vector<const CMatrix*> matrices() const;
};

/// Registry lookup: "canonical[:s]", "su11[:k]", "su2[:j]", "a2-quadratures".
/// Builds the set on `basis`; an explicit k or j must match the basis.
ObservableSet observable_set(const std::string& spec, const BasisSpec& basis);

/// The basis a registry name implies when no state is given.
BasisSpec basis_for_observables(const std::string& spec, int cutoff);

ObservableSet canonical_set(int modes, int cutoff);
ObservableSet su11_set(double k, int cutoff);
ObservableSet su2_set(double j);
/// X = (a^2 + a†^2)/2, Y = (a^2 - a†^2)/(2i).
ObservableSet a2_quadratures(int cutoff);

struct MomentOptions {
  bool allow_tail = false;  // skip the tail-mass refusal
  double max_tail = tol::kMaxTail;
  bool parallel = false;    // use the OpenMP kernels
};

struct MomentReport {
  std::vector<std::string> labels;
  RVector means;
  RMatrix sigma;       // symmetrized covariances
  RMatrix commut;      // C_ij = -(i/2) <[X_i, X_j]>
  CMatrix robertson;   // sigma + i C
  double sigma_min_eig = 0.0;
  double robertson_min_eig = 0.0;
  double tail_mass = 0.0;
};

MomentReport moment_report(const ObservableSet& set, const StateVector& psi, const MomentOptions& opts = {});
MomentReport moment_report(const ObservableSet& set, const DensityMatrix& rho, const MomentOptions& opts = {});

/// sigma = B^{-1} [[0, Ct], [Ct^T, 0]] B^{-T} with
/// B = [[u+v, i(u-v)], [u*+v*, i(v*-u*)]] and Ct_{mu nu} = <[A_mu, A_nu†]>/2 for
/// A = (u+v) q + i(u-v) p. Canonical states with u u† - v v† = I have Ct = I.
/// Throws InvalidInput for singular B or a non-real result.
RMatrix gaussian_sigma(const CMatrix& u, const CMatrix& v, const CMatrix& ct);

/// Single pair (X, Y): Ct = -i (|u|^2 - |v|^2) <[X, Y]>.
RMatrix gaussian_sigma_pair(cplx u, cplx v, cplx mean_commutator);

struct UvMoments {
  double dq2 = 0.0;
  double dp2 = 0.0;
  double dpq = 0.0;
};

/// Closed-form (Dq^2, Dp^2, Dpq) = (|u-v|^2/2, |u+v|^2/2, Im(u v*)) for
/// eigenstates of u a + v a† on the shell.
UvMoments uv_moments(const SqueezeParams& sq);
UvMoments uv_moments(cplx u, cplx v);

}  // namespace charur
