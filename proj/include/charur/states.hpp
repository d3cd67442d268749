#pragma once

#include <random>
#include <vector>

#include "charur/hilbert.hpp"

namespace charur {

/// Parameters (u, v) of the eigen-equation (u a + v a†)|psi> = alpha |psi>.
/// Stored on the shell |u|^2 - |v|^2 = 1.
struct SqueezeParams {
  cplx u{1.0};
  cplx v{0.0};
  bool normalized_flag = true;  // input was already on the shell

  /// Rescales onto the shell; |u| <= |v| throws InvalidInput.
  static SqueezeParams make(cplx u, cplx v);
  /// u = cosh r, v = sinh r e^{i theta}.
  static SqueezeParams polar(double r, double theta);

  /// zeta = r e^{i phi} with cosh r = |u| and phi = arg v - arg u + pi, so that
  /// exp(zeta K+ - zeta* K-) carries a onto e^{-i arg u}(u a + v a†).
  cplx zeta() const;
};

/// Parameters of the su(1,1) combination u K- + v K+ + w K3 with eigenvalue z.
struct IntelligentParams {
  cplx z{0.0};
  cplx u{1.0};
  cplx v{0.0};
  cplx w{0.0};
  double k = 0.5;

  /// Principal sqrt(w^2 - 4uv): Re >= 0, ties toward Im >= 0.
  cplx l() const;
  bool normalizable() const;  // |w + l| < 2|u| or |w - l| < 2|u|
  bool robertson_minimizing(double tol = 1e-12) const;  // Im w = 0 and v = u*
};

/// exp(r (K+ - K-)) on a Fock space of `dim` levels, K+ = a†^2/2, stored as its
/// even and odd parity blocks. Rotations by phi are applied as diagonal phases,
/// so one instance serves every squeeze direction at fixed r.
class SqueezeOperator {
 public:
  SqueezeOperator(double r, int dim);

  int dim() const { return dim_; }
  double r() const { return r_; }
  /// exp(zeta K+ - zeta* K-) psi with zeta = r e^{i phi}.
  CVector apply(double phi, const CVector& psi) const;

 private:
  double r_;
  int dim_;
  CMatrix even_, odd_;
};

/// Extra levels used when building squeezed states before cutting to N.
int squeeze_padding(int cutoff);

/// Smallest cutoff satisfying the Glauber tail bound N > |alpha|^2 + 10|alpha| + 20.
int glauber_min_cutoff(cplx alpha);

StateVector fock_state(int n, int cutoff);

StateVector glauber(cplx alpha, int cutoff);

StateVector canonical_ss(cplx alpha, const SqueezeParams& sq, int cutoff);
/// Same state, reusing a prebuilt squeeze operator with r = arccosh|u| and
/// dim >= cutoff.
StateVector canonical_ss(cplx alpha, const SqueezeParams& sq, int cutoff, const SqueezeOperator& op);

/// canonical_ss at the smallest cutoff in {64, 96, 128, ...} <= max_cutoff
/// whose tail mass is below `tail`.
StateVector canonical_ss_auto(cplx alpha, const SqueezeParams& sq, double tail = 1e-14, int max_cutoff = 1024);

StateVector squeezed_fock(int n, const SqueezeParams& sq, int cutoff);

/// Barut-Girardello state: K- eigenstate with eigenvalue z.
StateVector bg_cs(cplx z, double k, int cutoff);
/// log N_BG = (log Gamma(2k) - log 0F1(2k; |z|^2)) / 2.
double bg_log_norm(cplx z, double k);

/// Perelomov su(1,1) state (1 - |xi|^2)^k exp(xi K+)|k,k>.
StateVector su11_cs(cplx xi, double k, int cutoff);
/// exp(zeta K+ - zeta* K-)|k,k> by dense exponential; equals su11_cs with
/// xi = e^{i arg zeta} tanh|zeta|.
StateVector su11_cs_by_squeeze(cplx zeta, double k, int cutoff);

/// Smallest cutoff (>= min_cutoff) for which the series tail of the family is
/// below `tail` and the top-decile mass is negligible.
int su11_cs_cutoff(cplx xi, double k, double tail = 1e-20, int min_cutoff = 32);
int bg_cs_cutoff(cplx z, double k, double tail = 1e-20, int min_cutoff = 32);

/// Normalized eigenstate of u K- + v K+ + w K3 with eigenvalue z, from the
/// terminating-hypergeometric amplitudes. The series is evaluated on the branch
/// of l for which |w + l| < 2|u|.
StateVector su11_intelligent(const IntelligentParams& p, int cutoff);

/// Discrete eigenvalue -(k + m) l_c of a Robertson-minimizing combination
/// (Im w = 0, v = u*, |w| > 2|u|), with l_c the convergent branch.
cplx intelligent_discrete_eigenvalue(const IntelligentParams& p, int m);

/// Root xi of u xi^2 + w xi + v = 0 inside the unit disk, or throws
/// InvalidInput. The su(1,1) state with this xi is the m = 0 eigenstate.
cplx intelligent_cs_xi(const IntelligentParams& p);

enum class Parity { Even, Odd };
StateVector even_odd_cs(cplx alpha, Parity parity, int cutoff);

/// exp(tau J+)|j,-j>, normalized.
StateVector su2_cs(cplx tau, double j);

/// Complex Gaussian amplitudes on the lowest `support` levels (per mode for a
/// multimode basis), zero elsewhere; support <= 0 means 0.8 * cutoff.
StateVector random_state(const BasisSpec& basis, std::mt19937_64& rng, int support = 0);
/// Mixture of `rank` random states with random weights.
DensityMatrix random_density(const BasisSpec& basis, std::mt19937_64& rng, int rank, int support = 0);

}  // namespace charur
