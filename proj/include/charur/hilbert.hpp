#pragma once

#include <map>
#include <string>
#include <vector>

#include "charur/types.hpp"

namespace charur {

enum class BasisKind { Fock, Su11, Su2, Multimode };

/// Truncated basis. Fock and su(1,1) bases are cut at `cutoff` levels
/// (su(1,1) labels are |k, k+n>, n = 0..cutoff-1); su(2) is exact with 2j+1
/// levels; multimode is a tensor product of `modes` Fock spaces of `cutoff`
/// levels each, index = n1 * cutoff + n2.
struct BasisSpec {
  BasisKind kind = BasisKind::Fock;
  int cutoff = 0;
  double k = 0.0;  // Bargmann index (su11)
  double j = 0.0;  // spin (su2)
  int modes = 1;   // multimode

  static BasisSpec fock(int cutoff);
  static BasisSpec su11(double k, int cutoff);
  static BasisSpec su2(double j);
  static BasisSpec multimode(int modes, int cutoff);

  int dim() const;
  bool truncated() const { return kind != BasisKind::Su2; }
  std::string describe() const;

  bool operator==(const BasisSpec&) const = default;
};

// Default cutoffs; CHARUR_CUTOFF overrides the single-mode Fock default.
inline constexpr int kDefaultFockCutoff = 128;
inline constexpr int kDefaultSu11Cutoff = 96;
inline constexpr int kDefaultModeCutoff = 20;
int default_fock_cutoff();

struct Operator {
  std::string label;
  CMatrix matrix;
  BasisSpec basis;
  bool hermitian = false;

  int dim() const { return static_cast<int>(matrix.rows()); }
};

/// Normalized amplitudes with a truncation certificate. `tail_mass` is the
/// probability in the top 10% of basis levels (per mode for multimode bases;
/// always 0 for the exact su(2) basis).
class StateVector {
 public:
  StateVector() = default;

  /// Normalizes `amplitudes` (throws InvalidInput for a null or non-finite
  /// vector or a dimension mismatch) and records the tail mass.
  static StateVector from_amplitudes(const BasisSpec& basis, CVector amplitudes,
                                     std::string family = "custom",
                                     std::map<std::string, cplx> params = {});

  /// Keeps already-normalized amplitudes bit for bit (|norm - 1| <= 1e-12,
  /// else InvalidInput); used when loading serialized states.
  static StateVector restore(const BasisSpec& basis, CVector amplitudes, std::string family,
                             std::map<std::string, cplx> params);

  const CVector& amplitudes() const { return amplitudes_; }
  const BasisSpec& basis() const { return basis_; }
  double tail_mass() const { return tail_mass_; }
  const std::string& family() const { return family_; }
  const std::map<std::string, cplx>& params() const { return params_; }
  int dim() const { return static_cast<int>(amplitudes_.size()); }

 private:
  CVector amplitudes_;
  BasisSpec basis_;
  double tail_mass_ = 0.0;
  std::string family_;
  std::map<std::string, cplx> params_;
};

/// Hermitian, unit-trace, PSD matrix on a basis.
class DensityMatrix {
 public:
  DensityMatrix() = default;
  static DensityMatrix from_matrix(const BasisSpec& basis, CMatrix rho);
  static DensityMatrix from_state(const StateVector& psi);
  /// Equal-weight or weighted mixture of pure states on one basis.
  static DensityMatrix mixture(const std::vector<StateVector>& states, const std::vector<double>& weights);

  const CMatrix& matrix() const { return matrix_; }
  const BasisSpec& basis() const { return basis_; }
  double tail_mass() const { return tail_mass_; }
  int dim() const { return static_cast<int>(matrix_.rows()); }

 private:
  CMatrix matrix_;
  BasisSpec basis_;
  double tail_mass_ = 0.0;
};

/// Probability of the top 10% of levels.
double top_decile_mass(const BasisSpec& basis, const CVector& amplitudes);

/// sum_{n >= level} |psi_n|^2 (single-index levels).
double tail_mass(const StateVector& psi, int level);

struct BosonOps {
  Operator a, adag, q, p, n;
};
BosonOps boson_rep(int cutoff);

struct Su11Ops {
  Operator k1, k2, k3, kp, km;
};
Su11Ops su11_rep(double k, int cutoff);

/// a^2/2, a†^2/2, a†a/2 + 1/4 restricted to the even (k = 1/4) or odd
/// (k = 3/4) Fock sector, expressed in the sector basis |k, k+n>.
Su11Ops su11_bosonic_sector(double k, int cutoff);

struct Su2Ops {
  Operator j1, j2, j3, jp, jm;
};
Su2Ops su2_rep(double j);

struct MultimodeOps {
  std::vector<Operator> a, adag, q, p;
};
/// s independent boson modes; s > 2 throws UnsupportedScale.
MultimodeOps tensor_rep(int modes, int cutoff);

Operator identity_op(const BasisSpec& basis);

/// Lifts a single-mode operator to mode `mode` of a multimode basis.
Operator lift_to_mode(const Operator& single, int mode, int modes);

cplx expectation(const Operator& op, const StateVector& psi);
cplx expectation(const Operator& op, const DensityMatrix& rho);

cplx overlap(const StateVector& a, const StateVector& b);  // <a|b>
double ray_overlap(const StateVector& a, const StateVector& b);  // |<a|b>|

/// Commutator matrix [x, y].
CMatrix commutator(const CMatrix& x, const CMatrix& y);

}  // namespace charur
