#pragma once

#include <optional>
#include <string>
#include <vector>

#include "charur/moments.hpp"

namespace charur {

/// |lhs - rhs| / max(|lhs|, |rhs|, 1e-30) <= tol.
bool saturated(double lhs, double rhs, double tol = tol::kSaturation);

struct PairGaps {
  int i = 0, j = 1;
  double var_x = 0.0, var_y = 0.0, cov = 0.0;
  double c12 = 0.0;         // -(i/2)<[X, Y]>, so |<[X, Y]>| = 2|c12|
  double sum_gap = 0.0;     // var_x + var_y - |<[X,Y]>|
  double heis_gap = 0.0;    // var_x var_y - |<[X,Y]>|^2 / 4
  double schr_gap = 0.0;    // var_x var_y - cov^2 - |<[X,Y]>|^2 / 4
  bool sum_saturated = false;
  bool heis_saturated = false;
  bool schr_saturated = false;
};

/// Pair gaps from entries (i, j) of an uncertainty and commutator matrix.
PairGaps pair_gaps_from(const RMatrix& sigma, const RMatrix& commut, int i, int j);

PairGaps pair_ur_gaps(const Operator& x, const Operator& y, const StateVector& psi, const MomentOptions& opts = {});
PairGaps pair_ur_gaps(const Operator& x, const Operator& y, const DensityMatrix& rho, const MomentOptions& opts = {});

struct OrderGap {
  int r = 0;
  double c_sigma = 0.0;
  double c_comm = 0.0;
  double gap = 0.0;
  bool saturated = false;
};

struct ComplementaryPair {
  int r = 0;
  double alpha = 0.0;
  double p_sq = 0.0;
  double v_sq = 0.0;
};

struct URReport {
  std::vector<std::string> observables;
  int n_states = 1;
  RMatrix sigma;   // summed over states
  RMatrix commut;  // summed over states
  std::vector<OrderGap> orders;  // r = 1..n
  std::vector<PairGaps> pairs;   // all i < j, from the summed matrices
  std::optional<ComplementaryPair> complementary;

  const OrderGap& order(int r) const;
  const PairGaps& pair(int i, int j) const;
};

/// Characteristic URs C_r(sum sigma_m) >= C_r(sum C_m), r = 1..n. Accepts 1..8
/// states; moment matrices are summed entrywise before taking coefficients.
URReport char_ur_report(const ObservableSet& set, const std::vector<StateVector>& states, const MomentOptions& opts = {});
URReport char_ur_report(const ObservableSet& set, const StateVector& psi, const MomentOptions& opts = {});
URReport char_ur_report(const ObservableSet& set, const DensityMatrix& rho, const MomentOptions& opts = {});
/// From already summed matrices.
URReport char_ur_report(std::vector<std::string> labels, const RMatrix& sigma, const RMatrix& commut, int n_states = 1);

/// 1/2 [Dxx(1) Dyy(2) + Dxx(2) Dyy(1)] - Dxy(1) Dxy(2) - 1/4 <1|[X,Y]|1><2|[Y,X]|2>.
double two_state_schrodinger(const Operator& x, const Operator& y, const StateVector& psi1, const StateVector& psi2,
                             const MomentOptions& opts = {});

/// <1|X^2|1><2|X^2|2> - |<1|X^2|2>|^2, with X^2 applied as (X psi, X psi).
double one_observable_two_state(const Operator& x, const StateVector& psi1, const StateVector& psi2,
                                const MomentOptions& opts = {});

/// P^2 = 1 - C_r(sigma)/alpha, V^2 = C_r(C)/alpha. Throws InvalidScale if
/// alpha <= 0 or alpha < C_r(sigma).
ComplementaryPair complementary(const URReport& report, int r, double alpha);

/// Scan maximum of C_r(sigma) over a family of reports, the default scale for
/// bounded observable sets.
double complementary_scale(const std::vector<URReport>& family, int r);

}  // namespace charur
