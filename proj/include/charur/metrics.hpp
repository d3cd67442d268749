#pragma once

#include <string>

#include "charur/hilbert.hpp"

namespace charur {

struct DistanceResult {
  double g = 0.0;     // in [0, 1]
  double d_sq = 0.0;  // 2 (1 - g)
  std::string observable;
};

/// g = |<psi2|X^2|psi1>| / sqrt(<psi1|X^2|psi1><psi2|X^2|psi2>), evaluated with
/// y = X psi. X must be Hermitian and strictly positive (min eigenvalue
/// > 1e-10) or the identity; otherwise InvalidObservable.
DistanceResult g_overlap(const StateVector& psi1, const StateVector& psi2, const Operator& x);

/// Throws InvalidObservable unless x qualifies for g_overlap.
void require_positive_observable(const Operator& x);

}  // namespace charur
