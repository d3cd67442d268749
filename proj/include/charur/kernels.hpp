#pragma once

#include <exception>
#include <functional>
#include <vector>

#include "charur/types.hpp"

namespace charur::kernels {

// Each pair of kernels runs the same per-element arithmetic in the same order,
// so serial and parallel results are bitwise identical.

/// Column i of the result is ops[i] * psi.
CMatrix apply_ops_serial(const std::vector<const CMatrix*>& ops, const CVector& psi);
CMatrix apply_ops_parallel(const std::vector<const CMatrix*>& ops, const CVector& psi);

/// G = Y† Y.
CMatrix gram_serial(const CMatrix& y);
CMatrix gram_parallel(const CMatrix& y);

/// Runs body(i) for i in [0, n). With jobs > 1 the indices are spread over
/// OpenMP threads; the exception of the lowest failing index is rethrown.
void map_grid(int n, const std::function<void(int)>& body, int jobs = 1);

/// Threads OpenMP would use for `jobs` (jobs <= 0 means all available).
int effective_jobs(int jobs);

}  // namespace charur::kernels
