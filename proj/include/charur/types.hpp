#pragma once

#include <complex>

#include <Eigen/Dense>

namespace charur {

using cplx = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;
using RMatrix = Eigen::MatrixXd;
using RVector = Eigen::VectorXd;

inline constexpr cplx kI{0.0, 1.0};

// Library-wide tolerances.
namespace tol {
inline constexpr double kHermitian = 1e-12;   // entrywise, relative to max-norm
inline constexpr double kPsd = 1e-10;         // min eigenvalue floor
inline constexpr double kSaturation = 1e-9;   // relative UR gap
inline constexpr double kMaxTail = 1e-8;      // moment operations refuse heavier tails
inline constexpr double kNormalization = 1e-12;
inline constexpr double kPhysicalTail = 1e-6; // eigenvector filter
}  // namespace tol

}  // namespace charur
