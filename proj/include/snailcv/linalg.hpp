#pragma once

#include <complex>
#include <functional>

#include <Eigen/Dense>

namespace snailcv::linalg {

/// exp(i t H) for Hermitian H through its eigendecomposition, so the result
/// is unitary to rounding. H is symmetrized before diagonalization.
Eigen::MatrixXcd exp_i_hermitian(const Eigen::MatrixXcd& h, double t);

/// f(H) = V f(lambda) V^dag for Hermitian H.
Eigen::MatrixXcd function_of_hermitian(const Eigen::MatrixXcd& h,
                                       const std::function<std::complex<double>(double)>& f);

/// Largest singular value.
double operator_norm(const Eigen::MatrixXcd& m);

}  // namespace snailcv::linalg
