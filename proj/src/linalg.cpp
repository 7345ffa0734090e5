#include "snailcv/linalg.hpp"

#include <complex>

namespace snailcv::linalg {

Eigen::MatrixXcd exp_i_hermitian(const Eigen::MatrixXcd& h, double t) {
  const Eigen::MatrixXcd sym = 0.5 * (h + h.adjoint());
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(sym);
  const Eigen::VectorXcd phases =
      (std::complex<double>(0.0, t) * es.eigenvalues().cast<std::complex<double>>()).array().exp();
  return es.eigenvectors() * phases.asDiagonal() * es.eigenvectors().adjoint();
}

Eigen::MatrixXcd function_of_hermitian(const Eigen::MatrixXcd& h,
                                       const std::function<std::complex<double>(double)>& f) {
  const Eigen::MatrixXcd sym = 0.5 * (h + h.adjoint());
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(sym);
  Eigen::VectorXcd values(es.eigenvalues().size());
  for (Eigen::Index i = 0; i < values.size(); ++i) values(i) = f(es.eigenvalues()(i));
  return es.eigenvectors() * values.asDiagonal() * es.eigenvectors().adjoint();
}

double operator_norm(const Eigen::MatrixXcd& m) {
  if (m.size() == 0) return 0.0;
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(m);
  return svd.singularValues()(0);
}

}  // namespace snailcv::linalg
