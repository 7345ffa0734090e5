#pragma once

#include <complex>
#include <map>
#include <string>
#include <utility>

#include <Eigen/Dense>

namespace snailcv::poly {

using cplx = std::complex<double>;

/// Element of the Weyl algebra [q, p] = i, stored in q-left normal order:
/// sum over (i, j) of c_ij q^i p^j.
class WeylPolynomial {
 public:
  using Key = std::pair<int, int>;  // (power of q, power of p)

  WeylPolynomial() = default;
  static WeylPolynomial constant(cplx c);
  static WeylPolynomial q(int power = 1);
  static WeylPolynomial p(int power = 1);
  static WeylPolynomial monomial(int q_power, int p_power, cplx c = 1.0);

  const std::map<Key, cplx>& terms() const { return terms_; }
  cplx coeff(int q_power, int p_power) const;
  bool is_zero(double tol = 0.0) const;

  /// Total degree of the highest nonzero term; -1 for the zero polynomial.
  int degree(double tol = 1e-14) const;

  WeylPolynomial operator+(const WeylPolynomial& o) const;
  WeylPolynomial operator-(const WeylPolynomial& o) const;
  WeylPolynomial operator*(const WeylPolynomial& o) const;
  WeylPolynomial operator*(cplx s) const;
  friend WeylPolynomial operator*(cplx s, const WeylPolynomial& p) { return p * s; }

  /// Hermitian conjugate, re-expressed in q-left order.
  WeylPolynomial adjoint() const;
  bool is_hermitian(double tol = 1e-12) const;

  /// Sum of c_ij q^i p^j with q, p the truncated dim x dim quadratures.
  Eigen::MatrixXcd to_matrix(int dim) const;

  std::string to_string() const;

 private:
  void add(Key k, cplx c);
  std::map<Key, cplx> terms_;
};

WeylPolynomial commutator(const WeylPolynomial& a, const WeylPolynomial& b);

}  // namespace snailcv::poly
