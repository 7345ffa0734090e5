#include "snailcv/polynomial.hpp"

#include <cmath>
#include <sstream>

#include "snailcv/fock.hpp"

namespace snailcv::poly {

namespace {

double binomial(int n, int k) {
  double r = 1.0;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

double factorial(int n) {
  double r = 1.0;
  for (int i = 2; i <= n; ++i) r *= i;
  return r;
}

// p^j q^k = sum_m C(j,m) C(k,m) m! (-i)^m q^(k-m) p^(j-m).
cplx reorder_weight(int j, int k, int m) {
  static const cplx minus_i_pow[4] = {1.0, cplx(0.0, -1.0), -1.0, cplx(0.0, 1.0)};
  return binomial(j, m) * binomial(k, m) * factorial(m) * minus_i_pow[m % 4];
}

}  // namespace

WeylPolynomial WeylPolynomial::constant(cplx c) { return monomial(0, 0, c); }
WeylPolynomial WeylPolynomial::q(int power) { return monomial(power, 0); }
WeylPolynomial WeylPolynomial::p(int power) { return monomial(0, power); }

WeylPolynomial WeylPolynomial::monomial(int q_power, int p_power, cplx c) {
  WeylPolynomial out;
  out.add({q_power, p_power}, c);
  return out;
}

void WeylPolynomial::add(Key k, cplx c) {
  if (c == cplx(0.0, 0.0)) return;
  auto [it, inserted] = terms_.emplace(k, c);
  if (!inserted) {
    it->second += c;
    if (it->second == cplx(0.0, 0.0)) terms_.erase(it);
  }
}

cplx WeylPolynomial::coeff(int q_power, int p_power) const {
  auto it = terms_.find({q_power, p_power});
  return it == terms_.end() ? cplx(0.0, 0.0) : it->second;
}

bool WeylPolynomial::is_zero(double tol) const {
  for (const auto& [k, c] : terms_)
    if (std::abs(c) > tol) return false;
  return true;
}

int WeylPolynomial::degree(double tol) const {
  int d = -1;
  for (const auto& [k, c] : terms_)
    if (std::abs(c) > tol) d = std::max(d, k.first + k.second);
  return d;
}

WeylPolynomial WeylPolynomial::operator+(const WeylPolynomial& o) const {
  WeylPolynomial out = *this;
  for (const auto& [k, c] : o.terms_) out.add(k, c);
  return out;
}

WeylPolynomial WeylPolynomial::operator-(const WeylPolynomial& o) const { return *this + o * -1.0; }

WeylPolynomial WeylPolynomial::operator*(cplx s) const {
  WeylPolynomial out;
  for (const auto& [k, c] : terms_) out.add(k, c * s);
  return out;
}

WeylPolynomial WeylPolynomial::operator*(const WeylPolynomial& o) const {
  WeylPolynomial out;
  // (q^a p^b)(q^c p^d) = q^a (p^b q^c) p^d
  for (const auto& [k1, c1] : terms_)
    for (const auto& [k2, c2] : o.terms_) {
      const int b = k1.second, c = k2.first;
      for (int m = 0; m <= std::min(b, c); ++m)
        out.add({k1.first + c - m, b + k2.second - m}, c1 * c2 * reorder_weight(b, c, m));
    }
  return out;
}

WeylPolynomial WeylPolynomial::adjoint() const {
  WeylPolynomial out;
  // (q^i p^j)^dag = p^j q^i
  for (const auto& [k, c] : terms_)
    for (int m = 0; m <= std::min(k.first, k.second); ++m)
      out.add({k.first - m, k.second - m}, std::conj(c) * reorder_weight(k.second, k.first, m));
  return out;
}

bool WeylPolynomial::is_hermitian(double tol) const { return (*this - adjoint()).is_zero(tol); }

Eigen::MatrixXcd WeylPolynomial::to_matrix(int dim) const {
  const fock::LadderOps ops = fock::ladder_ops(dim);
  Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(dim, dim);
  std::map<int, Eigen::MatrixXcd> qp, pp;
  auto power = [dim](std::map<int, Eigen::MatrixXcd>& cache, const Eigen::MatrixXcd& x, int n) {
    auto it = cache.find(n);
    if (it != cache.end()) return it->second;
    Eigen::MatrixXcd r = Eigen::MatrixXcd::Identity(dim, dim);
    for (int i = 0; i < n; ++i) r = r * x;
    cache.emplace(n, r);
    return r;
  };
  for (const auto& [k, c] : terms_) out += c * power(qp, ops.q, k.first) * power(pp, ops.p, k.second);
  return out;
}

std::string WeylPolynomial::to_string() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [k, c] : terms_) {
    if (!first) os << " + ";
    first = false;
    os << "(" << c.real() << (c.imag() < 0 ? "-" : "+") << std::abs(c.imag()) << "i)";
    if (k.first > 0) os << " q^" << k.first;
    if (k.second > 0) os << " p^" << k.second;
  }
  return os.str();
}

WeylPolynomial commutator(const WeylPolynomial& a, const WeylPolynomial& b) { return a * b - b * a; }

}  // namespace snailcv::poly
