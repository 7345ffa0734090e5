#pragma once

#include <complex>
#include <functional>
#include <variant>
#include <vector>

#include <Eigen/Dense>

#include "snailcv/circuit.hpp"

namespace snailcv::fock {

using cplx = std::complex<double>;
using Operator = Eigen::MatrixXcd;
using Ket = Eigen::VectorXcd;

/// Truncated single-mode operators. Quadratures follow q = (a + a^dag)/sqrt 2,
/// p = (a - a^dag)/(i sqrt 2), so [q, p] = i away from the truncation edge
/// and the vacuum variance is 1/2.
struct LadderOps {
  Operator a;
  Operator adag;
  Operator number;
  Operator q;
  Operator p;
};

LadderOps ladder_ops(int dim);

bool is_hermitian(const Operator& op, double tol = 1e-12);

/// Density matrix on a truncated Fock space. Pure states may be stored as a
/// ket and are promoted to |psi><psi| on demand.
class QuantumState {
 public:
  static QuantumState vacuum(int dim);
  static QuantumState fock(int dim, int n);
  /// Normalizes the ket.
  static QuantumState from_ket(Ket psi);
  /// Validates trace, Hermiticity and that no eigenvalue lies below
  /// -eigenvalue_floor.
  static QuantumState from_density(Operator rho, double eigenvalue_floor = 1e-8);
  /// No validation; for integrator output that is checked separately.
  static QuantumState from_density_unchecked(Operator rho);

  int dim() const;
  bool is_ket() const { return std::holds_alternative<Ket>(data_); }
  const Ket& ket() const;
  Operator density() const;

  double trace() const;
  double purity() const;
  /// Population of the top `fraction` of Fock levels (at least one level).
  double top_population(double fraction = 0.1) const;
  double population(int n) const;

 private:
  explicit QuantumState(std::variant<Ket, Operator> d) : data_(std::move(d)) {}
  std::variant<Ket, Operator> data_;
};

cplx expectation(const QuantumState& state, const Operator& op);
double variance(const QuantumState& state, const Operator& op);

/// r = -log(Var(p) / V0) / 2 with the vacuum variance V0 = 1/2.
double squeezing_from_variance(const QuantumState& state);

/// exp(-i theta a^dag a) applied to the state.
QuantumState rotate(const QuantumState& state, double theta);

/// Displacement D(beta) = exp(beta a^dag - conj(beta) a) on the truncated
/// space. Throws TruncationLeak when |beta|^2 > dim / 10.
QuantumState displace(const QuantumState& state, cplx beta);

Operator displacement_operator(int dim, cplx beta);

/// Sum of constant operators weighted by real scalar envelopes of time.
/// An empty envelope means the constant 1.
class TimeDependentHamiltonian {
 public:
  struct Term {
    Operator op;
    std::function<double(double)> envelope;
  };

  explicit TimeDependentHamiltonian(int dim) : dim_(dim) {}

  /// Throws DimensionMismatch if `op` is not dim x dim.
  void add(Operator op, std::function<double(double)> envelope = {});

  int dim() const { return dim_; }
  const std::vector<Term>& terms() const { return terms_; }
  Operator at(double t) const;

 private:
  int dim_;
  std::vector<Term> terms_;
};

/// Lab-frame resonator Hamiltonian driven by the flux modulation `drive`:
///   w_r n + g1q phi^2 X + (g2l phi + g2q phi^2) X^2
///         + (g3 + g3l phi + g3q phi^2) X^3 + (g4 + g4l phi + g4q phi^2) X^4
/// with X = a + a^dag. The linear-in-drive g1 term is omitted.
TimeDependentHamiltonian build_snail_hamiltonian(const circuit::CouplingSet& couplings,
                                                 std::function<double(double)> drive, int dim);

/// Matrix power of X = a + a^dag on the truncated space.
Operator position_power(int dim, int power);

}  // namespace snailcv::fock
