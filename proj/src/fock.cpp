#include "snailcv/fock.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "snailcv/errors.hpp"
#include "snailcv/linalg.hpp"

namespace snailcv::fock {

LadderOps ladder_ops(int dim) {
  if (dim < 2) throw std::invalid_argument("ladder_ops: dim must be >= 2");
  LadderOps ops;
  ops.a = Operator::Zero(dim, dim);
  for (int n = 1; n < dim; ++n) ops.a(n - 1, n) = std::sqrt(static_cast<double>(n));
  ops.adag = ops.a.adjoint();
  ops.number = Operator::Zero(dim, dim);
  for (int n = 0; n < dim; ++n) ops.number(n, n) = static_cast<double>(n);
  const double s = 1.0 / std::sqrt(2.0);
  ops.q = s * (ops.a + ops.adag);
  ops.p = cplx(0.0, -s) * (ops.a - ops.adag);
  return ops;
}

bool is_hermitian(const Operator& op, double tol) {
  if (op.rows() != op.cols()) return false;
  return (op - op.adjoint()).cwiseAbs().maxCoeff() <= tol;
}

Operator position_power(int dim, int power) {
  const LadderOps ops = ladder_ops(dim);
  const Operator x = ops.a + ops.adag;
  Operator out = Operator::Identity(dim, dim);
  for (int k = 0; k < power; ++k) out = out * x;
  return out;
}

// ---------------------------------------------------------------------------

QuantumState QuantumState::vacuum(int dim) { return fock(dim, 0); }

QuantumState QuantumState::fock(int dim, int n) {
  if (dim < 2) throw std::invalid_argument("QuantumState: dim must be >= 2");
  if (n < 0 || n >= dim) throw std::invalid_argument("QuantumState: Fock level out of range");
  Ket psi = Ket::Zero(dim);
  psi(n) = 1.0;
  return QuantumState(std::move(psi));
}

QuantumState QuantumState::from_ket(Ket psi) {
  if (psi.size() < 2) throw std::invalid_argument("QuantumState: dim must be >= 2");
  const double norm = psi.norm();
  if (!(norm > 0.0) || !std::isfinite(norm))
    throw std::invalid_argument("QuantumState: ket has zero or non-finite norm");
  psi /= norm;
  return QuantumState(std::move(psi));
}

QuantumState QuantumState::from_density(Operator rho, double eigenvalue_floor) {
  if (rho.rows() != rho.cols() || rho.rows() < 2)
    throw std::invalid_argument("QuantumState: density matrix must be square with dim >= 2");
  if (std::abs(rho.trace().real() - 1.0) > 1e-8 || std::abs(rho.trace().imag()) > 1e-8)
    throw std::invalid_argument("QuantumState: trace must be 1");
  if (!is_hermitian(rho, 1e-9)) throw std::invalid_argument("QuantumState: rho not Hermitian");
  Eigen::SelfAdjointEigenSolver<Operator> es(rho, Eigen::EigenvaluesOnly);
  if (es.eigenvalues().minCoeff() < -eigenvalue_floor)
    throw std::invalid_argument("QuantumState: rho has negative eigenvalues");
  return QuantumState(std::move(rho));
}

QuantumState QuantumState::from_density_unchecked(Operator rho) {
  return QuantumState(std::move(rho));
}

int QuantumState::dim() const {
  return std::visit([](const auto& d) { return static_cast<int>(d.rows()); }, data_);
}

const Ket& QuantumState::ket() const {
  if (!is_ket()) throw std::logic_error("QuantumState: state is stored as a density matrix");
  return std::get<Ket>(data_);
}

Operator QuantumState::density() const {
  if (is_ket()) {
    const Ket& psi = std::get<Ket>(data_);
    return psi * psi.adjoint();
  }
  return std::get<Operator>(data_);
}

double QuantumState::trace() const {
  if (is_ket()) return std::get<Ket>(data_).squaredNorm();
  return std::get<Operator>(data_).trace().real();
}

double QuantumState::purity() const {
  if (is_ket()) {
    const double n = std::get<Ket>(data_).squaredNorm();
    return n * n;
  }
  const Operator& rho = std::get<Operator>(data_);
  // tr(rho^2) = sum |rho_ij|^2 for Hermitian rho.
  return rho.cwiseAbs2().sum();
}

double QuantumState::population(int n) const {
  if (is_ket()) return std::norm(std::get<Ket>(data_)(n));
  return std::get<Operator>(data_)(n, n).real();
}

double QuantumState::top_population(double fraction) const {
  const int d = dim();
  const int count = std::max(1, static_cast<int>(std::ceil(fraction * d)));
  double total = 0.0;
  for (int n = d - count; n < d; ++n) total += population(n);
  return total;
}

// ---------------------------------------------------------------------------

namespace {

void require_dim(const QuantumState& s, const Operator& op, const char* who) {
  if (op.rows() != s.dim() || op.cols() != s.dim())
    throw DimensionMismatch(std::string(who) + ": operator is " + std::to_string(op.rows()) + "x" +
                            std::to_string(op.cols()) + ", state dim " + std::to_string(s.dim()));
}

QuantumState apply_unitary(const QuantumState& s, const Operator& u) {
  if (s.is_ket()) return QuantumState::from_ket(u * s.ket());
  return QuantumState::from_density_unchecked(u * s.density() * u.adjoint());
}

}  // namespace

cplx expectation(const QuantumState& state, const Operator& op) {
  require_dim(state, op, "expectation");
  if (state.is_ket()) return state.ket().dot(op * state.ket());
  // tr(rho op) without forming the product.
  return state.density().transpose().cwiseProduct(op).sum();
}

double variance(const QuantumState& state, const Operator& op) {
  require_dim(state, op, "variance");
  const cplx m = expectation(state, op);
  const cplx m2 = expectation(state, op * op);
  return (m2 - m * m).real();
}

double squeezing_from_variance(const QuantumState& state) {
  const LadderOps ops = ladder_ops(state.dim());
  return -0.5 * std::log(variance(state, ops.p) / 0.5);
}

QuantumState rotate(const QuantumState& state, double theta) {
  const int d = state.dim();
  Eigen::VectorXcd phases(d);
  for (int n = 0; n < d; ++n) phases(n) = std::polar(1.0, -theta * n);
  if (state.is_ket()) return QuantumState::from_ket(phases.asDiagonal() * state.ket());
  const Operator rho = state.density();
  return QuantumState::from_density_unchecked(phases.asDiagonal() * rho *
                                              phases.conjugate().asDiagonal());
}

Operator displacement_operator(int dim, cplx beta) {
  const LadderOps ops = ladder_ops(dim);
  // D(beta) = exp(i H) with Hermitian H = -i (beta a^dag - conj(beta) a).
  const Operator h = cplx(0.0, -1.0) * (beta * ops.adag - std::conj(beta) * ops.a);
  return linalg::exp_i_hermitian(h, 1.0);
}

QuantumState displace(const QuantumState& state, cplx beta) {
  const int d = state.dim();
  if (std::norm(beta) > d / 10.0)
    throw TruncationLeak("displace: |beta|^2 = " + std::to_string(std::norm(beta)) +
                         " exceeds dim/10 for dim " + std::to_string(d));
  return apply_unitary(state, displacement_operator(d, beta));
}

// ---------------------------------------------------------------------------

void TimeDependentHamiltonian::add(Operator op, std::function<double(double)> envelope) {
  if (op.rows() != dim_ || op.cols() != dim_)
    throw DimensionMismatch("TimeDependentHamiltonian: term has shape " + std::to_string(op.rows()) +
                            "x" + std::to_string(op.cols()) + ", expected " + std::to_string(dim_));
  terms_.push_back(Term{std::move(op), std::move(envelope)});
}

Operator TimeDependentHamiltonian::at(double t) const {
  Operator h = Operator::Zero(dim_, dim_);
  for (const Term& term : terms_) {
    const double w = term.envelope ? term.envelope(t) : 1.0;
    if (w != 0.0) h += w * term.op;
  }
  return h;
}

TimeDependentHamiltonian build_snail_hamiltonian(const circuit::CouplingSet& g,
                                                 std::function<double(double)> drive, int dim) {
  const LadderOps ops = ladder_ops(dim);
  const Operator x1 = ops.a + ops.adag;
  const Operator x2 = x1 * x1;
  const Operator x3 = x2 * x1;
  const Operator x4 = x3 * x1;

  TimeDependentHamiltonian h(dim);
  h.add(g.omega_r * ops.number + g.g_dc[3] * x3 + g.g_dc[4] * x4);
  if (!drive) return h;

  const Operator lin = g.g_ac_lin[2] * x2 + g.g_ac_lin[3] * x3 + g.g_ac_lin[4] * x4;
  const Operator quad =
      g.g_ac_quad[1] * x1 + g.g_ac_quad[2] * x2 + g.g_ac_quad[3] * x3 + g.g_ac_quad[4] * x4;
  h.add(lin, drive);
  h.add(quad, [drive](double t) {
    const double f = drive(t);
    return f * f;
  });
  return h;
}

}  // namespace snailcv::fock
