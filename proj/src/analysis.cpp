#include "snailcv/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "snailcv/constants.hpp"
#include "snailcv/errors.hpp"
#include "snailcv/linalg.hpp"

namespace snailcv::analysis {

using fock::cplx;
using fock::Ket;
using fock::Operator;

namespace {

int padded_dim(int dim) { return 2 * dim + 40; }

Ket squeezed_vacuum_padded(double r, int pad) {
  const fock::LadderOps ops = fock::ladder_ops(pad);
  const Operator a2 = ops.a * ops.a;
  const Operator ad2 = ops.adag * ops.adag;
  // exp(G) with anti-Hermitian G = (r/2)(a^dag^2 - a^2) equals exp(i H) for H = -i G.
  const Operator h = cplx(0.0, -0.5 * r) * (ad2 - a2);
  Ket vac = Ket::Zero(pad);
  vac(0) = 1.0;
  return linalg::exp_i_hermitian(h, 1.0) * vac;
}

QuantumState cut_to(const Ket& psi, int dim, double max_leak, const char* who) {
  const double outside = psi.tail(psi.size() - dim).squaredNorm();
  if (outside > max_leak) {
    std::ostringstream msg;
    msg << who << ": " << outside << " of the norm lies above level " << dim - 1;
    throw TruncationLeak(msg.str());
  }
  return QuantumState::from_ket(psi.head(dim));
}

// Hermite functions psi_n(x) for n < count, hbar = 1.
std::vector<double> hermite_functions(double x, int count) {
  std::vector<double> out(count);
  out[0] = std::pow(constants::pi, -0.25) * std::exp(-0.5 * x * x);
  if (count > 1) out[1] = std::sqrt(2.0) * x * out[0];
  for (int n = 1; n + 1 < count; ++n)
    out[n + 1] = std::sqrt(2.0 / (n + 1)) * x * out[n] - std::sqrt(static_cast<double>(n) / (n + 1)) * out[n - 1];
  return out;
}

Eigen::VectorXd trapezoid_weights(const Eigen::VectorXd& axis) {
  const Eigen::Index n = axis.size();
  Eigen::VectorXd w = Eigen::VectorXd::Zero(n);
  for (Eigen::Index i = 0; i + 1 < n; ++i) {
    const double h = axis(i + 1) - axis(i);
    w(i) += 0.5 * h;
    w(i + 1) += 0.5 * h;
  }
  return w;
}

Eigen::VectorXd linspace(double lo, double hi, int n) {
  if (n < 2) throw std::invalid_argument("GridSpec: need at least two samples per axis");
  if (!(hi > lo)) throw std::invalid_argument("GridSpec: empty axis range");
  return Eigen::VectorXd::LinSpaced(n, lo, hi);
}

}  // namespace

QuantumState ideal_squeezed_state(double r, int dim, double max_leak) {
  if (dim < 2) throw std::invalid_argument("ideal_squeezed_state: dim must be >= 2");
  return cut_to(squeezed_vacuum_padded(r, padded_dim(dim)), dim, max_leak, "ideal_squeezed_state");
}

QuantumState ideal_cubic_phase_state(double gamma, double r, int dim, double max_leak) {
  if (dim < 2) throw std::invalid_argument("ideal_cubic_phase_state: dim must be >= 2");
  const int pad = padded_dim(dim);
  const Ket sq = squeezed_vacuum_padded(r, pad);
  const Operator cubic = linalg::function_of_hermitian(
      fock::ladder_ops(pad).q, [gamma](double x) { return std::polar(1.0, gamma * x * x * x); });
  return cut_to(cubic * sq, dim, max_leak, "ideal_cubic_phase_state");
}

GridSpec GridSpec::refined() const {
  GridSpec g = *this;
  g.nq = 2 * nq - 1;
  g.np = 2 * np - 1;
  return g;
}

double WignerGrid::dq() const { return q_axis.size() > 1 ? q_axis(1) - q_axis(0) : 0.0; }
double WignerGrid::dp() const { return p_axis.size() > 1 ? p_axis(1) - p_axis(0) : 0.0; }

WignerGrid wigner(const QuantumState& state, const GridSpec& spec) {
  WignerGrid out;
  out.q_axis = linspace(spec.q_min, spec.q_max, spec.nq);
  out.p_axis = linspace(spec.p_min, spec.p_max, spec.np);
  out.values.resize(spec.nq, spec.np);

  const Operator rho = state.density();
  const int m_dim = static_cast<int>(rho.rows());
  std::vector<double> sq(m_dim + 1);
  for (int n = 0; n <= m_dim; ++n) sq[n] = std::sqrt(static_cast<double>(n));
  std::vector<cplx> wl(m_dim);

  for (int i = 0; i < spec.nq; ++i) {
    for (int j = 0; j < spec.np; ++j) {
      const cplx alpha = cplx(out.q_axis(i), out.p_axis(j)) / std::sqrt(2.0);
      const cplx two_a = 2.0 * alpha;
      const cplx two_ac = std::conj(two_a);
      wl[0] = std::exp(-2.0 * std::norm(alpha)) / constants::pi;
      double w = rho(0, 0).real() * wl[0].real();
      for (int n = 1; n < m_dim; ++n) {
        wl[n] = two_a * wl[n - 1] / sq[n];
        w += 2.0 * (rho(0, n) * wl[n]).real();
      }
      for (int m = 1; m < m_dim; ++m) {
        cplx temp = wl[m];
        wl[m] = (two_ac * temp - sq[m] * wl[m - 1]) / sq[m];
        w += (rho(m, m) * wl[m]).real();
        for (int n = m + 1; n < m_dim; ++n) {
          const cplx next = (two_a * wl[n - 1] - sq[m] * temp) / sq[n];
          temp = wl[n];
          wl[n] = next;
          w += 2.0 * (rho(m, n) * wl[n]).real();
        }
      }
      out.values(i, j) = w;
    }
  }
  return out;
}

double wigner_displaced_parity(const QuantumState& state, double q, double p) {
  const int dim = state.dim();
  const int pad = padded_dim(dim);
  Operator rho = Operator::Zero(pad, pad);
  rho.topLeftCorner(dim, dim) = state.density();
  const cplx alpha = cplx(q, p) / std::sqrt(2.0);
  const Operator d = fock::displacement_operator(pad, -alpha);
  // D(alpha)^dag rho D(alpha) = D(-alpha) rho D(-alpha)^dag.
  const Operator shifted = d * rho * d.adjoint();
  double parity = 0.0;
  for (int n = 0; n < pad; ++n) parity += (n % 2 == 0 ? 1.0 : -1.0) * shifted(n, n).real();
  return parity / constants::pi;
}

double fidelity(const QuantumState& rho, const QuantumState& target_pure) {
  if (rho.dim() != target_pure.dim())
    throw DimensionMismatch("fidelity: dims " + std::to_string(rho.dim()) + " and " +
                            std::to_string(target_pure.dim()));
  Ket psi;
  if (target_pure.is_ket()) {
    psi = target_pure.ket();
  } else {
    if (std::abs(target_pure.purity() - 1.0) > 1e-8)
      throw std::invalid_argument("fidelity: target state is not pure");
    Eigen::SelfAdjointEigenSolver<Operator> es(target_pure.density());
    psi = es.eigenvectors().col(es.eigenvalues().size() - 1);
  }
  double f;
  if (rho.is_ket())
    f = std::norm(psi.dot(rho.ket()));
  else
    f = psi.dot(rho.density() * psi).real();
  return std::clamp(f, 0.0, 1.0);
}

double negativity_volume(const WignerGrid& w) {
  const Eigen::VectorXd wq = trapezoid_weights(w.q_axis);
  const Eigen::VectorXd wp = trapezoid_weights(w.p_axis);
  const Eigen::MatrixXd neg = (-w.values).cwiseMax(0.0);
  return wq.dot(neg * wp);
}

double normalization(const WignerGrid& w) {
  return trapezoid_weights(w.q_axis).dot(w.values * trapezoid_weights(w.p_axis));
}

Eigen::VectorXd q_marginal(const WignerGrid& w) { return w.values * trapezoid_weights(w.p_axis); }

Eigen::VectorXd p_marginal(const WignerGrid& w) {
  return w.values.transpose() * trapezoid_weights(w.q_axis);
}

Eigen::VectorXd q_density(const QuantumState& state, const Eigen::VectorXd& q_axis) {
  const Operator rho = state.density();
  const int d = state.dim();
  Eigen::VectorXd out(q_axis.size());
  for (Eigen::Index k = 0; k < q_axis.size(); ++k) {
    const std::vector<double> h = hermite_functions(q_axis(k), d);
    const Eigen::Map<const Eigen::VectorXd> v(h.data(), d);
    out(k) = (v.cast<cplx>().dot(rho * v.cast<cplx>())).real();
  }
  return out;
}

Eigen::VectorXd p_density(const QuantumState& state, const Eigen::VectorXd& p_axis) {
  // <p|n> = (-i)^n psi_n(p).
  const Operator rho = state.density();
  const int d = state.dim();
  Eigen::VectorXd out(p_axis.size());
  const cplx phases[4] = {1.0, cplx(0.0, -1.0), -1.0, cplx(0.0, 1.0)};
  for (Eigen::Index k = 0; k < p_axis.size(); ++k) {
    const std::vector<double> h = hermite_functions(p_axis(k), d);
    Ket bra(d);  // components of <p| in the Fock basis
    for (int n = 0; n < d; ++n) bra(n) = phases[n % 4] * h[n];
    // <p|rho|p> = sum_mn <p|m> rho_mn <n|p>; dot conjugates its first argument.
    out(k) = bra.conjugate().dot(rho * bra.conjugate()).real();
  }
  return out;
}

double cubicity_moment_estimate(const QuantumState& state) {
  const fock::LadderOps ops = fock::ladder_ops(state.dim());
  const Operator q2 = ops.q * ops.q;
  const Operator sym = 0.5 * (q2 * ops.p + ops.p * q2);
  const double cov = fock::expectation(state, sym).real() -
                     fock::expectation(state, q2).real() * fock::expectation(state, ops.p).real();
  const double var = fock::variance(state, q2);
  return cov / (3.0 * var);
}

void write_wigner_csv(std::ostream& os, const WignerGrid& w) {
  os << "q,p,W\n";
  os.precision(12);
  for (Eigen::Index i = 0; i < w.q_axis.size(); ++i)
    for (Eigen::Index j = 0; j < w.p_axis.size(); ++j)
      os << w.q_axis(i) << ',' << w.p_axis(j) << ',' << w.values(i, j) << '\n';
}

WignerGrid read_wigner_csv(std::istream& is) {
  std::string line;
  if (!std::getline(is, line) || line.rfind("q,p,W", 0) != 0)
    throw std::runtime_error("wigner csv: missing header q,p,W");
  std::vector<double> qs, ps, ws;
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    std::istringstream row(line);
    double v[3];
    char comma;
    if (!(row >> v[0] >> comma >> v[1] >> comma >> v[2]))
      throw std::runtime_error("wigner csv: malformed row '" + line + "'");
    qs.push_back(v[0]);
    ps.push_back(v[1]);
    ws.push_back(v[2]);
  }
  if (qs.empty()) throw std::runtime_error("wigner csv: no samples");
  // q major: p cycles fastest.
  size_t np = 1;
  while (np < qs.size() && qs[np] == qs[0]) ++np;
  if (qs.size() % np != 0) throw std::runtime_error("wigner csv: ragged grid");
  const size_t nq = qs.size() / np;
  WignerGrid w;
  w.q_axis.resize(nq);
  w.p_axis.resize(np);
  w.values.resize(nq, np);
  for (size_t i = 0; i < nq; ++i) {
    w.q_axis(i) = qs[i * np];
    for (size_t j = 0; j < np; ++j) w.values(i, j) = ws[i * np + j];
  }
  for (size_t j = 0; j < np; ++j) w.p_axis(j) = ps[j];
  return w;
}

}  // namespace snailcv::analysis
