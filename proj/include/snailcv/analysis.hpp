#pragma once

#include <iosfwd>

#include <Eigen/Dense>

#include "snailcv/fock.hpp"

namespace snailcv::analysis {

using fock::QuantumState;

/// exp((r/2)(a^dag^2 - a^2))|0>, squeezed in p for r > 0. Built in a padded
/// space and cut to `dim`; TruncationLeak if more than `max_leak` of the norm
/// sits above level dim - 1.
QuantumState ideal_squeezed_state(double r, int dim, double max_leak = 1e-6);

/// exp(i gamma q^3) applied to the squeezed vacuum of `ideal_squeezed_state`.
/// The cubic phase is applied in the position eigenbasis of the padded space.
QuantumState ideal_cubic_phase_state(double gamma, double r, int dim, double max_leak = 1e-6);

struct GridSpec {
  double q_min = -5.0;
  double q_max = 5.0;
  int nq = 201;
  double p_min = -5.0;
  double p_max = 5.0;
  int np = 201;

  /// Same bounds with the spacing halved.
  GridSpec refined() const;
};

/// values(i, j) = W(q_axis(i), p_axis(j)).
struct WignerGrid {
  Eigen::VectorXd q_axis;
  Eigen::VectorXd p_axis;
  Eigen::MatrixXd values;

  double dq() const;
  double dp() const;
  double min() const { return values.minCoeff(); }
  double max() const { return values.maxCoeff(); }
};

/// W(q, p) with hbar = 1, q = (a + a^dag)/sqrt 2, normalized to integrate to
/// one; the vacuum peak is 1/pi. Uses the Laguerre recursion over the
/// density-matrix elements.
WignerGrid wigner(const QuantumState& state, const GridSpec& spec = {});

/// W(q, p) = (1/pi) tr[rho D(alpha) Pi D(alpha)^dag] by explicit displacement
/// in a padded space. Slow; meant as an independent check of `wigner`.
double wigner_displaced_parity(const QuantumState& state, double q, double p);

/// <psi|rho|psi> for a pure target. A density-matrix target must have
/// purity 1 within 1e-8. Throws DimensionMismatch.
double fidelity(const QuantumState& rho, const QuantumState& target_pure);

/// Trapezoidal integral of max(0, -W).
double negativity_volume(const WignerGrid& w);

/// Trapezoidal integral of W.
double normalization(const WignerGrid& w);

/// Integral of W over p (indexed by q) and over q (indexed by p).
Eigen::VectorXd q_marginal(const WignerGrid& w);
Eigen::VectorXd p_marginal(const WignerGrid& w);

/// <x|rho|x> in the q (or p) quadrature basis.
Eigen::VectorXd q_density(const QuantumState& state, const Eigen::VectorXd& q_axis);
Eigen::VectorXd p_density(const QuantumState& state, const Eigen::VectorXd& p_axis);

/// Moment estimate of the cubicity: exp(i gamma q^3) maps p to p + 3 gamma q^2,
/// so gamma = Cov_sym(q^2, p) / (3 Var(q^2)) when the input has no such
/// correlation.
double cubicity_moment_estimate(const QuantumState& state);

struct FidelityReport {
  double fidelity = 0.0;
  double negativity_volume = 0.0;
  double achieved_r = 0.0;
  double achieved_gamma = 0.0;
};

/// CSV with header q,p,W, one row per grid point, q major.
void write_wigner_csv(std::ostream& os, const WignerGrid& w);
/// Inverse of write_wigner_csv. Throws std::runtime_error on malformed input.
WignerGrid read_wigner_csv(std::istream& is);

}  // namespace snailcv::analysis
