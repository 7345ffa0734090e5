#pragma once

#include <functional>
#include <iosfwd>
#include <vector>

#include "snailcv/fock.hpp"

namespace snailcv::lindblad {

/// Single-photon loss with jump operator sqrt(kappa) a, plus step control for
/// the embedded Dormand-Prince 5(4) pair.
struct LindbladConfig {
  double kappa = 0.0;  // rad/s
  double rtol = 1e-8;
  double atol = 1e-10;
  double max_step = 0.0;  // seconds; 0 means unbounded
  /// Population allowed in the top 10% of Fock levels before TruncationLeak.
  double leak_threshold = 1e-4;
  long max_steps = 20'000'000;

  /// Throws std::invalid_argument for kappa < 0 or nonpositive tolerances.
  void validate() const;
};

using Observer = std::function<void(double t, const fock::QuantumState& state)>;

struct IntegrateOptions {
  /// Times in (t0, t1) where the integrator lands exactly and calls the
  /// observer. The observer is also called at t0 and t1.
  std::vector<double> output_times;
  Observer observer;
  /// Keep a pure input as a ket when kappa = 0.
  bool keep_ket_when_lossless = true;
};

struct IntegrationStats {
  long accepted = 0;
  long rejected = 0;
  long rhs_evaluations = 0;
  double max_trace_error = 0.0;
  double max_hermiticity_error = 0.0;
};

/// Integrates d rho/dt = -i[H(t), rho] + kappa (a rho a^dag - {a^dag a, rho}/2)
/// from t0 to t1. Operators whose nonzero entries sit within a narrow band
/// around the diagonal are applied as diagonals.
///
/// Throws TruncationLeak when the top-level population exceeds the configured
/// threshold and IntegratorFailure when the step size collapses.
fock::QuantumState integrate(const fock::TimeDependentHamiltonian& h, const LindbladConfig& cfg,
                             const fock::QuantumState& initial, double t0, double t1,
                             const IntegrateOptions& options = {},
                             IntegrationStats* stats = nullptr);

/// Row of the exported trajectory.
struct TrajectoryPoint {
  double t = 0.0;
  double mean_q = 0.0;
  double mean_p = 0.0;
  double var_q = 0.0;
  double var_p = 0.0;
  double mean_n = 0.0;
  double purity = 0.0;
};

TrajectoryPoint measure(double t, const fock::QuantumState& state);

/// CSV with header t_ns,mean_q,mean_p,var_q,var_p,mean_n,purity.
void write_trajectory_csv(std::ostream& os, const std::vector<TrajectoryPoint>& points);

}  // namespace snailcv::lindblad
