#include "snailcv/protocols.hpp"

#include <cmath>
#include <stdexcept>

#include "snailcv/analysis.hpp"
#include "snailcv/constants.hpp"

namespace snailcv::protocols {

using fock::cplx;

SqueezeProtocol SqueezeProtocol::for_target(double xi_bar, double omega_r, double t_sq) {
  SqueezeProtocol p;
  p.epsilon_d = 3.0 * xi_bar * omega_r;
  p.omega_p = 2.0 * omega_r;
  p.t_sq = t_sq;
  p.validate(omega_r);
  return p;
}

void SqueezeProtocol::validate(double omega_r) const {
  if (!std::isfinite(epsilon_d)) throw std::invalid_argument("SqueezeProtocol: epsilon_d not finite");
  if (!(t_sq >= 0.0)) throw std::invalid_argument("SqueezeProtocol: t_sq must be >= 0");
  if (!(std::abs(omega_p - 2.0 * omega_r) < 0.1 * omega_r))
    throw std::invalid_argument("SqueezeProtocol: omega_p must be close to 2 omega_r");
}

CubicProtocol CubicProtocol::make(const circuit::CouplingSet& couplings, double lambda, double t_g) {
  CubicProtocol p;
  p.lambda = lambda;
  p.delta_omega = detuning_correction(couplings, lambda);
  p.omega_tilde = couplings.omega_r - p.delta_omega;
  p.t_g = t_g;
  p.validate();
  return p;
}

void CubicProtocol::validate() const {
  if (!(std::abs(lambda) < 1.0)) throw std::invalid_argument("CubicProtocol: need |lambda| < 1");
  if (!(t_g >= 0.0)) throw std::invalid_argument("CubicProtocol: t_g must be >= 0");
  if (!(omega_tilde > 0.0)) throw std::invalid_argument("CubicProtocol: omega_tilde must be > 0");
}

double effective_displacement(double epsilon_d, double omega_r) {
  return epsilon_d / (3.0 * omega_r);
}

double detuning_correction(const circuit::CouplingSet& couplings, double lambda) {
  return -2.0 * couplings.g_ac_quad[2] * lambda * lambda;
}

double resolving_max_step(double omega_r) {
  const double nu = omega_r / constants::two_pi;
  return 1.0 / (40.0 * 3.0 * nu);
}

namespace {

lindblad::LindbladConfig with_resolving_step(lindblad::LindbladConfig cfg, double omega_r) {
  const double cap = resolving_max_step(omega_r);
  cfg.max_step = cfg.max_step > 0.0 ? std::min(cfg.max_step, cap) : cap;
  return cfg;
}

lindblad::IntegrateOptions integrate_options(const RunOptions& options) {
  lindblad::IntegrateOptions io;
  io.output_times = options.output_times;
  io.observer = options.observer;
  return io;
}

cplx mean_a(const QuantumState& s) {
  return fock::expectation(s, fock::ladder_ops(s.dim()).a);
}

}  // namespace

ProtocolResult run_squeeze(const circuit::CouplingSet& couplings, const SqueezeProtocol& proto,
                           const lindblad::LindbladConfig& cfg, const QuantumState& initial,
                           const RunOptions& options) {
  proto.validate(couplings.omega_r);
  const int dim = initial.dim();
  fock::TimeDependentHamiltonian h = fock::build_snail_hamiltonian(couplings, {}, dim);
  const fock::Operator x = fock::position_power(dim, 1);
  const double eps = proto.epsilon_d;
  const double wp = proto.omega_p;
  if (eps != 0.0) h.add(x, [eps, wp](double t) { return eps * std::sin(wp * t); });

  ProtocolResult res;
  const double t0 = options.t_start;
  const double t1 = t0 + proto.t_sq;
  res.final_state = lindblad::integrate(h, with_resolving_step(cfg, couplings.omega_r), initial, t0,
                                        t1, integrate_options(options), &res.stats);
  res.t_end = t1;

  res.frame_angle = couplings.omega_r * t1;
  const QuantumState rotated = fock::rotate(res.final_state, -res.frame_angle);
  res.frame_displacement = -mean_a(rotated);
  res.frame_corrected_state = fock::displace(rotated, res.frame_displacement);

  res.achieved_r = fock::squeezing_from_variance(res.frame_corrected_state);
  res.target_state = analysis::ideal_squeezed_state(res.achieved_r, dim, cfg.leak_threshold);
  res.fidelity_to_ideal = analysis::fidelity(res.frame_corrected_state, res.target_state);
  return res;
}

ProtocolResult run_cubic_gate(const circuit::CouplingSet& couplings, const CubicProtocol& proto,
                              const lindblad::LindbladConfig& cfg, const QuantumState& initial,
                              double target_r, const RunOptions& options) {
  proto.validate();
  const int dim = initial.dim();
  const double lambda = proto.lambda;
  const double w = proto.omega_tilde;
  std::function<double(double)> drive;
  if (lambda != 0.0)
    drive = [lambda, w](double t) { return lambda * (std::cos(w * t) + std::cos(3.0 * w * t)); };
  const fock::TimeDependentHamiltonian h = fock::build_snail_hamiltonian(couplings, drive, dim);

  ProtocolResult res;
  const double t0 = options.t_start;
  const double t1 = t0 + proto.t_g;
  res.final_state = lindblad::integrate(h, with_resolving_step(cfg, couplings.omega_r), initial, t0,
                                        t1, integrate_options(options), &res.stats);
  res.t_end = t1;

  const double g3_eff = circuit::effective_cubic_drive(couplings, lambda);
  res.achieved_gamma = -g3_eff * std::sqrt(8.0) * proto.t_g;
  res.target_state = analysis::ideal_cubic_phase_state(res.achieved_gamma, target_r, dim,
                                                     cfg.leak_threshold);
  const cplx target_mean = mean_a(res.target_state);

  const double candidates[2] = {couplings.omega_r * t1, couplings.omega_r * t0 + w * proto.t_g};
  res.fidelity_to_ideal = -1.0;
  for (double angle : candidates) {
    const QuantumState rotated = fock::rotate(res.final_state, -angle);
    const cplx beta = target_mean - mean_a(rotated);
    QuantumState corrected = fock::displace(rotated, beta);
    const double f = analysis::fidelity(corrected, res.target_state);
    if (f > res.fidelity_to_ideal) {
      res.fidelity_to_ideal = f;
      res.frame_angle = angle;
      res.frame_displacement = beta;
      res.frame_corrected_state = std::move(corrected);
    }
  }
  res.achieved_r = target_r;
  res.gamma_moment_estimate = analysis::cubicity_moment_estimate(res.frame_corrected_state);
  return res;
}

PipelineResult prepare_cubic_phase_state(const circuit::CouplingSet& couplings,
                                         const SqueezeProtocol& squeeze,
                                         const CubicProtocol& cubic,
                                         const lindblad::LindbladConfig& cfg, int dim,
                                         const RunOptions& options) {
  PipelineResult out;
  RunOptions first = options;
  out.squeeze = run_squeeze(couplings, squeeze, cfg, QuantumState::vacuum(dim), first);

  RunOptions second = options;
  second.t_start = out.squeeze.t_end;
  out.cubic = run_cubic_gate(couplings, cubic, cfg, out.squeeze.final_state, out.squeeze.achieved_r,
                             second);
  out.fidelity = out.cubic.fidelity_to_ideal;
  out.r = out.squeeze.achieved_r;
  out.gamma = out.cubic.achieved_gamma;
  return out;
}

}  // namespace snailcv::protocols
