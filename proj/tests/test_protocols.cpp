#include <gtest/gtest.h>

#include <cmath>

#include "snailcv/analysis.hpp"
#include "snailcv/circuit.hpp"
#include "snailcv/constants.hpp"
#include "snailcv/protocols.hpp"

using namespace snailcv;
using fock::QuantumState;
using protocols::CubicProtocol;
using protocols::SqueezeProtocol;

namespace {

circuit::CouplingSet device() {
  const auto res = circuit::ResonatorParams::make(constants::ghz_to_angular(8.8), 50.0, 1);
  return circuit::build_circuit_model(3, 0.1, 600e-12, 0.3931 * constants::two_pi, res)
      .couplings.with_linear_drive_cancelled();
}

circuit::CouplingSet harmonic(double omega_r) {
  circuit::CouplingSet g;
  g.omega_r = omega_r;
  return g;
}

}  // namespace

TEST(Protocols, EffectiveDisplacement) {
  const double wr = device().omega_r;
  EXPECT_NEAR(protocols::effective_displacement(3 * 0.1 * wr, wr), 0.1, 1e-15);
  EXPECT_EQ(protocols::effective_displacement(0.0, wr), 0.0);
  const auto sq = SqueezeProtocol::for_target(-0.125, wr, 14e-9);
  EXPECT_NEAR(protocols::effective_displacement(sq.epsilon_d, wr), -0.125, 1e-15);
  EXPECT_NEAR(sq.omega_p, 2 * wr, 1e-3);
}

TEST(Protocols, Validation) {
  const double wr = device().omega_r;
  SqueezeProtocol sq = SqueezeProtocol::for_target(-0.125, wr, 14e-9);
  sq.omega_p = 1.5 * wr;
  EXPECT_THROW(sq.validate(wr), std::invalid_argument);
  EXPECT_THROW(SqueezeProtocol::for_target(-0.125, wr, -1e-9), std::invalid_argument);
  CubicProtocol cu = CubicProtocol::make(device(), 0.1, 19e-9);
  cu.t_g = -1.0;
  EXPECT_THROW(cu.validate(), std::invalid_argument);
}

TEST(Protocols, CubicProtocolDetuning) {
  const auto g = device();
  const auto cu = CubicProtocol::make(g, 0.1, 19e-9);
  EXPECT_NEAR(cu.delta_omega, protocols::detuning_correction(g, 0.1), 1e-9);
  EXPECT_NEAR(cu.omega_tilde, g.omega_r - cu.delta_omega, 1e-3);
}

TEST(Protocols, UnpumpedSqueezeLeavesVacuum) {
  const auto g = harmonic(device().omega_r);
  const auto sq = SqueezeProtocol::for_target(0.0, g.omega_r, 14e-9);
  const auto r = protocols::run_squeeze(g, sq, {}, QuantumState::vacuum(20));
  EXPECT_NEAR(r.achieved_r, 0.0, 1e-9);
  EXPECT_NEAR(analysis::fidelity(r.frame_corrected_state, QuantumState::vacuum(20)), 1.0, 1e-9);
}

TEST(Protocols, UnpumpedSqueezeWithStaticNonlinearity) {
  // Off-resonant static terms dress the vacuum slightly.
  const auto g = device();
  const auto sq = SqueezeProtocol::for_target(0.0, g.omega_r, 14e-9);
  const auto r = protocols::run_squeeze(g, sq, {}, QuantumState::vacuum(30));
  EXPECT_LT(std::abs(r.achieved_r), 1e-3);
  EXPECT_GT(r.fidelity_to_ideal, 0.9999);
}

TEST(Protocols, UnmodulatedCubicGateIsIdentity) {
  const auto g = harmonic(device().omega_r);
  const auto in = analysis::ideal_squeezed_state(0.5, 40);
  const auto r = protocols::run_cubic_gate(g, CubicProtocol::make(g, 0.0, 19e-9), {}, in, 0.5);
  EXPECT_NEAR(analysis::fidelity(r.frame_corrected_state, in), 1.0, 1e-4);
  EXPECT_EQ(r.achieved_gamma, 0.0);
}

TEST(Protocols, UnmodulatedCubicGateWithStaticNonlinearity) {
  const auto g = device();
  const auto in = analysis::ideal_squeezed_state(0.5, 40);
  const auto r = protocols::run_cubic_gate(g, CubicProtocol::make(g, 0.0, 19e-9), {}, in, 0.5);
  EXPECT_GT(analysis::fidelity(r.frame_corrected_state, in), 0.999);
}

TEST(Protocols, ZeroDrivePipelineStaysVacuum) {
  const auto g = harmonic(device().omega_r);
  const auto sq = SqueezeProtocol::for_target(0.0, g.omega_r, 14e-9);
  const auto cu = CubicProtocol::make(g, 0.0, 19e-9);
  const auto out = protocols::prepare_cubic_phase_state(g, sq, cu, {}, 20);
  EXPECT_NEAR(out.fidelity, 1.0, 1e-9);
  EXPECT_NEAR(out.cubic.frame_corrected_state.population(0), 1.0, 1e-9);
}

TEST(Protocols, LosslessSqueezeStage) {
  const auto g = device();
  const auto sq = SqueezeProtocol::for_target(-0.125, g.omega_r, 14e-9);
  lindblad::LindbladConfig cfg;
  const auto r = protocols::run_squeeze(g, sq, cfg, QuantumState::vacuum(60));
  EXPECT_GT(r.achieved_r, 0.65);
  EXPECT_LT(r.achieved_r, 0.75);
  EXPECT_GT(r.fidelity_to_ideal, 0.99);
  EXPECT_NEAR(r.t_end, 14e-9, 1e-21);
}

TEST(Protocols, SignedCubicity) {
  const auto g = device();
  const auto cu = CubicProtocol::make(g, 0.1, 19e-9);
  const double g3 = circuit::effective_cubic_drive(g, 0.1);
  // exp(-i H t) with H = g3 (a + a^dag)^3 = g3 sqrt 8 q^3.
  EXPECT_NEAR(-g3 * std::sqrt(8.0) * cu.t_g, -0.0947, 1e-3);
}
