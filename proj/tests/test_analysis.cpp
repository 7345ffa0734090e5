#include <gtest/gtest.h>

#include <cmath>
#include <sstream>

#include "snailcv/analysis.hpp"
#include "snailcv/constants.hpp"
#include "snailcv/errors.hpp"
#include "snailcv/fock.hpp"

using namespace snailcv;
using analysis::GridSpec;
using fock::cplx;
using fock::QuantumState;

namespace {

constexpr double kInvPi = 1.0 / constants::pi;

GridSpec small_grid(int n = 81, double half = 4.0) {
  GridSpec g;
  g.q_min = g.p_min = -half;
  g.q_max = g.p_max = half;
  g.nq = g.np = n;
  return g;
}

}  // namespace

TEST(IdealStates, ZeroParametersGiveVacuum) {
  const QuantumState s = analysis::ideal_cubic_phase_state(0.0, 0.0, 30);
  EXPECT_NEAR(s.population(0), 1.0, 1e-14);
}

TEST(IdealStates, SqueezedVariance) {
  const int dim = 80;
  const auto ops = fock::ladder_ops(dim);
  const QuantumState s = analysis::ideal_cubic_phase_state(0.0, 0.7, dim);
  EXPECT_NEAR(fock::variance(s, ops.p), std::exp(-1.4) / 2, 1e-8);
  EXPECT_NEAR(fock::variance(s, ops.q), std::exp(1.4) / 2, 1e-8);
  EXPECT_NEAR(analysis::fidelity(s, analysis::ideal_squeezed_state(0.7, dim)), 1.0, 1e-12);
}

TEST(IdealStates, CubicStateHasNegativeLobes) {
  const QuantumState s = analysis::ideal_cubic_phase_state(0.1, 0.7, 80, 1e-4);
  const auto w = analysis::wigner(s, small_grid(101, 5.0));
  EXPECT_LT(w.min(), 0.0);
  EXPECT_GT(analysis::negativity_volume(w), 0.0);
}

TEST(IdealStates, CubicityMomentEstimate) {
  for (double gamma : {0.1, -0.1}) {
    const QuantumState s = analysis::ideal_cubic_phase_state(gamma, 0.7, 120, 1e-4);
    EXPECT_NEAR(analysis::cubicity_moment_estimate(s), gamma, 0.05 * std::abs(gamma)) << gamma;
  }
}

TEST(IdealStates, TruncationLeakReported) {
  EXPECT_THROW(analysis::ideal_cubic_phase_state(0.1, 0.7, 20), TruncationLeak);
}

TEST(Wigner, VacuumGaussian) {
  const auto w = analysis::wigner(QuantumState::vacuum(20), small_grid());
  const int c = 40;
  EXPECT_NEAR(w.values(c, c), kInvPi, 1e-14);
  for (int i = 0; i < 81; i += 7)
    for (int j = 0; j < 81; j += 5) {
      const double q = w.q_axis(i), p = w.p_axis(j);
      EXPECT_NEAR(w.values(i, j), kInvPi * std::exp(-q * q - p * p), 1e-13);
    }
  EXPECT_EQ(analysis::negativity_volume(w), 0.0);
}

TEST(Wigner, SinglePhotonOrigin) {
  const auto w = analysis::wigner(QuantumState::fock(10, 1), small_grid());
  EXPECT_NEAR(w.values(40, 40), -kInvPi, 1e-14);
}

TEST(Wigner, Normalization) {
  for (const QuantumState& s : {QuantumState::vacuum(30), QuantumState::fock(30, 3),
                                analysis::ideal_squeezed_state(0.7, 60)}) {
    const auto w = analysis::wigner(s, GridSpec{});
    EXPECT_NEAR(analysis::normalization(w), 1.0, 1e-3);
  }
}

TEST(Wigner, SinglePhotonNegativityVolume) {
  const double exact = 2.0 * std::exp(-0.5) - 1.0;
  const auto w = analysis::wigner(QuantumState::fock(10, 1), GridSpec{}.refined());
  EXPECT_NEAR(analysis::negativity_volume(w), exact, 1e-3);
}

TEST(Wigner, RefinementIsStable) {
  const QuantumState s = analysis::ideal_cubic_phase_state(-0.1, 0.7, 80, 1e-4);
  const GridSpec g = small_grid(101, 5.0);
  const double coarse = analysis::negativity_volume(analysis::wigner(s, g));
  const double fine = analysis::negativity_volume(analysis::wigner(s, g.refined()));
  EXPECT_LT(std::abs(fine - coarse) / fine, 0.02);
  EXPECT_EQ(g.refined().nq, 201);
}

TEST(Wigner, MarginalsMatchQuadratureDensities) {
  const QuantumState s = analysis::ideal_cubic_phase_state(0.1, 0.5, 60, 1e-4);
  const auto w = analysis::wigner(s, small_grid(161, 6.0));
  const Eigen::VectorXd mq = analysis::q_marginal(w);
  const Eigen::VectorXd mp = analysis::p_marginal(w);
  const Eigen::VectorXd dq = analysis::q_density(s, w.q_axis);
  const Eigen::VectorXd dp = analysis::p_density(s, w.p_axis);
  EXPECT_LT((mq - dq).cwiseAbs().maxCoeff(), 2e-3);
  EXPECT_LT((mp - dp).cwiseAbs().maxCoeff(), 2e-3);
}

TEST(Wigner, DisplacedParityAgrees) {
  const QuantumState s = analysis::ideal_cubic_phase_state(0.1, 0.5, 30, 1e-4);
  GridSpec g = small_grid(5, 1.5);
  const auto w = analysis::wigner(s, g);
  for (int i = 0; i < 5; ++i)
    for (int j = 0; j < 5; ++j)
      EXPECT_NEAR(w.values(i, j),
                  analysis::wigner_displaced_parity(s, w.q_axis(i), w.p_axis(j)), 1e-8);
}

TEST(Wigner, RotationCovariance) {
  // exp(-i theta n) turns phase space clockwise by theta.
  const QuantumState s = fock::displace(analysis::ideal_squeezed_state(0.4, 40), cplx(0.6, 0.2));
  const GridSpec g = small_grid(41, 4.0);
  const auto w0 = analysis::wigner(s, g);
  const auto w1 = analysis::wigner(fock::rotate(s, constants::pi / 2), g);
  for (int i = 0; i < 41; ++i)
    for (int j = 0; j < 41; ++j) ASSERT_NEAR(w1.values(i, j), w0.values(40 - j, i), 1e-12);
}

TEST(Wigner, CsvRoundTrip) {
  const auto w = analysis::wigner(QuantumState::fock(6, 2), small_grid(11, 2.0));
  std::stringstream ss;
  analysis::write_wigner_csv(ss, w);
  std::string header;
  std::getline(ss, header);
  EXPECT_EQ(header, "q,p,W");
  ss.seekg(0);
  const auto back = analysis::read_wigner_csv(ss);
  EXPECT_LT((back.values - w.values).cwiseAbs().maxCoeff(), 1e-12);
  EXPECT_LT((back.q_axis - w.q_axis).cwiseAbs().maxCoeff(), 1e-12);
  std::istringstream bad("q,p,W\n1,2\n");
  EXPECT_THROW(analysis::read_wigner_csv(bad), std::runtime_error);
}

TEST(Fidelity, Oracles) {
  const int dim = 20;
  const QuantumState a = fock::displace(QuantumState::vacuum(dim), cplx(0.5, 0.1));
  const QuantumState b = analysis::ideal_squeezed_state(0.3, dim);
  EXPECT_NEAR(analysis::fidelity(a, a), 1.0, 1e-14);
  EXPECT_NEAR(analysis::fidelity(QuantumState::vacuum(dim), QuantumState::fock(dim, 1)), 0.0,
              1e-15);
  EXPECT_NEAR(analysis::fidelity(a, b), analysis::fidelity(b, a), 1e-14);
  EXPECT_NEAR(analysis::fidelity(QuantumState::from_density(a.density()), a), 1.0, 1e-12);
}

TEST(Fidelity, MixedTargetRejectedAndDimensionsChecked) {
  fock::Operator rho = fock::Operator::Zero(4, 4);
  rho(0, 0) = rho(1, 1) = 0.5;
  const QuantumState mixed = QuantumState::from_density(rho);
  EXPECT_THROW(analysis::fidelity(QuantumState::vacuum(4), mixed), std::invalid_argument);
  EXPECT_THROW(analysis::fidelity(QuantumState::vacuum(4), QuantumState::vacuum(5)),
               DimensionMismatch);
}
