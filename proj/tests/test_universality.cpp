#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "snailcv/errors.hpp"
#include "snailcv/fock.hpp"
#include "snailcv/linalg.hpp"
#include "snailcv/universality.hpp"

using namespace snailcv;
using namespace snailcv::universality;
using fock::cplx;
using poly::WeylPolynomial;

namespace {

double unitarity_error(const Operator& u) {
  return (u.adjoint() * u - Operator::Identity(u.rows(), u.cols())).cwiseAbs().maxCoeff();
}

GateSequence single(const GateSpec& g) {
  GateSequence s;
  s.append(g);
  return s;
}

// Exact e^{-[A,B] dt^2}, the leading term of the group commutator.
Operator commutator_target(const Operator& a, const Operator& b, double dt) {
  return linalg::exp_i_hermitian(cplx(0, 1) * (a * b - b * a), dt * dt);
}

}  // namespace

TEST(Gates, AllUnitary) {
  for (const GateSpec& g : {GateSpec::displacement(0.7), GateSpec::squeeze(-0.3), GateSpec::cubic(0.2),
                            GateSpec::fourier(), GateSpec::fourier(0.37)})
    EXPECT_LT(unitarity_error(gate_unitary(g, 30)), 1e-12) << to_string(g.kind);
  EXPECT_LT(unitarity_error(gate_unitary(GateSpec::beam_splitter(0.4, 0, 1), 8, 2)), 1e-12);
  EXPECT_LT(unitarity_error(gate_unitary(GateSpec::cubic(0.2, 1), 8, 2)), 1e-12);
}

TEST(Gates, FourierFourthPowerIsIdentity) {
  const Operator f = gate_unitary(GateSpec::fourier(), 40);
  const Operator f4 = f * f * f * f;
  // exp(i pi (2n + 1)) = -1: identity up to the global phase.
  EXPECT_LT(defect(f4, Operator::Identity(40, 40), 40), 1e-8);
  EXPECT_LT((f4 + Operator::Identity(40, 40)).cwiseAbs().maxCoeff(), 1e-8);
}

TEST(Gates, FourierMapsQToP) {
  const int dim = 40;
  const auto ops = fock::ladder_ops(dim);
  const Operator f = gate_unitary(GateSpec::fourier(), dim);
  // exp(i pi/2 n) q exp(-i pi/2 n) = -p under a -> i a; check both signs on low levels.
  const Operator conj = f * ops.q * f.adjoint();
  const double plus = (conj - ops.p).topLeftCorner(20, 20).cwiseAbs().maxCoeff();
  const double minus = (conj + ops.p).topLeftCorner(20, 20).cwiseAbs().maxCoeff();
  EXPECT_LT(std::min(plus, minus), 1e-10);
}

TEST(Gates, DisplacementShiftsMomentum) {
  const int dim = 60;
  const auto ops = fock::ladder_ops(dim);
  const double s = 0.8;
  const fock::Ket psi = gate_unitary(GateSpec::displacement(s), dim).col(0);
  const auto state = fock::QuantumState::from_ket(psi);
  EXPECT_NEAR(fock::expectation(state, ops.p).real(), s, 1e-10);
  EXPECT_NEAR(fock::expectation(state, ops.q).real(), 0.0, 1e-10);
}

TEST(Gates, BeamSplitterSinglePhoton) {
  const int dim = 6;
  const double theta = 0.37;
  const Operator u = gate_unitary(GateSpec::beam_splitter(theta, 0, 1), dim, 2);
  const int one_zero = 1 * dim + 0, zero_one = 0 * dim + 1;
  const fock::Ket out = u.col(one_zero);
  EXPECT_NEAR(std::abs(out(one_zero) - std::cos(theta)), 0.0, 1e-12);
  EXPECT_NEAR(std::abs(out(zero_one) - std::sin(theta)), 0.0, 1e-12);
  EXPECT_NEAR(out.norm(), 1.0, 1e-12);
}

TEST(Gates, RegisterLimits) {
  EXPECT_THROW(gate_unitary(GateSpec::cubic(0.1), 8, 3), UnsupportedModeCount);
  EXPECT_THROW(gate_unitary(GateSpec::beam_splitter(0.1, 0, 1), 25, 2), UnsupportedModeCount);
  EXPECT_THROW(GateSpec::beam_splitter(0.1, 0, 1).validate(1), std::invalid_argument);
  EXPECT_THROW(GateSpec::cubic(NAN).validate(1), std::invalid_argument);
  EXPECT_THROW(GateSpec::cubic(0.1, 2).validate(2), std::invalid_argument);
}

TEST(Gates, KindNames) {
  for (GateKind k : {GateKind::displacement, GateKind::squeeze, GateKind::beam_splitter,
                     GateKind::fourier, GateKind::cubic})
    EXPECT_EQ(gate_kind_from_string(to_string(k)), k);
  EXPECT_THROW(gate_kind_from_string("kerr"), std::invalid_argument);
}

TEST(GateSequence, InverseRepeatAndCount) {
  const int dim = 30;
  GateSequence body;
  body.append(GateSpec::cubic(0.05));
  body.append(GateSpec::fourier(0.5));
  body.append(GateSpec::squeeze(0.1));
  GateSequence s;
  s.append(GateSpec::displacement(0.2));
  s.append_repeat(body, 5);
  EXPECT_EQ(s.gate_count(), 16);
  const Operator u = s.unitary(dim);
  Operator ref = gate_unitary(GateSpec::displacement(0.2), dim);
  const Operator b = body.unitary(dim);
  for (int i = 0; i < 5; ++i) ref = b * ref;
  EXPECT_LT((u - ref).cwiseAbs().maxCoeff(), 1e-11);
  EXPECT_LT((s.inverse().unitary(dim) * u - Operator::Identity(dim, dim)).cwiseAbs().maxCoeff(),
            1e-11);
}

TEST(GateSequence, JsonExport) {
  GateSequence body(2);
  body.append(GateSpec::cubic(-0.05));
  GateSequence s(2);
  s.append(GateSpec::beam_splitter(0.3, 0, 1));
  s.append_repeat(body, 3);
  const auto j = s.to_json();
  ASSERT_TRUE(j.is_array());
  EXPECT_EQ(j[0]["kind"], "beam_splitter");
  EXPECT_EQ(j[0]["mode2"], 1);
  EXPECT_EQ(j[1]["repeat"], 3);
  EXPECT_DOUBLE_EQ(j[1]["body"][0]["duration"].get<double>(), 0.05);
}

TEST(Commutator, CanonicalPairIsGlobalPhase) {
  const int dim = 60;
  const auto ops = fock::ladder_ops(dim);
  const Operator c = commutator_compose(ops.q, ops.p, 0.3);
  EXPECT_LT(defect(c, Operator::Identity(dim, dim), 15), 1e-10);
}

TEST(Commutator, CubicAndMomentumThirdOrder) {
  const int dim = 60;
  const auto ops = fock::ladder_ops(dim);
  const Operator a = ops.q * ops.q * ops.q, b = ops.p;
  double prev = 0.0;
  for (double dt = 0.02; dt > 1.5e-5; dt /= 2) {
    const double d = defect(commutator_compose(a, b, dt), commutator_target(a, b, dt), dim / 2);
    if (prev > 0.0) {
      EXPECT_GT(prev / d, 6.5) << dt;
      EXPECT_LT(prev / d, 9.5) << dt;
    }
    prev = d;
  }
}

TEST(Commutator, QuadraticPairGivesSymmetricProduct) {
  // [q^2, p^2] = 2 i (q p + p q)
  const int dim = 80;
  const auto ops = fock::ladder_ops(dim);
  const Operator a = ops.q * ops.q, b = ops.p * ops.p;
  const Operator sym = ops.q * ops.p + ops.p * ops.q;
  const Operator lhs = a * b - b * a;
  EXPECT_LT((lhs - cplx(0, 2) * sym).topLeftCorner(20, 20).cwiseAbs().maxCoeff(), 1e-10);
  const double d1 = defect(commutator_compose(a, b, 0.01), commutator_target(a, b, 0.01), 10);
  const double d2 = defect(commutator_compose(a, b, 0.005), commutator_target(a, b, 0.005), 10);
  EXPECT_NEAR(d1 / d2, 8.0, 1.5);
}

TEST(Commutator, RandomPolynomialPairsFollowOrderLaw) {
  std::mt19937 rng(31415);
  std::uniform_real_distribution<double> u(0.2, 1.0);
  const int dim = 50;
  for (int trial = 0; trial < 4; ++trial) {
    const WeylPolynomial pa = WeylPolynomial::q(3) * u(rng) + WeylPolynomial::q(1) * u(rng) +
                              WeylPolynomial::p(2) * u(rng);
    const WeylPolynomial pb = WeylPolynomial::p(1) * u(rng) + WeylPolynomial::q(2) * u(rng);
    ASSERT_TRUE(pa.is_hermitian());
    const Operator a = pa.to_matrix(dim), b = pb.to_matrix(dim);
    const double d1 = defect(commutator_compose(a, b, 0.002), commutator_target(a, b, 0.002), 10);
    const double d2 = defect(commutator_compose(a, b, 0.001), commutator_target(a, b, 0.001), 10);
    EXPECT_NEAR(d1 / d2, 8.0, 1.5) << trial;
  }
}

TEST(Commutator, SequenceMatchesMatrixComposition) {
  const int dim = 30;
  const double dt = 0.05;
  const auto ops = fock::ladder_ops(dim);
  const Operator rot = (M_PI / 4) * (2.0 * ops.number + Operator::Identity(dim, dim));
  const GateSequence s =
      commutator_sequence(single(GateSpec::cubic(dt)), single(GateSpec::fourier(dt)));
  const Operator ref = commutator_compose(ops.q * ops.q * ops.q, rot, dt);
  EXPECT_LT((s.unitary(dim) - ref).cwiseAbs().maxCoeff(), 1e-10);
}

TEST(Commutator, SymmetricFormIsFourthOrder) {
  // C(a, b) C(a^-1, b^-1) -> e^{-2[A,B] dt^2} with an O(dt^4) remainder.
  const int dim = 60;
  const auto ops = fock::ladder_ops(dim);
  const Operator a = ops.q * ops.q * ops.q;
  const Operator rot = (M_PI / 4) * (2.0 * ops.number + Operator::Identity(dim, dim));
  auto err = [&](double dt) {
    const GateSequence s = symmetric_commutator_sequence(single(GateSpec::cubic(dt)),
                                                         single(GateSpec::fourier(dt)));
    const Operator target =
        linalg::exp_i_hermitian(cplx(0, 1) * (a * rot - rot * a), 2.0 * dt * dt);
    return defect(s.unitary(dim), target, 10);
  };
  EXPECT_GT(err(0.01) / err(0.005), 12.0);
}

TEST(Defect, PhaseInsensitive) {
  const Operator u = gate_unitary(GateSpec::cubic(0.3), 20);
  EXPECT_LT(defect(u, std::exp(cplx(0, 1.1)) * u, 10), 1e-12);
  EXPECT_GT(defect(u, Operator::Identity(20, 20), 10), 1e-2);
}

TEST(TGate, GeneratorAndTarget) {
  const WeylPolynomial g = t_gate_generator();
  EXPECT_TRUE(g.is_hermitian(0.0));
  EXPECT_EQ(g.degree(), 3);
  EXPECT_LT(unitarity_error(t_gate_target(40)), 1e-12);
  EXPECT_THROW(t_gate_target(20), std::invalid_argument);
  EXPECT_LT(defect(exact_polynomial_unitary(g, 1.0, 60), t_gate_target(60), 10), 1e-12);
}

TEST(Synthesis, CubicIsASingleGate) {
  const auto r = synthesize_polynomial(WeylPolynomial::q(3) * 0.7, 0.2, 40);
  EXPECT_EQ(r.sequence.gate_count(), 1);
  EXPECT_LT(r.defect, 1e-12);
}

TEST(Synthesis, QuadraticFromCubicImprovesWithSteps) {
  double prev = 1.0;
  for (long k : {1L, 2L, 4L, 8L}) {
    SynthesisOptions o;
    o.quadratic_via_commutator = true;
    o.initial_steps = k;
    o.max_refinements = 0;
    o.tolerance = 1.0;
    o.levels = 10;
    const auto r = synthesize_polynomial(WeylPolynomial::q(2), 0.25, 100, o);
    EXPECT_LT(r.defect, prev) << k;
    prev = r.defect;
  }
  EXPECT_LT(prev, 1e-6);
}

TEST(Synthesis, QuarticWithinBudget) {
  SynthesisOptions o;
  o.levels = 10;
  o.tolerance = 1e-2;
  const auto r = synthesize_polynomial(WeylPolynomial::q(4), 0.01, 100, o);
  EXPECT_LT(r.defect, 1e-2);
  EXPECT_LE(r.sequence.gate_count(), o.max_gates);
  EXPECT_LT(defect(r.unitary, exact_polynomial_unitary(WeylPolynomial::q(4), 0.01, 100), 10),
            1e-2);
}

TEST(Synthesis, TGateFromCubicQuadraticLinear) {
  SynthesisOptions o;
  o.levels = 10;
  o.tolerance = 1e-3;
  o.quadratic_via_commutator = true;
  const auto r = synthesize_polynomial(t_gate_generator(), 1.0, 100, o);
  EXPECT_LT(defect(r.unitary, t_gate_target(100), 10), 1e-3);
}

TEST(Synthesis, MomentumTermsByFourierConjugation) {
  SynthesisOptions o;
  o.levels = 10;
  o.tolerance = 1e-6;
  const WeylPolynomial target = WeylPolynomial::p(3) * 0.5 + WeylPolynomial::p(1) * 0.3;
  const auto r = synthesize_polynomial(target, 0.2, 60, o);
  EXPECT_LT(defect(r.unitary, exact_polynomial_unitary(target, 0.2, 60), 10), 1e-6);
}

TEST(Synthesis, MixedQuadraturesBySplitting) {
  SynthesisOptions o;
  o.levels = 8;
  o.tolerance = 1e-3;
  const WeylPolynomial target = WeylPolynomial::q(3) * 0.3 + WeylPolynomial::p(2) * 0.5;
  const auto r = synthesize_polynomial(target, 0.3, 60, o);
  EXPECT_LT(r.defect, 1e-3);
}

TEST(Synthesis, ErrorPaths) {
  SynthesisOptions tiny;
  tiny.max_gates = 50;
  tiny.levels = 10;
  tiny.tolerance = 1e-8;
  EXPECT_THROW(synthesize_polynomial(WeylPolynomial::q(4), 0.01, 60, tiny), BudgetExceeded);
  EXPECT_THROW(synthesize_polynomial(WeylPolynomial::monomial(1, 1), 0.1, 40),
               std::invalid_argument);
  EXPECT_THROW(synthesize_polynomial(WeylPolynomial::q(5), 0.1, 40), std::invalid_argument);
  EXPECT_THROW(synthesize_polynomial(WeylPolynomial::q(2) * cplx(0, 1), 0.1, 40),
               std::invalid_argument);
}
