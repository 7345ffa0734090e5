#pragma once

#include <memory>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "json.hpp"
#include "snailcv/polynomial.hpp"

namespace snailcv::universality {

using Operator = Eigen::MatrixXcd;

/// Gate set, with U = exp(i parameter G):
///   displacement  G = q_k
///   squeeze       G = q_k^2          (shear)
///   cubic         G = q_k^3
///   fourier       G = (pi/4)(2 n_k + 1), so parameter 1 is the Fourier gate
///   beam_splitter G = p_k q_l - q_k p_l
enum class GateKind { displacement, squeeze, beam_splitter, fourier, cubic };

std::string to_string(GateKind k);
GateKind gate_kind_from_string(const std::string& s);

struct GateSpec {
  GateKind kind = GateKind::displacement;
  double parameter = 0.0;
  int mode = 0;
  int mode2 = -1;  // beam splitter only

  static GateSpec displacement(double s, int mode = 0) { return {GateKind::displacement, s, mode, -1}; }
  static GateSpec squeeze(double s, int mode = 0) { return {GateKind::squeeze, s, mode, -1}; }
  static GateSpec cubic(double gamma, int mode = 0) { return {GateKind::cubic, gamma, mode, -1}; }
  static GateSpec fourier(double turns = 1.0, int mode = 0) { return {GateKind::fourier, turns, mode, -1}; }
  static GateSpec beam_splitter(double theta, int k, int l) { return {GateKind::beam_splitter, theta, k, l}; }

  GateSpec inverse() const;
  /// Throws std::invalid_argument for non-finite parameters, modes outside
  /// the register or a beam splitter on a single mode.
  void validate(int n_modes) const;
};

/// Hermitian generator G of the gate on `n_modes` modes of dimension `dim`.
Operator gate_generator(const GateSpec& g, int dim, int n_modes = 1);

/// Exact exponential of the generator on the truncated space. Throws
/// UnsupportedModeCount for more than two modes or a two-mode register above
/// dim 20.
Operator gate_unitary(const GateSpec& g, int dim, int n_modes = 1);

/// Ordered gate list (first entry acts first). Repeated blocks are kept
/// symbolic so long sequences stay cheap to store and to multiply out.
class GateSequence {
 public:
  explicit GateSequence(int n_modes = 1) : n_modes_(n_modes) {}

  void append(const GateSpec& g);
  void append(const GateSequence& s);
  void append_repeat(const GateSequence& body, long count);

  GateSequence inverse() const;
  long gate_count() const;
  int n_modes() const { return n_modes_; }
  bool empty() const { return items_.empty(); }

  /// Product of all gate unitaries, repeats evaluated by repeated squaring.
  Operator unitary(int dim) const;

  /// List of records {kind, parameter, mode, duration}; a repeated block is
  /// {repeat, body}. duration is |parameter| in generator units.
  nlohmann::json to_json() const;

 private:
  struct Item {
    bool is_gate = true;
    GateSpec gate;
    long repeat = 1;
    std::shared_ptr<const GateSequence> body;
  };
  int n_modes_;
  std::vector<Item> items_;

  friend class SequenceEvaluator;
};

/// e^{iA dt} e^{iB dt} e^{-iA dt} e^{-iB dt}, approximately e^{-[A,B] dt^2}.
Operator commutator_compose(const Operator& a, const Operator& b, double dt);

/// Same composition for gate blocks a = e^{iA dt}, b = e^{iB dt}.
GateSequence commutator_sequence(const GateSequence& a, const GateSequence& b);

/// C(a, b) C(a^-1, b^-1): the dt^3 error term cancels, leaving
/// e^{-2[A,B] dt^2} + O(dt^4).
GateSequence symmetric_commutator_sequence(const GateSequence& a, const GateSequence& b);

/// min over phi of || P (u - e^{i phi} v) P || with P the projector on the
/// lowest `levels` Fock levels (per mode). phi is taken from the overlap
/// trace, which is optimal to first order.
double defect(const Operator& u, const Operator& v, int levels, int n_modes = 1);

/// exp(i (pi/4)[2 q^3 / pi^(3/2) + q^2 / pi - 2 q / sqrt(pi)]). dim >= 40.
Operator t_gate_target(int dim);
poly::WeylPolynomial t_gate_generator();

struct SynthesisOptions {
  /// Target defect on the comparison region.
  double tolerance = 1e-3;
  long max_gates = 10'000'000;
  /// Comparison region; 0 means dim / 2.
  int levels = 0;
  /// Build q^2 terms from [q^3, p] instead of the shear gate.
  bool quadratic_via_commutator = false;
  long initial_steps = 1;
  long max_refinements = 12;
};

struct SynthesisResult {
  GateSequence sequence;
  double defect = 0.0;
  long steps = 0;  // commutator steps per synthesized term at the final refinement
  Operator unitary;
};

/// Approximates exp(i tau target) with gates from the set. The target may
/// hold pure q^k and pure p^k terms with real coefficients, k <= 4. q^2 comes
/// from [q^3, p] on request, q^4 from [q^3, [q^3, p^2]] with p^2 itself from
/// [p^3, q], and p^k terms by Fourier conjugation. Non-commuting q and p parts
/// are combined by Strang splitting. Throws BudgetExceeded if the tolerance is
/// not met within max_gates, and std::invalid_argument for unsupported terms.
SynthesisResult synthesize_polynomial(const poly::WeylPolynomial& target, double tau, int dim,
                                      const SynthesisOptions& options = {});

/// Exact exp(i tau target) on the truncated space.
Operator exact_polynomial_unitary(const poly::WeylPolynomial& target, double tau, int dim);

}  // namespace snailcv::universality
