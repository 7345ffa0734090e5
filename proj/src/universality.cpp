#include "snailcv/universality.hpp"

#include <cmath>
#include <map>
#include <sstream>
#include <stdexcept>
#include <tuple>

#include "snailcv/constants.hpp"
#include "snailcv/errors.hpp"
#include "snailcv/fock.hpp"
#include "snailcv/linalg.hpp"

namespace snailcv::universality {

using constants::pi;
using cplx = std::complex<double>;

std::string to_string(GateKind k) {
  switch (k) {
    case GateKind::displacement: return "displacement";
    case GateKind::squeeze: return "squeeze";
    case GateKind::beam_splitter: return "beam_splitter";
    case GateKind::fourier: return "fourier";
    case GateKind::cubic: return "cubic";
  }
  return "unknown";
}

GateKind gate_kind_from_string(const std::string& s) {
  for (GateKind k : {GateKind::displacement, GateKind::squeeze, GateKind::beam_splitter,
                     GateKind::fourier, GateKind::cubic})
    if (to_string(k) == s) return k;
  throw std::invalid_argument("unknown gate kind '" + s + "'");
}

GateSpec GateSpec::inverse() const {
  GateSpec g = *this;
  g.parameter = -parameter;
  return g;
}

void GateSpec::validate(int n_modes) const {
  if (!std::isfinite(parameter)) throw std::invalid_argument("GateSpec: parameter must be finite");
  if (mode < 0 || mode >= n_modes) throw std::invalid_argument("GateSpec: mode outside register");
  if (kind == GateKind::beam_splitter) {
    if (mode2 < 0 || mode2 >= n_modes)
      throw std::invalid_argument("GateSpec: beam splitter second mode outside register");
    if (mode2 == mode) throw std::invalid_argument("GateSpec: beam splitter needs two distinct modes");
  }
}

namespace {

void check_register(int dim, int n_modes) {
  if (n_modes < 1 || n_modes > 2)
    throw UnsupportedModeCount("gate_unitary: registers of " + std::to_string(n_modes) +
                               " modes are not supported (1 or 2)");
  if (n_modes == 2 && dim > 20)
    throw UnsupportedModeCount("gate_unitary: two-mode registers are capped at dim 20 per mode");
  if (dim < 2) throw std::invalid_argument("gate_unitary: dim must be >= 2");
}

Operator embed(const Operator& op, int mode, int n_modes, int dim) {
  if (n_modes == 1) return op;
  const Operator id = Operator::Identity(dim, dim);
  const Operator& left = mode == 0 ? op : id;
  const Operator& right = mode == 0 ? id : op;
  Operator out(dim * dim, dim * dim);
  for (int i = 0; i < dim; ++i)
    for (int j = 0; j < dim; ++j) out.block(i * dim, j * dim, dim, dim) = left(i, j) * right;
  return out;
}

Operator single_mode_generator(GateKind kind, int dim) {
  const fock::LadderOps ops = fock::ladder_ops(dim);
  switch (kind) {
    case GateKind::displacement: return ops.q;
    case GateKind::squeeze: return ops.q * ops.q;
    case GateKind::cubic: return ops.q * ops.q * ops.q;
    case GateKind::fourier: {
      Operator g = Operator::Zero(dim, dim);
      for (int n = 0; n < dim; ++n) g(n, n) = 0.25 * pi * (2.0 * n + 1.0);
      return g;
    }
    case GateKind::beam_splitter: break;
  }
  throw std::logic_error("single_mode_generator: beam splitter has no single-mode generator");
}

// Gate unitaries, cached by gate and shared q eigenbasis for the one-mode case.
class GateCache {
 public:
  GateCache(int dim, int n_modes) : dim_(dim), n_modes_(n_modes) {
    check_register(dim, n_modes);
    if (n_modes == 1) {
      Eigen::SelfAdjointEigenSolver<Operator> es(fock::ladder_ops(dim).q);
      q_values_ = es.eigenvalues();
      q_vectors_ = es.eigenvectors();
    }
  }

  const Operator& get(const GateSpec& g) {
    const auto key = std::make_tuple(static_cast<int>(g.kind), g.parameter, g.mode, g.mode2);
    auto it = cache_.find(key);
    if (it != cache_.end()) return it->second;
    return cache_.emplace(key, build(g)).first->second;
  }

 private:
  Operator build(const GateSpec& g) {
    g.validate(n_modes_);
    if (n_modes_ == 1) {
      const double s = g.parameter;
      if (g.kind == GateKind::fourier) {
        Operator u = Operator::Zero(dim_, dim_);
        for (int n = 0; n < dim_; ++n) u(n, n) = std::polar(1.0, s * 0.25 * pi * (2.0 * n + 1.0));
        return u;
      }
      const int power = g.kind == GateKind::displacement ? 1 : g.kind == GateKind::squeeze ? 2 : 3;
      Eigen::VectorXcd phases(dim_);
      for (int i = 0; i < dim_; ++i) phases(i) = std::polar(1.0, s * std::pow(q_values_(i), power));
      return q_vectors_ * phases.asDiagonal() * q_vectors_.adjoint();
    }
    return linalg::exp_i_hermitian(gate_generator(g, dim_, n_modes_), g.parameter);
  }

  int dim_;
  int n_modes_;
  Eigen::VectorXd q_values_;
  Operator q_vectors_;
  std::map<std::tuple<int, double, int, int>, Operator> cache_;
};

Operator matrix_power(Operator base, long n) {
  Operator result = Operator::Identity(base.rows(), base.cols());
  while (n > 0) {
    if (n & 1) result = base * result;
    n >>= 1;
    if (n > 0) base = base * base;
  }
  return result;
}

}  // namespace

Operator gate_generator(const GateSpec& g, int dim, int n_modes) {
  check_register(dim, n_modes);
  g.validate(n_modes);
  if (g.kind == GateKind::beam_splitter) {
    const fock::LadderOps ops = fock::ladder_ops(dim);
    const Operator qk = embed(ops.q, g.mode, 2, dim), pk = embed(ops.p, g.mode, 2, dim);
    const Operator ql = embed(ops.q, g.mode2, 2, dim), pl = embed(ops.p, g.mode2, 2, dim);
    return pk * ql - qk * pl;
  }
  return embed(single_mode_generator(g.kind, dim), g.mode, n_modes, dim);
}

Operator gate_unitary(const GateSpec& g, int dim, int n_modes) {
  GateCache cache(dim, n_modes);
  return cache.get(g);
}

// ---------------------------------------------------------------------------

void GateSequence::append(const GateSpec& g) {
  g.validate(n_modes_);
  Item it;
  it.gate = g;
  items_.push_back(it);
}

void GateSequence::append(const GateSequence& s) {
  if (s.n_modes_ != n_modes_) throw DimensionMismatch("GateSequence: register sizes differ");
  items_.insert(items_.end(), s.items_.begin(), s.items_.end());
}

void GateSequence::append_repeat(const GateSequence& body, long count) {
  if (body.n_modes_ != n_modes_) throw DimensionMismatch("GateSequence: register sizes differ");
  if (count < 0) throw std::invalid_argument("GateSequence: negative repeat count");
  if (count == 0 || body.empty()) return;
  Item it;
  it.is_gate = false;
  it.repeat = count;
  it.body = std::make_shared<const GateSequence>(body);
  items_.push_back(it);
}

GateSequence GateSequence::inverse() const {
  GateSequence out(n_modes_);
  for (auto it = items_.rbegin(); it != items_.rend(); ++it) {
    if (it->is_gate)
      out.append(it->gate.inverse());
    else
      out.append_repeat(it->body->inverse(), it->repeat);
  }
  return out;
}

long GateSequence::gate_count() const {
  long n = 0;
  for (const Item& it : items_) n += it.is_gate ? 1 : it.repeat * it.body->gate_count();
  return n;
}

class SequenceEvaluator {
 public:
  SequenceEvaluator(int dim, int n_modes) : cache_(dim, n_modes), size_(n_modes == 1 ? dim : dim * dim) {}

  Operator evaluate(const GateSequence& s) {
    Operator u = Operator::Identity(size_, size_);
    for (const GateSequence::Item& it : s.items_) {
      if (it.is_gate)
        u = cache_.get(it.gate) * u;
      else
        u = matrix_power(evaluate(*it.body), it.repeat) * u;
    }
    return u;
  }

 private:
  GateCache cache_;
  int size_;
};

Operator GateSequence::unitary(int dim) const {
  SequenceEvaluator ev(dim, n_modes_);
  return ev.evaluate(*this);
}

nlohmann::json GateSequence::to_json() const {
  nlohmann::json out = nlohmann::json::array();
  for (const Item& it : items_) {
    if (it.is_gate) {
      nlohmann::json rec = {{"kind", universality::to_string(it.gate.kind)},
                            {"parameter", it.gate.parameter},
                            {"mode", it.gate.mode},
                            {"duration", std::abs(it.gate.parameter)}};
      if (it.gate.kind == GateKind::beam_splitter) rec["mode2"] = it.gate.mode2;
      out.push_back(rec);
    } else {
      out.push_back({{"repeat", it.repeat}, {"body", it.body->to_json()}});
    }
  }
  return out;
}

// ---------------------------------------------------------------------------

Operator commutator_compose(const Operator& a, const Operator& b, double dt) {
  if (a.rows() != b.rows() || a.cols() != b.cols() || a.rows() != a.cols())
    throw DimensionMismatch("commutator_compose: operands must be square with equal shape");
  const Operator ea = linalg::exp_i_hermitian(a, dt);
  const Operator eb = linalg::exp_i_hermitian(b, dt);
  return ea * eb * ea.adjoint() * eb.adjoint();
}

GateSequence commutator_sequence(const GateSequence& a, const GateSequence& b) {
  // Matrix product a b a^-1 b^-1, so b^-1 acts first.
  GateSequence out(a.n_modes());
  out.append(b.inverse());
  out.append(a.inverse());
  out.append(b);
  out.append(a);
  return out;
}

GateSequence symmetric_commutator_sequence(const GateSequence& a, const GateSequence& b) {
  GateSequence out(a.n_modes());
  out.append(commutator_sequence(a.inverse(), b.inverse()));
  out.append(commutator_sequence(a, b));
  return out;
}

double defect(const Operator& u, const Operator& v, int levels, int n_modes) {
  if (u.rows() != v.rows() || u.cols() != v.cols())
    throw DimensionMismatch("defect: operators differ in shape");
  if (n_modes < 1 || n_modes > 2) throw UnsupportedModeCount("defect: 1 or 2 modes");
  const int total = static_cast<int>(u.rows());
  const int dim = n_modes == 1 ? total : static_cast<int>(std::lround(std::sqrt(double(total))));
  if (n_modes == 2 && dim * dim != total)
    throw DimensionMismatch("defect: two-mode operator must have square dimension");
  levels = std::clamp(levels, 1, dim);
  std::vector<int> idx;
  if (n_modes == 1) {
    for (int i = 0; i < levels; ++i) idx.push_back(i);
  } else {
    for (int i = 0; i < levels; ++i)
      for (int j = 0; j < levels; ++j) idx.push_back(i * dim + j);
  }
  const int m = static_cast<int>(idx.size());
  Operator ub(m, m), vb(m, m);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) {
      ub(i, j) = u(idx[i], idx[j]);
      vb(i, j) = v(idx[i], idx[j]);
    }
  const cplx overlap = (vb.adjoint() * ub).trace();
  const cplx phase = std::abs(overlap) > 0.0 ? overlap / std::abs(overlap) : cplx(1.0, 0.0);
  return linalg::operator_norm(ub - phase * vb);
}

poly::WeylPolynomial t_gate_generator() {
  using poly::WeylPolynomial;
  const double c3 = 0.25 * pi * 2.0 / std::pow(pi, 1.5);
  const double c2 = 0.25 * pi / pi;
  const double c1 = -0.25 * pi * 2.0 / std::sqrt(pi);
  return WeylPolynomial::q(3) * c3 + WeylPolynomial::q(2) * c2 + WeylPolynomial::q(1) * c1;
}

Operator t_gate_target(int dim) {
  if (dim < 40) throw std::invalid_argument("t_gate_target: dim must be >= 40");
  return exact_polynomial_unitary(t_gate_generator(), 1.0, dim);
}

Operator exact_polynomial_unitary(const poly::WeylPolynomial& target, double tau, int dim) {
  if (!target.is_hermitian(1e-12))
    throw std::invalid_argument("exact_polynomial_unitary: target generator must be Hermitian");
  return linalg::exp_i_hermitian(target.to_matrix(dim), tau);
}

// ---------------------------------------------------------------------------

namespace {

GateSequence single(const GateSpec& g) {
  GateSequence s;
  s.append(g);
  return s;
}

// exp(i s p): Fourier conjugation of a q displacement (F q F^dag = p).
GateSequence p_displacement(double s) {
  GateSequence out;
  out.append(GateSpec::fourier(-1.0));
  out.append(GateSpec::displacement(s));
  out.append(GateSpec::fourier(1.0));
  return out;
}

GateSequence p_cubic(double s) {
  GateSequence out;
  out.append(GateSpec::fourier(-1.0));
  out.append(GateSpec::cubic(s));
  out.append(GateSpec::fourier(1.0));
  return out;
}

// One step of exp(i theta q^2) from [q^3, p]: symC(q^3 dt, -sgn p dt) = exp(6 i sgn dt^2 q^2).
GateSequence quadratic_step(double theta) {
  const double sgn = theta < 0.0 ? -1.0 : 1.0;
  const double dt = std::sqrt(std::abs(theta) / 6.0);
  return symmetric_commutator_sequence(single(GateSpec::cubic(dt)), p_displacement(-sgn * dt));
}

// exp(i s p^2) from [p^3, q]: symC(p^3 d, sgn q d) = exp(6 i sgn d^2 p^2).
GateSequence p_squared(double s) {
  const double sgn = s < 0.0 ? -1.0 : 1.0;
  const double d = std::sqrt(std::abs(s) / 6.0);
  return symmetric_commutator_sequence(p_cubic(d), single(GateSpec::displacement(sgn * d)));
}

// One step of exp(i theta q^4). With S = p q^2 + q^2 p:
//   W = symC(q^3 dt, p^2 dt) = exp(-6 i dt^2 S),  [q^3, S] = 6 i q^4,
//   symC(u q^3, W) = exp(72 i u dt^2 q^4), and dt^2 = |u|.
GateSequence quartic_step(double theta) {
  const double sgn = theta < 0.0 ? -1.0 : 1.0;
  const double u = sgn * std::sqrt(std::abs(theta) / 72.0);
  const double dt = std::sqrt(std::abs(u));
  const GateSequence w = symmetric_commutator_sequence(single(GateSpec::cubic(dt)), p_squared(dt));
  return symmetric_commutator_sequence(single(GateSpec::cubic(u)), w);
}

struct Parsed {
  std::map<int, double> q_terms;
  std::map<int, double> p_terms;
};

Parsed parse_target(const poly::WeylPolynomial& target) {
  Parsed out;
  for (const auto& [k, c] : target.terms()) {
    if (std::abs(c.imag()) > 1e-14)
      throw std::invalid_argument("synthesize_polynomial: coefficients must be real");
    if (k.first > 0 && k.second > 0)
      throw std::invalid_argument("synthesize_polynomial: mixed q^i p^j terms are not supported");
    const int deg = k.first + k.second;
    if (deg > 4) throw std::invalid_argument("synthesize_polynomial: degree above 4");
    if (deg == 0) continue;  // global phase
    (k.first > 0 ? out.q_terms : out.p_terms)[deg] += c.real();
  }
  return out;
}

bool needs_commutators(const std::map<int, double>& terms, const SynthesisOptions& opt) {
  for (const auto& [k, c] : terms)
    if (c != 0.0 && (k == 4 || (k == 2 && opt.quadratic_via_commutator))) return true;
  return false;
}

// exp(i angle sum_k c_k q^k), commutator-built terms split into `steps` pieces.
GateSequence q_block(const std::map<int, double>& terms, double angle, long steps,
                     const SynthesisOptions& opt) {
  GateSequence out;
  for (const auto& [k, c] : terms) {
    const double theta = c * angle;
    if (theta == 0.0) continue;
    switch (k) {
      case 1: out.append(GateSpec::displacement(theta)); break;
      case 2:
        if (opt.quadratic_via_commutator)
          out.append_repeat(quadratic_step(theta / steps), steps);
        else
          out.append(GateSpec::squeeze(theta));
        break;
      case 3: out.append(GateSpec::cubic(theta)); break;
      case 4: out.append_repeat(quartic_step(theta / steps), steps); break;
      default: break;
    }
  }
  return out;
}

GateSequence p_block(const std::map<int, double>& terms, double angle, long steps,
                     const SynthesisOptions& opt) {
  GateSequence out;
  const GateSequence inner = q_block(terms, angle, steps, opt);
  if (inner.empty()) return out;
  out.append(GateSpec::fourier(-1.0));
  out.append(inner);
  out.append(GateSpec::fourier(1.0));
  return out;
}

GateSequence build(const Parsed& t, double tau, long steps, const SynthesisOptions& opt) {
  const bool mixed = !t.q_terms.empty() && !t.p_terms.empty();
  if (!mixed) {
    GateSequence out;
    out.append(q_block(t.q_terms, tau, steps, opt));
    out.append(p_block(t.p_terms, tau, steps, opt));
    return out;
  }
  // Strang splitting with `steps` slices; each slice needs one commutator step.
  GateSequence slice;
  slice.append(q_block(t.q_terms, 0.5 * tau / steps, 1, opt));
  slice.append(p_block(t.p_terms, tau / steps, 1, opt));
  slice.append(q_block(t.q_terms, 0.5 * tau / steps, 1, opt));
  GateSequence out;
  out.append_repeat(slice, steps);
  return out;
}

}  // namespace

SynthesisResult synthesize_polynomial(const poly::WeylPolynomial& target, double tau, int dim,
                                      const SynthesisOptions& options) {
  if (dim < 4) throw std::invalid_argument("synthesize_polynomial: dim must be >= 4");
  const Parsed parsed = parse_target(target);
  const int levels = options.levels > 0 ? options.levels : dim / 2;
  const Operator exact = exact_polynomial_unitary(target, tau, dim);
  const bool refinable = needs_commutators(parsed.q_terms, options) ||
                         needs_commutators(parsed.p_terms, options) ||
                         (!parsed.q_terms.empty() && !parsed.p_terms.empty());

  long steps = std::max(1L, options.initial_steps);
  SynthesisResult best;
  for (long r = 0; r <= options.max_refinements; ++r, steps *= 4) {
    GateSequence seq = build(parsed, tau, steps, options);
    if (seq.gate_count() > options.max_gates) break;
    SynthesisResult res;
    res.unitary = seq.unitary(dim);
    res.defect = defect(res.unitary, exact, levels);
    res.steps = steps;
    res.sequence = std::move(seq);
    if (res.defect <= options.tolerance || !refinable) {
      if (res.defect > options.tolerance) break;
      return res;
    }
    best = std::move(res);
  }
  std::ostringstream msg;
  msg << "synthesize_polynomial: defect " << best.defect << " after " << best.steps
      << " steps exceeds tolerance " << options.tolerance << " within " << options.max_gates
      << " gates";
  throw BudgetExceeded(msg.str());
}

}  // namespace snailcv::universality
