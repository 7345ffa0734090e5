#include "snailcv/lindblad.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "snailcv/errors.hpp"

namespace snailcv::lindblad {

using fock::cplx;
using fock::Operator;
using fock::QuantumState;

void LindbladConfig::validate() const {
  if (!(kappa >= 0.0) || !std::isfinite(kappa))
    throw std::invalid_argument("LindbladConfig: kappa must be finite and >= 0");
  if (!(rtol > 0.0) || !(atol > 0.0))
    throw std::invalid_argument("LindbladConfig: tolerances must be positive");
  if (!(max_step >= 0.0)) throw std::invalid_argument("LindbladConfig: max_step must be >= 0");
  if (!(leak_threshold > 0.0))
    throw std::invalid_argument("LindbladConfig: leak_threshold must be positive");
}

namespace {

int bandwidth_of(const Operator& op) {
  int b = 0;
  const int d = static_cast<int>(op.rows());
  for (int j = 0; j < d; ++j)
    for (int i = 0; i < d; ++i)
      if (op(i, j) != cplx(0.0, 0.0)) b = std::max(b, std::abs(i - j));
  return b;
}

// H(t) held as its diagonals, offset k in [-b, b] stored at index k + b.
// Entry i of diagonal k is H(i, i + k) for k >= 0 and H(i - k, i) for k < 0.
class BandedHamiltonian {
 public:
  explicit BandedHamiltonian(const fock::TimeDependentHamiltonian& h) : h_(h), dim_(h.dim()) {
    for (const auto& term : h.terms()) band_ = std::max(band_, bandwidth_of(term.op));
    dense_ = band_ > dim_ / 4;
    if (dense_) return;
    for (const auto& term : h.terms()) {
      std::vector<Eigen::VectorXcd> diags;
      for (int k = -band_; k <= band_; ++k) {
        const int len = dim_ - std::abs(k);
        Eigen::VectorXcd v(len);
        for (int i = 0; i < len; ++i) v(i) = k >= 0 ? term.op(i, i + k) : term.op(i - k, i);
        diags.push_back(std::move(v));
      }
      term_diags_.push_back(std::move(diags));
    }
    current_.resize(2 * band_ + 1);
  }

  void set_time(double t) {
    if (dense_) {
      dense_h_ = h_.at(t);
      return;
    }
    for (int k = -band_; k <= band_; ++k) current_[k + band_].setZero(dim_ - std::abs(k));
    const auto& terms = h_.terms();
    for (size_t n = 0; n < terms.size(); ++n) {
      const double w = terms[n].envelope ? terms[n].envelope(t) : 1.0;
      if (w == 0.0) continue;
      for (int k = 0; k <= 2 * band_; ++k) current_[k] += w * term_diags_[n][k];
    }
  }

  // out = H x for x with dim rows.
  void apply(const Eigen::MatrixXcd& x, Eigen::MatrixXcd& out) const {
    if (dense_) {
      out.noalias() = dense_h_ * x;
      return;
    }
    out.setZero(x.rows(), x.cols());
    for (int k = -band_; k <= band_; ++k) {
      const int len = dim_ - std::abs(k);
      const auto& diag = current_[k + band_];
      if (k >= 0)
        out.topRows(len).noalias() += diag.asDiagonal() * x.bottomRows(len);
      else
        out.bottomRows(len).noalias() += diag.asDiagonal() * x.topRows(len);
    }
  }

 private:
  const fock::TimeDependentHamiltonian& h_;
  int dim_;
  int band_ = 0;
  bool dense_ = false;
  std::vector<std::vector<Eigen::VectorXcd>> term_diags_;
  std::vector<Eigen::VectorXcd> current_;
  Operator dense_h_;
};

class Rhs {
 public:
  Rhs(const fock::TimeDependentHamiltonian& h, double kappa, bool ket)
      : hb_(h), dim_(h.dim()), kappa_(kappa), ket_(ket) {
    if (!ket_ && kappa_ > 0.0) {
      jump_weight_.resize(dim_ - 1, dim_ - 1);
      for (int j = 0; j < dim_ - 1; ++j)
        for (int i = 0; i < dim_ - 1; ++i) jump_weight_(i, j) = kappa_ * std::sqrt((i + 1.0) * (j + 1.0));
      decay_weight_.resize(dim_, dim_);
      for (int j = 0; j < dim_; ++j)
        for (int i = 0; i < dim_; ++i) decay_weight_(i, j) = -0.5 * kappa_ * (i + j);
    }
  }

  void operator()(double t, const Eigen::MatrixXcd& y, Eigen::MatrixXcd& dy) {
    ++evaluations;
    hb_.set_time(t);
    hb_.apply(y, hy_);
    const cplx minus_i(0.0, -1.0);
    if (ket_) {
      dy = minus_i * hy_;
      return;
    }
    // rho H = (H rho)^dag for Hermitian rho.
    dy = minus_i * (hy_ - hy_.adjoint());
    if (kappa_ > 0.0) {
      dy += decay_weight_.cwiseProduct(y);
      dy.topLeftCorner(dim_ - 1, dim_ - 1) +=
          jump_weight_.cwiseProduct(y.bottomRightCorner(dim_ - 1, dim_ - 1));
    }
  }

  long evaluations = 0;

 private:
  BandedHamiltonian hb_;
  int dim_;
  double kappa_;
  bool ket_;
  Eigen::MatrixXd jump_weight_;
  Eigen::MatrixXd decay_weight_;
  Eigen::MatrixXcd hy_;
};

double top_population(const Eigen::MatrixXcd& y, bool ket) {
  const int d = static_cast<int>(y.rows());
  const int count = std::max(1, static_cast<int>(std::ceil(0.1 * d)));
  double total = 0.0;
  for (int n = d - count; n < d; ++n) total += ket ? std::norm(y(n, 0)) : y(n, n).real();
  return total;
}

QuantumState wrap(const Eigen::MatrixXcd& y, bool ket) {
  if (ket) return QuantumState::from_ket(y.col(0));
  return QuantumState::from_density_unchecked(y);
}

// Dormand-Prince 5(4) tableau.
constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
constexpr double a21 = 1.0 / 5;
constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561,
                 a54 = -212.0 / 729;
constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247, a64 = 49.0 / 176,
                 a65 = -5103.0 / 18656;
constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192, b5 = -2187.0 / 6784,
                 b6 = 11.0 / 84;
constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920, e5 = -17253.0 / 339200,
                 e6 = 22.0 / 525, e7 = -1.0 / 40;

}  // namespace

QuantumState integrate(const fock::TimeDependentHamiltonian& h, const LindbladConfig& cfg,
                       const QuantumState& initial, double t0, double t1,
                       const IntegrateOptions& options, IntegrationStats* stats) {
  cfg.validate();
  if (initial.dim() != h.dim())
    throw DimensionMismatch("integrate: state dim " + std::to_string(initial.dim()) +
                            " vs Hamiltonian dim " + std::to_string(h.dim()));
  if (!(t1 >= t0) || !std::isfinite(t0) || !std::isfinite(t1))
    throw std::invalid_argument("integrate: need finite t0 <= t1");

  const bool ket = initial.is_ket() && cfg.kappa == 0.0 && options.keep_ket_when_lossless;
  Eigen::MatrixXcd y = ket ? Eigen::MatrixXcd(initial.ket()) : initial.density();
  const int d = h.dim();

  IntegrationStats local;
  auto check_state = [&](double t) {
    if (top_population(y, ket) > cfg.leak_threshold) {
      std::ostringstream msg;
      msg << "integrate: population " << top_population(y, ket) << " in the top 10% of "
          << d << " levels at t = " << t << " s exceeds " << cfg.leak_threshold;
      throw TruncationLeak(msg.str());
    }
    const double tr = ket ? y.squaredNorm() : y.trace().real();
    local.max_trace_error = std::max(local.max_trace_error, std::abs(tr - 1.0));
  };

  std::vector<double> outputs;
  for (double t : options.output_times)
    if (t > t0 && t < t1) outputs.push_back(t);
  std::sort(outputs.begin(), outputs.end());
  outputs.push_back(t1);
  size_t next_output = 0;

  check_state(t0);
  if (options.observer) options.observer(t0, wrap(y, ket));
  if (t1 == t0) return wrap(y, ket);

  Rhs f(h, cfg.kappa, ket);
  Eigen::MatrixXcd k1, k2, k3, k4, k5, k6, k7, tmp, y_new, err;
  f(t0, y, k1);

  const double span = t1 - t0;
  double step = cfg.max_step > 0.0 ? std::min(cfg.max_step, 1e-3 * span) : 1e-3 * span;
  double t = t0;
  const double min_step = 1e-13 * std::max(std::abs(t1), span);

  while (t < t1) {
    if (local.accepted + local.rejected > cfg.max_steps)
      throw IntegratorFailure("integrate: exceeded the step budget");
    const double target = outputs[next_output];
    bool lands = false;
    double h_try = step;
    if (cfg.max_step > 0.0) h_try = std::min(h_try, cfg.max_step);
    if (t + h_try >= target) {
      h_try = target - t;
      lands = true;
    }

    tmp = y + h_try * a21 * k1;
    f(t + c2 * h_try, tmp, k2);
    tmp = y + h_try * (a31 * k1 + a32 * k2);
    f(t + c3 * h_try, tmp, k3);
    tmp = y + h_try * (a41 * k1 + a42 * k2 + a43 * k3);
    f(t + c4 * h_try, tmp, k4);
    tmp = y + h_try * (a51 * k1 + a52 * k2 + a53 * k3 + a54 * k4);
    f(t + c5 * h_try, tmp, k5);
    tmp = y + h_try * (a61 * k1 + a62 * k2 + a63 * k3 + a64 * k4 + a65 * k5);
    f(t + h_try, tmp, k6);
    y_new = y + h_try * (b1 * k1 + b3 * k3 + b4 * k4 + b5 * k5 + b6 * k6);
    f(t + h_try, y_new, k7);
    err = h_try * (e1 * k1 + e3 * k3 + e4 * k4 + e5 * k5 + e6 * k6 + e7 * k7);

    double acc = 0.0;
    for (Eigen::Index j = 0; j < y.cols(); ++j)
      for (Eigen::Index i = 0; i < y.rows(); ++i) {
        const double sc = cfg.atol + cfg.rtol * std::max(std::abs(y(i, j)), std::abs(y_new(i, j)));
        acc += std::norm(err(i, j)) / (sc * sc);
      }
    const double enorm = std::sqrt(acc / static_cast<double>(y.size()));
    if (!std::isfinite(enorm)) throw IntegratorFailure("integrate: non-finite error estimate");

    if (enorm <= 1.0) {
      t = lands ? target : t + h_try;
      y.swap(y_new);
      k1.swap(k7);
      if (!ket) {
        // The update is built from exactly Hermitian increments; track drift anyway.
        local.max_hermiticity_error =
            std::max(local.max_hermiticity_error, (y - y.adjoint()).cwiseAbs().maxCoeff());
      }
      ++local.accepted;
      check_state(t);
      if (lands) {
        if (options.observer) options.observer(t, wrap(y, ket));
        ++next_output;
      }
      const double grow = enorm == 0.0 ? 5.0 : std::min(5.0, 0.9 * std::pow(enorm, -0.2));
      // A landing step may be artificially short; do not let it shrink the next one.
      step = lands ? std::max(step, h_try * grow) : h_try * grow;
    } else {
      ++local.rejected;
      step = h_try * std::max(0.2, 0.9 * std::pow(enorm, -0.2));
      if (step < min_step) {
        std::ostringstream msg;
        msg << "integrate: step size collapsed to " << step << " s at t = " << t << " s";
        throw IntegratorFailure(msg.str());
      }
    }
  }
  local.rhs_evaluations = f.evaluations;
  if (stats) *stats = local;
  return wrap(y, ket);
}

TrajectoryPoint measure(double t, const QuantumState& state) {
  const fock::LadderOps ops = fock::ladder_ops(state.dim());
  TrajectoryPoint p;
  p.t = t;
  p.mean_q = fock::expectation(state, ops.q).real();
  p.mean_p = fock::expectation(state, ops.p).real();
  p.var_q = fock::variance(state, ops.q);
  p.var_p = fock::variance(state, ops.p);
  p.mean_n = fock::expectation(state, ops.number).real();
  p.purity = state.purity();
  return p;
}

void write_trajectory_csv(std::ostream& os, const std::vector<TrajectoryPoint>& points) {
  os << "t_ns,mean_q,mean_p,var_q,var_p,mean_n,purity\n";
  os.precision(12);
  for (const auto& p : points)
    os << p.t * 1e9 << ',' << p.mean_q << ',' << p.mean_p << ',' << p.var_q << ',' << p.var_p
       << ',' << p.mean_n << ',' << p.purity << '\n';
}

}  // namespace snailcv::lindblad
