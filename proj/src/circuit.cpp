#include "snailcv/circuit.hpp"

#include <cmath>
#include <stdexcept>

#include "snailcv/constants.hpp"
#include "snailcv/errors.hpp"

namespace snailcv::circuit {

using constants::pi;

ResonatorParams ResonatorParams::make(double omega_0, double z_c, int m_snails) {
  if (!(omega_0 > 0.0)) throw std::invalid_argument("ResonatorParams: omega_0 must be positive");
  if (!(z_c > 0.0)) throw std::invalid_argument("ResonatorParams: z_c must be positive");
  if (m_snails < 1) throw std::invalid_argument("ResonatorParams: m_snails must be >= 1");
  return ResonatorParams{omega_0, z_c, m_snails};
}

double josephson_energy_from_inductance(double l_j) {
  if (!(l_j > 0.0)) throw std::invalid_argument("junction inductance must be positive");
  const double phi0 = constants::reduced_flux_quantum;
  return phi0 * phi0 / l_j / constants::hbar;
}

double eigenmode_residual(const ResonatorParams& res, double c2_dc, double l_j, double omega_r) {
  const double rhs = res.z_c * c2_dc / (res.m_snails * l_j);
  return (omega_r * std::tan(0.5 * pi * omega_r / res.omega_0) - rhs) / rhs;
}

double solve_eigenmode(const ResonatorParams& res, double c2_dc, double l_j) {
  if (!(c2_dc > 0.0))
    throw InvalidStiffness("solve_eigenmode: c2 must be positive for a restoring SNAIL term");
  if (!(l_j > 0.0)) throw std::invalid_argument("solve_eigenmode: l_j must be positive");
  const double w0 = res.omega_0;
  const double rhs = res.z_c * c2_dc / (res.m_snails * l_j);
  // Increasing on (0, w0) from 0 to +inf.
  auto g = [&](double w) { return w * std::tan(0.5 * pi * w / w0) - rhs; };

  double lo = 1e-6 * w0;
  double hi = w0 - 1e-6 * w0;
  while (g(lo) > 0.0 && lo > 1e-300) lo *= 1e-3;
  double gap = 1e-6;
  while (g(hi) < 0.0 && gap > 1e-15) {
    gap *= 1e-2;
    hi = w0 * (1.0 - gap);
  }
  if (g(lo) > 0.0 || g(hi) < 0.0)
    throw NoRootInInterval("solve_eigenmode: root not bracketed on (0, omega_0)");

  for (int it = 0; it < 200 && hi - lo > 1e-15 * w0; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (g(mid) < 0.0)
      lo = mid;
    else
      hi = mid;
  }
  double w = 0.5 * (lo + hi);
  // Newton polish, kept inside the final bracket.
  for (int it = 0; it < 4; ++it) {
    const double x = 0.5 * pi * w / w0;
    const double c = std::cos(x);
    const double dg = std::tan(x) + w * (0.5 * pi / w0) / (c * c);
    const double next = w - g(w) / dg;
    if (!(next > lo && next < hi)) break;
    w = next;
  }
  return w;
}

ModeSolution mode_normalization(const ResonatorParams& res, double omega_r) {
  if (!(omega_r > 0.0 && omega_r <= res.omega_0))
    throw std::invalid_argument("mode_normalization: omega_r must lie in (0, omega_0]");
  const double x = omega_r / res.omega_0;
  const double kd = 0.5 * pi * x;
  ModeSolution m;
  m.omega_r = omega_r;
  m.eta_factor = 0.5 * (1.0 + std::sin(2.0 * kd) / (2.0 * kd));
  const double phi0 = constants::reduced_flux_quantum;
  m.phi_zpf = std::abs(std::cos(kd)) *
              std::sqrt(2.0 * res.z_c * constants::hbar / (pi * x + std::sin(pi * x))) / phi0;
  if (x == 1.0) m.phi_zpf = 0.0;
  return m;
}

CouplingSet compute_couplings(const snail::SnailParams& snail, const ResonatorParams& res,
                              const snail::TaylorCoeffs& coeffs, const ModeSolution& mode) {
  CouplingSet out;
  out.omega_r = mode.omega_r;
  double factorial = 1.0;
  for (int m = 1; m <= 4; ++m) {
    factorial *= m;
    const double scale = snail.e_j * std::pow(mode.phi_zpf, m) /
                         (factorial * std::pow(static_cast<double>(res.m_snails), m - 1));
    auto at = [&](const std::vector<double>& c) {
      return m < static_cast<int>(c.size()) ? c[m] : 0.0;
    };
    if (m >= 3) out.g_dc[m] = scale * at(coeffs.c_dc);
    out.g_ac_lin[m] = scale * at(coeffs.c_ac_lin);
    out.g_ac_quad[m] = scale * at(coeffs.c_ac_quad);
  }
  return out;
}

double effective_cubic_drive(const CouplingSet& couplings, double lambda) {
  return 0.5 * couplings.g_ac_lin[3] * lambda;
}

CircuitModel build_circuit_model(int n, double alpha, double l_j, double phi_ext_dc,
                                 const ResonatorParams& res, snail::AcExpansion expansion) {
  CircuitModel model;
  model.l_j = l_j;
  model.snail = snail::SnailParams::make(n, alpha, josephson_energy_from_inductance(l_j), phi_ext_dc);
  model.resonator = res;
  model.coeffs = snail::ac_coeff_amplitudes(model.snail, 4, expansion);
  const double w = solve_eigenmode(res, model.coeffs.c_dc[2], l_j);
  model.mode = mode_normalization(res, w);
  model.couplings = compute_couplings(model.snail, res, model.coeffs, model.mode);
  return model;
}

}  // namespace snailcv::circuit
