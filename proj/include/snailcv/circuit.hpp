#pragma once

#include <array>

#include "snailcv/snail_potential.hpp"

namespace snailcv::circuit {

/// Quarter-wave transmission-line resonator terminated by `m_snails` SNAILs.
struct ResonatorParams {
  double omega_0 = 0.0;  // bare resonance, rad/s
  double z_c = 50.0;     // characteristic impedance, ohm
  int m_snails = 1;

  static ResonatorParams make(double omega_0, double z_c, int m_snails);
};

struct ModeSolution {
  double omega_r = 0.0;
  /// Integral of cos^2(kx) over the line divided by its length d.
  double eta_factor = 0.0;
  /// Dimensionless zero-point phase amplitude at the SNAIL.
  double phi_zpf = 0.0;
};

/// Hamiltonian couplings in rad/s, indexed by the power m of (a + a^dagger).
///
/// `g_dc` is static; `g_ac_lin[m]` multiplies phi_ext^ac(t) and
/// `g_ac_quad[m]` multiplies phi_ext^ac(t)^2. The quadratic static term is
/// already inside `omega_r`, so g_dc[1] = g_dc[2] = 0.
struct CouplingSet {
  double omega_r = 0.0;
  std::array<double, 5> g_dc{};
  std::array<double, 5> g_ac_lin{};
  std::array<double, 5> g_ac_quad{};

  /// Copy with the linear-in-drive g1 term removed (assumed cancelled by an
  /// external current source).
  CouplingSet with_linear_drive_cancelled() const {
    CouplingSet c = *this;
    c.g_ac_lin[1] = 0.0;
    return c;
  }
};

/// E_J = phi_0^2 / L_J in angular-frequency units.
double josephson_energy_from_inductance(double l_j);

/// Smallest positive root of omega tan(pi/2 omega/omega_0) = Z_c c2 / (M L_J).
/// Throws InvalidStiffness for c2_dc <= 0.
double solve_eigenmode(const ResonatorParams& res, double c2_dc, double l_j);

/// Relative residual of the eigenmode equation at `omega_r`.
double eigenmode_residual(const ResonatorParams& res, double c2_dc, double l_j, double omega_r);

ModeSolution mode_normalization(const ResonatorParams& res, double omega_r);

/// hbar g_m = E_J phi_zpf^m c_m / (m! M^(m-1)) for every dc and ac coefficient.
CouplingSet compute_couplings(const snail::SnailParams& snail, const ResonatorParams& res,
                              const snail::TaylorCoeffs& coeffs, const ModeSolution& mode);

/// Rotating-frame cubic amplitude for the two-tone drive
/// lambda [cos(w t) + cos(3 w t)]: each tone contributes half its amplitude.
double effective_cubic_drive(const CouplingSet& couplings, double lambda);

/// Full chain from circuit parameters: minimum, coefficients, eigenmode,
/// normalization, couplings.
struct CircuitModel {
  snail::SnailParams snail;
  ResonatorParams resonator;
  double l_j = 0.0;
  snail::TaylorCoeffs coeffs;
  ModeSolution mode;
  CouplingSet couplings;
};

CircuitModel build_circuit_model(int n, double alpha, double l_j, double phi_ext_dc,
                                 const ResonatorParams& res,
                                 snail::AcExpansion expansion = snail::AcExpansion::full);

}  // namespace snailcv::circuit
