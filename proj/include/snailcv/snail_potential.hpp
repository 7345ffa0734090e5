#pragma once

#include <utility>
#include <vector>

namespace snailcv::snail {

/// Microscopic description of a SNAIL loop: `n` large junctions of energy E_J
/// in parallel with one small junction of energy alpha * E_J.
///
/// All phases are dimensionless (flux / reduced flux quantum). `phi_ext_dc`
/// is the static reduced flux in radians, so one full flux quantum is 2*pi.
/// It is stored reduced to the branch [0, 2*pi*n), the period of the
/// potential in the external flux.
struct SnailParams {
  int n = 3;
  double alpha = 0.1;
  double e_j = 1.0;  // angular frequency units
  double phi_ext_dc = 0.0;

  /// Validates (n >= 1, 0 < alpha <= 1, e_j > 0) and reduces the flux.
  /// alpha = 1 with n = 1 is the symmetric SQUID limit.
  static SnailParams make(int n, double alpha, double e_j, double phi_ext_dc);

  SnailParams with_flux(double phi_ext) const {
    return make(n, alpha, e_j, phi_ext);
  }
};

/// Which second-order modulation terms are kept in the ac coefficients.
enum class AcExpansion {
  /// Every term up to second order in the modulation amplitude.
  full,
  /// Only the four closed-form amplitudes that select resonant processes
  /// (linear part of c1, c3; quadratic part of c2, c4). The others are
  /// exact zeros.
  resonant_only,
};

/// Taylor coefficients of U_SNAIL / E_J around the static minimum.
///
/// Index m of each array holds the coefficient multiplying
/// (phi - phi_min)^m / m!. `c_ac_lin[m]` is the part linear in the reduced
/// modulation phi_ext^ac(t); `c_ac_quad[m]` the part quadratic in it (the
/// 1/2 of the second-order expansion is included). Index 0 holds constants.
struct TaylorCoeffs {
  int m_max = 4;
  double phi_min = 0.0;
  std::vector<double> c_dc;
  std::vector<double> c_ac_lin;
  std::vector<double> c_ac_quad;
};

/// -alpha E_J cos(phi) - n E_J cos((phi_ext_dc - phi) / n)
double potential_eval(const SnailParams& params, double phi);

/// Static minimum of the potential over one flux period. Throws
/// NoMinimumFound when no positive-curvature root of dU/dphi is bracketed.
double find_minimum(const SnailParams& params);

/// Residual alpha sin(phi) - sin((phi_ext_dc - phi) / n) of the stationarity
/// condition.
double stationarity_residual(const SnailParams& params, double phi);

/// Static coefficients c_dc[0..m_max] (m-th derivative of U/E_J at phi_min).
TaylorCoeffs static_coeffs(const SnailParams& params, int m_max = 4);

/// Adds the modulation-induced amplitudes to `static_coeffs`.
TaylorCoeffs ac_coeff_amplitudes(const SnailParams& params, int m_max = 4,
                                 AcExpansion expansion = AcExpansion::full);

/// Applied flux in `search_interval` where c_dc[4] crosses zero.
/// Throws NoRootInInterval if c_dc[4] keeps its sign on the interval.
double kerr_free_flux(const SnailParams& params,
                      std::pair<double, double> search_interval);

}  // namespace snailcv::snail
