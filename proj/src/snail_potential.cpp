#include "snailcv/snail_potential.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include "snailcv/constants.hpp"
#include "snailcv/errors.hpp"

namespace snailcv::snail {

namespace {

using constants::pi;

// m-th derivative of cos evaluated at x.
double cos_derivative(int m, double x) { return std::cos(x + 0.5 * pi * m); }

double reduce_flux(double phi_ext, int n) {
  const double period = 2.0 * pi * n;
  double r = std::fmod(phi_ext, period);
  if (r < 0.0) r += period;
  if (r >= period) r = 0.0;
  return r;
}

double curvature(const SnailParams& p, double phi) {
  return p.alpha * std::cos(phi) + std::cos((p.phi_ext_dc - phi) / p.n) / p.n;
}

// Bisection down to adjacent doubles; f(lo) < 0 < f(hi).
template <typename F>
double bisect(F&& f, double lo, double hi, double x_tol) {
  double flo = f(lo);
  for (int it = 0; it < 400 && hi - lo > x_tol; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    const double fm = f(mid);
    if (fm == 0.0) return mid;
    if ((fm < 0.0) == (flo < 0.0)) {
      lo = mid;
      flo = fm;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

}  // namespace

SnailParams SnailParams::make(int n, double alpha, double e_j, double phi_ext_dc) {
  if (n < 1) throw std::invalid_argument("SnailParams: n must be >= 1");
  if (!(alpha > 0.0 && alpha <= 1.0))
    throw std::invalid_argument("SnailParams: alpha must lie in (0, 1]");
  if (!(e_j > 0.0)) throw std::invalid_argument("SnailParams: e_j must be positive");
  if (!std::isfinite(phi_ext_dc))
    throw std::invalid_argument("SnailParams: phi_ext_dc must be finite");
  return SnailParams{n, alpha, e_j, reduce_flux(phi_ext_dc, n)};
}

double potential_eval(const SnailParams& p, double phi) {
  return -p.alpha * p.e_j * std::cos(phi) -
         p.n * p.e_j * std::cos((p.phi_ext_dc - phi) / p.n);
}

double stationarity_residual(const SnailParams& p, double phi) {
  return p.alpha * std::sin(phi) - std::sin((p.phi_ext_dc - phi) / p.n);
}

double find_minimum(const SnailParams& p) {
  // One period of the potential in phi, centred on the large-junction well.
  const double half = pi * p.n;
  const double lo = p.phi_ext_dc - half;
  const int samples = 256 * p.n;
  const double step = 2.0 * half / samples;
  auto f = [&](double x) { return stationarity_residual(p, x); };

  double best_phi = 0.0;
  double best_u = std::numeric_limits<double>::infinity();
  bool found = false;
  double x0 = lo;
  double f0 = f(x0);
  for (int i = 1; i <= samples; ++i) {
    const double x1 = lo + i * step;
    const double f1 = f(x1);
    // dU/dphi rising through zero marks a minimum.
    if (f0 < 0.0 && f1 >= 0.0) {
      double root = bisect(f, x0, x1, 0.0);
      for (int k = 0; k < 3; ++k) {
        const double c = curvature(p, root);
        if (c <= 0.0) break;
        const double next = root - f(root) / c;
        if (!(next > x0 && next < x1)) break;
        if (std::abs(f(next)) >= std::abs(f(root))) break;
        root = next;
      }
      if (curvature(p, root) > 0.0) {
        const double u = potential_eval(p, root);
        if (u < best_u) {
          best_u = u;
          best_phi = root;
          found = true;
        }
      }
    }
    x0 = x1;
    f0 = f1;
  }
  if (!found) {
    throw NoMinimumFound("find_minimum: no positive-curvature stationary point for n=" +
                         std::to_string(p.n) + ", alpha=" + std::to_string(p.alpha) +
                         ", phi_ext=" + std::to_string(p.phi_ext_dc));
  }
  return best_phi;
}

TaylorCoeffs static_coeffs(const SnailParams& p, int m_max) {
  if (m_max < 2) throw std::invalid_argument("static_coeffs: m_max must be >= 2");
  TaylorCoeffs t;
  t.m_max = m_max;
  t.phi_min = find_minimum(p);
  const double theta = (p.phi_ext_dc - t.phi_min) / p.n;
  t.c_dc.assign(m_max + 1, 0.0);
  t.c_ac_lin.assign(m_max + 1, 0.0);
  t.c_ac_quad.assign(m_max + 1, 0.0);
  for (int m = 0; m <= m_max; ++m) {
    // d^m/dphi^m of -n cos((phi_ext - phi)/n) carries (-1/n)^m.
    const double chain = std::pow(-1.0 / p.n, m);
    t.c_dc[m] = -p.alpha * cos_derivative(m, t.phi_min) - p.n * chain * cos_derivative(m, theta);
  }
  return t;
}

TaylorCoeffs ac_coeff_amplitudes(const SnailParams& p, int m_max, AcExpansion expansion) {
  TaylorCoeffs t = static_coeffs(p, m_max);
  const double theta = (p.phi_ext_dc - t.phi_min) / p.n;
  for (int m = 0; m <= m_max; ++m) {
    const double chain = std::pow(-1.0 / p.n, m);
    // Each derivative in phi_ext brings 1/n and one more derivative of cos.
    t.c_ac_lin[m] = -p.n * chain / p.n * cos_derivative(m + 1, theta);
    t.c_ac_quad[m] = -0.5 * p.n * chain / (p.n * p.n) * cos_derivative(m + 2, theta);
  }
  if (expansion == AcExpansion::resonant_only) {
    // Odd m keep only the linear part, even m only the quadratic part.
    for (int m = 0; m <= m_max; ++m) {
      if (m % 2 == 1)
        t.c_ac_quad[m] = 0.0;
      else
        t.c_ac_lin[m] = 0.0;
    }
  }
  return t;
}

double kerr_free_flux(const SnailParams& p, std::pair<double, double> interval) {
  auto [lo, hi] = interval;
  if (!(hi > lo)) throw std::invalid_argument("kerr_free_flux: empty search interval");
  if (hi - lo > 2.0 * pi * p.n)
    throw std::invalid_argument("kerr_free_flux: interval exceeds one flux period");
  auto c4 = [&](double flux) { return static_coeffs(p.with_flux(flux), 4).c_dc[4]; };

  constexpr int kScan = 200;
  const double step = (hi - lo) / kScan;
  double x0 = lo;
  double f0 = c4(x0);
  for (int i = 1; i <= kScan; ++i) {
    const double x1 = (i == kScan) ? hi : lo + i * step;
    const double f1 = c4(x1);
    if (f0 == 0.0) return x0;
    if ((f0 < 0.0) != (f1 < 0.0)) {
      double a = x0, b = x1, fa = f0;
      while (b - a > 1e-11) {
        const double mid = 0.5 * (a + b);
        const double fm = c4(mid);
        if ((fm < 0.0) == (fa < 0.0)) {
          a = mid;
          fa = fm;
        } else {
          b = mid;
        }
      }
      return 0.5 * (a + b);
    }
    x0 = x1;
    f0 = f1;
  }
  throw NoRootInInterval("kerr_free_flux: c4 does not change sign on [" + std::to_string(lo) +
                         ", " + std::to_string(hi) + "]");
}

}  // namespace snailcv::snail
