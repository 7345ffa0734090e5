#pragma once

#include <numbers>

namespace snailcv::constants {

inline constexpr double pi = std::numbers::pi;
inline constexpr double two_pi = 2.0 * std::numbers::pi;

// CODATA 2018 (SI exact where applicable).
inline constexpr double hbar = 1.054571817e-34;          // J s
inline constexpr double elementary_charge = 1.602176634e-19;  // C
// Reduced flux quantum hbar / 2e.
inline constexpr double reduced_flux_quantum = hbar / (2.0 * elementary_charge);

// Unit helpers: the library works in angular frequency (rad/s) and seconds.
constexpr double ghz_to_angular(double ghz) { return two_pi * ghz * 1e9; }
constexpr double mhz_to_angular(double mhz) { return two_pi * mhz * 1e6; }
constexpr double khz_to_angular(double khz) { return two_pi * khz * 1e3; }
constexpr double angular_to_ghz(double w) { return w / two_pi * 1e-9; }
constexpr double angular_to_mhz(double w) { return w / two_pi * 1e-6; }
constexpr double ns_to_s(double ns) { return ns * 1e-9; }

}  // namespace snailcv::constants
