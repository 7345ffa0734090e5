#pragma once

#include <string>

#include "json.hpp"
#include "snailcv/analysis.hpp"
#include "snailcv/circuit.hpp"
#include "snailcv/lindblad.hpp"
#include "snailcv/protocols.hpp"

namespace snailcv::config {

inline constexpr int kSchemaVersion = 1;

/// Experiment description in schema units: GHz, MHz, kHz, ns, pH, ohm and
/// flux in flux quanta (Phi / Phi_0, so the phase is 2 pi times the value).
/// Defaults reproduce the reference device.
struct ExperimentConfig {
  struct Snail {
    int n = 3;
    double alpha = 0.1;
    double l_j_ph = 600.0;
    double flux_quanta = 0.3931;
  } snail;
  struct Resonator {
    double f0_ghz = 8.8;
    double z_c_ohm = 50.0;
    int m_snails = 1;
  } resonator;
  struct Squeeze {
    double xi_bar = -0.125;
    double t_sq_ns = 14.0;
  } squeeze;
  struct Cubic {
    double lambda = 0.1;
    double t_g_ns = 19.0;
  } cubic;
  double kappa_khz = 50.0;
  struct Sim {
    int dim = 80;
    double rtol = 1e-8;
    double atol = 1e-10;
    double sample_ns = 0.25;
    std::string ac_expansion = "full";
  } sim;
  struct Wigner {
    double q_min = -5.0, q_max = 5.0;
    double p_min = -5.0, p_max = 5.0;
    int nq = 201, np = 201;
  } wigner;
  std::string output_dir = "out";

  // Derived, SI / angular units.
  double phi_ext_dc() const;
  double l_j() const;
  circuit::ResonatorParams resonator_params() const;
  snail::AcExpansion expansion() const;
  circuit::CircuitModel circuit_model() const;
  lindblad::LindbladConfig lindblad_config() const;
  analysis::GridSpec grid() const;

  nlohmann::json to_json() const;
};

/// Validates and fills defaults. Throws SchemaError (with a JSON-pointer-like
/// field path) for unknown fields or wrong types and UnitError for values out
/// of their physical range.
ExperimentConfig from_json(const nlohmann::json& j);

/// Reads a JSON file; SchemaError if missing or not valid JSON.
ExperimentConfig parse_config(const std::string& path);

}  // namespace snailcv::config
