#pragma once

#include <string>

#include "json.hpp"
#include "snailcv/circuit.hpp"
#include "snailcv/fock.hpp"
#include "snailcv/protocols.hpp"

namespace snailcv::report {

inline constexpr int kReportSchemaVersion = 1;

/// Couplings in MHz (nu = omega / 2 pi), keyed by power m, plus the mode
/// solution and the drive-derived quantities at modulation `lambda`.
nlohmann::json couplings_report(const circuit::CircuitModel& model, double lambda);

nlohmann::json eigenmode_report(const circuit::CircuitModel& model);

nlohmann::json protocol_json(const protocols::ProtocolResult& r);

/// Writes <prefix>.bin (complex128 little-endian density matrix, column
/// major) and <prefix>.json (dim, layout, convention).
void save_state(const std::string& prefix, const fock::QuantumState& state, const std::string& name);

/// Loads from the sidecar path (<prefix>.json). Throws std::runtime_error on
/// I/O or layout problems and std::invalid_argument for an invalid density
/// matrix (eigenvalue floor -1e-6).
fock::QuantumState load_state(const std::string& sidecar_path);

/// Writes pretty-printed JSON with a trailing newline.
void write_json(const std::string& path, const nlohmann::json& j);

}  // namespace snailcv::report
