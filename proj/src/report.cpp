#include "snailcv/report.hpp"

#include <fstream>
#include <stdexcept>

#include "snailcv/constants.hpp"

namespace snailcv::report {

using constants::angular_to_ghz;
using constants::angular_to_mhz;
using nlohmann::json;

json couplings_report(const circuit::CircuitModel& model, double lambda) {
  const auto& g = model.couplings;
  json dc = json::object(), ac1 = json::object(), ac2 = json::object();
  for (int m = 3; m <= 4; ++m) dc[std::to_string(m)] = angular_to_mhz(g.g_dc[m]);
  for (int m = 1; m <= 4; ++m) {
    ac1[std::to_string(m)] = angular_to_mhz(g.g_ac_lin[m]);
    ac2[std::to_string(m)] = angular_to_mhz(g.g_ac_quad[m]);
  }
  const double g3_eff = circuit::effective_cubic_drive(g, lambda);
  const double dw = protocols::detuning_correction(g, lambda);
  return {
      {"schema_version", kReportSchemaVersion},
      {"kind", "couplings"},
      {"units", "MHz, nu = omega / 2 pi"},
      {"omega_r_ghz", angular_to_ghz(g.omega_r)},
      {"phi_zpf", model.mode.phi_zpf},
      {"phi_min", model.coeffs.phi_min},
      {"g_dc", dc},
      {"g_ac_lin", ac1},
      {"g_ac_quad", ac2},
      {"lambda", lambda},
      {"g3_eff_mhz", angular_to_mhz(g3_eff)},
      {"delta_omega_mhz", angular_to_mhz(dw)},
  };
}

json eigenmode_report(const circuit::CircuitModel& model) {
  const double c2 = model.coeffs.c_dc[2];
  return {
      {"schema_version", kReportSchemaVersion},
      {"kind", "eigenmode"},
      {"omega_r_ghz", angular_to_ghz(model.mode.omega_r)},
      {"omega_0_ghz", angular_to_ghz(model.resonator.omega_0)},
      {"c2_dc", c2},
      {"phi_min", model.coeffs.phi_min},
      {"relative_residual",
       circuit::eigenmode_residual(model.resonator, c2, model.l_j, model.mode.omega_r)},
      {"eta_factor", model.mode.eta_factor},
      {"phi_zpf", model.mode.phi_zpf},
  };
}

json protocol_json(const protocols::ProtocolResult& r) {
  return {
      {"achieved_r", r.achieved_r},
      {"achieved_gamma", r.achieved_gamma},
      {"gamma_moment_estimate", r.gamma_moment_estimate},
      {"fidelity", r.fidelity_to_ideal},
      {"frame_angle_rad", r.frame_angle},
      {"frame_displacement", {r.frame_displacement.real(), r.frame_displacement.imag()}},
      {"t_end_ns", r.t_end * 1e9},
      {"purity", r.final_state.purity()},
      {"accepted_steps", r.stats.accepted},
      {"rejected_steps", r.stats.rejected},
      {"max_trace_error", r.stats.max_trace_error},
  };
}

void save_state(const std::string& prefix, const fock::QuantumState& state, const std::string& name) {
  const fock::Operator rho = state.density();
  const std::string bin = prefix + ".bin";
  std::ofstream out(bin, std::ios::binary);
  if (!out) throw std::runtime_error("save_state: cannot write " + bin);
  out.write(reinterpret_cast<const char*>(rho.data()),
            static_cast<std::streamsize>(rho.size() * sizeof(fock::cplx)));
  const std::string base = bin.substr(bin.find_last_of('/') + 1);
  write_json(prefix + ".json", {{"schema_version", kReportSchemaVersion},
                                {"name", name},
                                {"dim", state.dim()},
                                {"storage", "density"},
                                {"dtype", "complex128-le"},
                                {"order", "column-major"},
                                {"blob", base},
                                {"convention", "hbar=1; q=(a+a^dag)/sqrt2; p=(a-a^dag)/(i sqrt2)"}});
}

fock::QuantumState load_state(const std::string& sidecar_path) {
  std::ifstream in(sidecar_path);
  if (!in) throw std::runtime_error("load_state: cannot open " + sidecar_path);
  json meta;
  in >> meta;
  const int dim = meta.at("dim").get<int>();
  if (meta.at("dtype") != "complex128-le" || meta.at("order") != "column-major")
    throw std::runtime_error("load_state: unsupported blob layout");
  const auto slash = sidecar_path.find_last_of('/');
  const std::string dir = slash == std::string::npos ? "" : sidecar_path.substr(0, slash + 1);
  const std::string bin = dir + meta.at("blob").get<std::string>();
  std::ifstream blob(bin, std::ios::binary);
  if (!blob) throw std::runtime_error("load_state: cannot open " + bin);
  fock::Operator rho(dim, dim);
  blob.read(reinterpret_cast<char*>(rho.data()),
            static_cast<std::streamsize>(rho.size() * sizeof(fock::cplx)));
  if (blob.gcount() != static_cast<std::streamsize>(rho.size() * sizeof(fock::cplx)))
    throw std::runtime_error("load_state: truncated blob " + bin);
  // Integrator output carries eigenvalues down to about -1e-7.
  return fock::QuantumState::from_density(rho, 1e-6);
}

void write_json(const std::string& path, const json& j) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << j.dump(2) << '\n';
}

}  // namespace snailcv::report
