// snailcv: command-line front end for the SNAIL cubic-phase pipeline.
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "snailcv/analysis.hpp"
#include "snailcv/config.hpp"
#include "snailcv/constants.hpp"
#include "snailcv/errors.hpp"
#include "snailcv/fock.hpp"
#include "snailcv/linalg.hpp"
#include "snailcv/png_writer.hpp"
#include "snailcv/protocols.hpp"
#include "snailcv/report.hpp"
#include "snailcv/universality.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace snailcv;

namespace {

constexpr int kExitValidation = 2;
constexpr int kExitNumerical = 3;

struct GlobalOptions {
  std::string config_path;
  std::string output_dir;
  std::optional<int> dim;
  std::optional<double> kappa_khz;
  bool lossless = false;
};

config::ExperimentConfig load_config(const GlobalOptions& g) {
  config::ExperimentConfig cfg = g.config_path.empty() ? config::ExperimentConfig{}
                                                       : config::parse_config(g.config_path);
  if (g.dim) {
    if (*g.dim < 4 || *g.dim > 400) throw UnitError("--dim", "must lie in [4, 400]");
    cfg.sim.dim = *g.dim;
  }
  if (g.kappa_khz) {
    if (!(*g.kappa_khz >= 0.0)) throw UnitError("--kappa-khz", "must be >= 0 (kHz)");
    cfg.kappa_khz = *g.kappa_khz;
  }
  if (g.lossless) cfg.kappa_khz = 0.0;
  if (!g.output_dir.empty()) cfg.output_dir = g.output_dir;
  return cfg;
}

fs::path output_dir(const config::ExperimentConfig& cfg) {
  fs::path dir(cfg.output_dir);
  fs::create_directories(dir);
  return dir;
}

void emit(const fs::path& path, const json& j) {
  report::write_json(path.string(), j);
  std::cout << j.dump(2) << '\n';
}

int cmd_couplings(const config::ExperimentConfig& cfg) {
  const circuit::CircuitModel model = cfg.circuit_model();
  json j = report::couplings_report(model, cfg.cubic.lambda);
  j["flux_quanta"] = cfg.snail.flux_quanta;
  emit(output_dir(cfg) / "couplings.json", j);
  return 0;
}

int cmd_eigenmode(const config::ExperimentConfig& cfg) {
  emit(output_dir(cfg) / "eigenmode.json", report::eigenmode_report(cfg.circuit_model()));
  return 0;
}

json wigner_summary(const analysis::WignerGrid& w) {
  return {{"min", w.min()},
          {"max", w.max()},
          {"normalization", analysis::normalization(w)},
          {"negativity_volume", analysis::negativity_volume(w)}};
}

int cmd_simulate(const config::ExperimentConfig& cfg) {
  const fs::path dir = output_dir(cfg);
  const circuit::CircuitModel model = cfg.circuit_model();
  const circuit::CouplingSet g = model.couplings.with_linear_drive_cancelled();
  const auto squeeze = protocols::SqueezeProtocol::for_target(
      cfg.squeeze.xi_bar, g.omega_r, constants::ns_to_s(cfg.squeeze.t_sq_ns));
  const auto cubic = protocols::CubicProtocol::make(g, cfg.cubic.lambda,
                                                     constants::ns_to_s(cfg.cubic.t_g_ns));
  const lindblad::LindbladConfig lcfg = cfg.lindblad_config();

  protocols::RunOptions opts;
  const double dt = constants::ns_to_s(cfg.sim.sample_ns);
  const double t_total = squeeze.t_sq + cubic.t_g;
  for (long k = 1; k * dt < t_total; ++k) opts.output_times.push_back(k * dt);
  std::vector<lindblad::TrajectoryPoint> trajectory;
  opts.observer = [&trajectory](double t, const fock::QuantumState& s) {
    if (!trajectory.empty() && trajectory.back().t == t) return;
    trajectory.push_back(lindblad::measure(t, s));
  };

  const protocols::PipelineResult res =
      protocols::prepare_cubic_phase_state(g, squeeze, cubic, lcfg, cfg.sim.dim, opts);

  {
    std::ofstream csv(dir / "trajectory.csv");
    lindblad::write_trajectory_csv(csv, trajectory);
  }
  const fs::path states = dir / "states";
  fs::create_directories(states);
  report::save_state((states / "squeezed").string(), res.squeeze.frame_corrected_state, "squeezed");
  report::save_state((states / "cubic").string(), res.cubic.frame_corrected_state, "cubic");
  report::save_state((states / "target").string(), res.cubic.target_state, "target");

  const analysis::WignerGrid w = analysis::wigner(res.cubic.frame_corrected_state, cfg.grid());

  json j = {
      {"schema_version", report::kReportSchemaVersion},
      {"kind", "simulate"},
      {"config", cfg.to_json()},
      {"omega_r_ghz", constants::angular_to_ghz(g.omega_r)},
      {"squeeze", report::protocol_json(res.squeeze)},
      {"cubic", report::protocol_json(res.cubic)},
      {"fidelity", res.fidelity},
      {"r", res.r},
      {"gamma", res.gamma},
      {"wigner", wigner_summary(w)},
      {"trajectory_csv", "trajectory.csv"},
      {"states", {"states/squeezed.json", "states/cubic.json", "states/target.json"}},
  };
  j["cubic"]["delta_omega_mhz"] = constants::angular_to_mhz(cubic.delta_omega);
  j["squeeze"]["epsilon_d_mhz"] = constants::angular_to_mhz(squeeze.epsilon_d);
  emit(dir / "simulate.json", j);
  return 0;
}

fock::QuantumState named_state(const config::ExperimentConfig& cfg, const std::string& name) {
  const int dim = cfg.sim.dim;
  if (name == "vacuum") return fock::QuantumState::vacuum(dim);
  if (name == "fock1") return fock::QuantumState::fock(dim, 1);
  if (name == "ideal_cubic") return analysis::ideal_cubic_phase_state(-0.1, 0.7, dim, 1e-4);
  const fs::path sidecar = fs::path(cfg.output_dir) / "states" / (name + ".json");
  if (!fs::exists(sidecar))
    throw std::invalid_argument("unknown state '" + name +
                                "': expected vacuum, fock1, ideal_cubic or a stored state in " +
                                (fs::path(cfg.output_dir) / "states").string());
  return report::load_state(sidecar.string());
}

int cmd_wigner(const config::ExperimentConfig& cfg, const std::string& name) {
  const fs::path dir = output_dir(cfg);
  const analysis::WignerGrid w = analysis::wigner(named_state(cfg, name), cfg.grid());
  const fs::path csv = dir / ("wigner_" + name + ".csv");
  {
    std::ofstream out(csv);
    if (!out) throw std::runtime_error("cannot write " + csv.string());
    analysis::write_wigner_csv(out, w);
  }
  json j = wigner_summary(w);
  j["schema_version"] = report::kReportSchemaVersion;
  j["kind"] = "wigner";
  j["state"] = name;
  j["csv"] = csv.filename().string();
  std::cout << j.dump(2) << '\n';
  return 0;
}

int cmd_plot(const config::ExperimentConfig& cfg, const std::string& input, std::string png) {
  std::ifstream in(input);
  if (!in) throw std::invalid_argument("cannot open " + input);
  const analysis::WignerGrid w = analysis::read_wigner_csv(in);
  if (png.empty()) png = (output_dir(cfg) / (fs::path(input).stem().string() + ".png")).string();
  plot::write_heatmap_png(png, w);
  std::cout << json{{"kind", "plot"}, {"png", png}}.dump() << '\n';
  return 0;
}

int cmd_universality(const config::ExperimentConfig& cfg) {
  using namespace universality;
  const fs::path dir = output_dir(cfg);
  json j = {{"schema_version", report::kReportSchemaVersion}, {"kind", "universality-check"}};

  // Group-commutator error law for A = q^3, B = p.
  {
    const int dim = 60;
    const auto ops = fock::ladder_ops(dim);
    const Operator a = ops.q * ops.q * ops.q;
    const Operator b = ops.p;
    const Operator gen = fock::cplx(0.0, 1.0) * (a * b - b * a);
    json rows = json::array();
    std::vector<double> ldt, ldef;
    double prev = 0.0;
    for (double dt = 0.02; dt > 1.5e-5; dt /= 2.0) {
      const double d = defect(commutator_compose(a, b, dt), linalg::exp_i_hermitian(gen, dt * dt),
                              dim / 2);
      json row = {{"dt", dt}, {"defect", d}};
      if (prev > 0.0) row["ratio"] = prev / d;
      rows.push_back(row);
      ldt.push_back(std::log(dt));
      ldef.push_back(std::log(d));
      prev = d;
    }
    const double n = static_cast<double>(ldt.size());
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (size_t i = 0; i < ldt.size(); ++i) {
      sx += ldt[i];
      sy += ldef[i];
      sxx += ldt[i] * ldt[i];
      sxy += ldt[i] * ldef[i];
    }
    j["commutator_scaling"] = {{"dim", dim},
                               {"levels", dim / 2},
                               {"rows", rows},
                               {"fitted_order", (n * sxy - sx * sy) / (n * sxx - sx * sx)}};
  }

  // q^2 from [q^3, p]: defect against the exact shear as the step count grows.
  {
    json rows = json::array();
    for (long k : {1L, 2L, 4L, 8L, 16L}) {
      SynthesisOptions o;
      o.quadratic_via_commutator = true;
      o.initial_steps = k;
      o.max_refinements = 0;
      o.tolerance = 1.0;
      o.levels = 10;
      const auto r = synthesize_polynomial(poly::WeylPolynomial::q(2), 0.25, 100, o);
      rows.push_back({{"steps", k}, {"defect", r.defect}, {"gates", r.sequence.gate_count()}});
    }
    j["quadratic_from_cubic"] = {{"tau", 0.25}, {"dim", 100}, {"levels", 10}, {"rows", rows}};
  }

  {
    SynthesisOptions o;
    o.levels = 10;
    o.tolerance = 1e-2;
    const auto r = synthesize_polynomial(poly::WeylPolynomial::q(4), 0.01, 100, o);
    j["quartic"] = {{"tau", 0.01}, {"tolerance", o.tolerance}, {"steps", r.steps},
                    {"defect", r.defect}, {"gates", r.sequence.gate_count()}};
  }

  {
    SynthesisOptions o;
    o.levels = 10;
    o.tolerance = 1e-3;
    o.quadratic_via_commutator = true;
    const auto r = synthesize_polynomial(t_gate_generator(), 1.0, 100, o);
    j["t_gate"] = {{"generator", t_gate_generator().to_string()},
                   {"steps", r.steps},
                   {"defect", r.defect},
                   {"defect_vs_target", defect(r.unitary, t_gate_target(100), 10)},
                   {"gates", r.sequence.gate_count()}};
    report::write_json((dir / "t_gate_sequence.json").string(), r.sequence.to_json());
  }

  {
    const int dim = 40;
    const Operator f = gate_unitary(GateSpec::fourier(), dim);
    const Operator f4 = f * f * f * f;
    j["fourier_fourth_power_defect"] = defect(f4, Operator::Identity(dim, dim), dim);
  }

  emit(dir / "universality.json", j);
  return 0;
}

void print_error(const std::string& type, const std::string& message,
                 const std::string& field = {}) {
  json e = {{"type", type}, {"message", message}};
  if (!field.empty()) e["field"] = field;
  std::cerr << json{{"error", e}}.dump() << '\n';
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"SNAIL cubic-phase-state simulator"};
  app.require_subcommand(1);
  GlobalOptions g;
  app.add_option("--config", g.config_path, "Experiment config (JSON)")->check(CLI::ExistingFile);
  app.add_option("--output", g.output_dir, "Output directory (overrides the config)");
  app.add_option("--dim", g.dim, "Fock truncation override");
  app.add_option("--kappa-khz", g.kappa_khz, "Loss rate kappa/2pi override in kHz");
  app.add_flag("--lossless", g.lossless, "Set kappa to zero");

  auto* couplings = app.add_subcommand("couplings", "Coupling table in MHz");
  auto* eigenmode = app.add_subcommand("eigenmode", "Loaded resonator frequency");
  auto* simulate = app.add_subcommand("simulate", "Squeeze and cubic stages with report");
  auto* wigner = app.add_subcommand("wigner", "Wigner grid of a fixture or stored state");
  std::string state_name;
  wigner->add_option("state", state_name, "vacuum | fock1 | ideal_cubic | stored state name")
      ->required();
  auto* univ = app.add_subcommand("universality-check", "Gate-synthesis error scaling");
  auto* plot = app.add_subcommand("plot", "PNG heat map from a Wigner CSV");
  std::string plot_input, plot_png;
  plot->add_option("input", plot_input, "Wigner CSV")->required()->check(CLI::ExistingFile);
  plot->add_option("--png", plot_png, "Output PNG path");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    print_error("UsageError", e.what());
    return kExitValidation;
  }

  try {
    const config::ExperimentConfig cfg = load_config(g);
    if (*couplings) return cmd_couplings(cfg);
    if (*eigenmode) return cmd_eigenmode(cfg);
    if (*simulate) return cmd_simulate(cfg);
    if (*wigner) return cmd_wigner(cfg, state_name);
    if (*univ) return cmd_universality(cfg);
    if (*plot) return cmd_plot(cfg, plot_input, plot_png);
  } catch (const SchemaError& e) {
    print_error("SchemaError", e.what(), e.field_path());
    return kExitValidation;
  } catch (const UnitError& e) {
    print_error("UnitError", e.what(), e.field_path());
    return kExitValidation;
  } catch (const std::invalid_argument& e) {
    print_error("InvalidArgument", e.what());
    return kExitValidation;
  } catch (const NumericalError& e) {
    print_error("NumericalError", e.what());
    return kExitNumerical;
  } catch (const std::exception& e) {
    print_error("Error", e.what());
    return 1;
  }
  return 0;
}
