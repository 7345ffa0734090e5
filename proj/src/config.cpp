#include "snailcv/config.hpp"

#include <cmath>
#include <fstream>
#include <set>

#include "snailcv/constants.hpp"
#include "snailcv/errors.hpp"

namespace snailcv::config {

using nlohmann::json;

double ExperimentConfig::phi_ext_dc() const { return constants::two_pi * snail.flux_quanta; }
double ExperimentConfig::l_j() const { return snail.l_j_ph * 1e-12; }

circuit::ResonatorParams ExperimentConfig::resonator_params() const {
  return circuit::ResonatorParams::make(constants::ghz_to_angular(resonator.f0_ghz),
                                        resonator.z_c_ohm, resonator.m_snails);
}

snail::AcExpansion ExperimentConfig::expansion() const {
  return sim.ac_expansion == "resonant_only" ? snail::AcExpansion::resonant_only
                                             : snail::AcExpansion::full;
}

circuit::CircuitModel ExperimentConfig::circuit_model() const {
  return circuit::build_circuit_model(snail.n, snail.alpha, l_j(), phi_ext_dc(), resonator_params(),
                                      expansion());
}

lindblad::LindbladConfig ExperimentConfig::lindblad_config() const {
  lindblad::LindbladConfig c;
  c.kappa = constants::khz_to_angular(kappa_khz);
  c.rtol = sim.rtol;
  c.atol = sim.atol;
  return c;
}

analysis::GridSpec ExperimentConfig::grid() const {
  analysis::GridSpec g;
  g.q_min = wigner.q_min;
  g.q_max = wigner.q_max;
  g.p_min = wigner.p_min;
  g.p_max = wigner.p_max;
  g.nq = wigner.nq;
  g.np = wigner.np;
  return g;
}

json ExperimentConfig::to_json() const {
  return {
      {"schema_version", kSchemaVersion},
      {"snail",
       {{"n", snail.n}, {"alpha", snail.alpha}, {"l_j_ph", snail.l_j_ph}, {"flux_quanta", snail.flux_quanta}}},
      {"resonator",
       {{"f0_ghz", resonator.f0_ghz}, {"z_c_ohm", resonator.z_c_ohm}, {"m_snails", resonator.m_snails}}},
      {"drives",
       {{"squeeze", {{"xi_bar", squeeze.xi_bar}, {"t_sq_ns", squeeze.t_sq_ns}}},
        {"cubic", {{"lambda", cubic.lambda}, {"t_g_ns", cubic.t_g_ns}}}}},
      {"loss", {{"kappa_khz", kappa_khz}}},
      {"sim",
       {{"dim", sim.dim},
        {"rtol", sim.rtol},
        {"atol", sim.atol},
        {"sample_ns", sim.sample_ns},
        {"ac_expansion", sim.ac_expansion}}},
      {"wigner",
       {{"q_min", wigner.q_min},
        {"q_max", wigner.q_max},
        {"p_min", wigner.p_min},
        {"p_max", wigner.p_max},
        {"nq", wigner.nq},
        {"np", wigner.np}}},
      {"outputs", {{"dir", output_dir}}},
  };
}

namespace {

// Walks one JSON object, rejecting unknown keys and mistyped values.
class Reader {
 public:
  Reader(const json& j, std::string path) : j_(j), path_(std::move(path)) {
    if (!j_.is_object()) throw SchemaError(path_.empty() ? "/" : path_, "expected an object");
  }

  void finish() const {
    for (auto it = j_.begin(); it != j_.end(); ++it)
      if (!seen_.count(it.key())) throw SchemaError(path_ + "/" + it.key(), "unknown field");
  }

  Reader child(const std::string& key) {
    seen_.insert(key);
    static const json empty = json::object();
    const auto it = j_.find(key);
    return Reader(it == j_.end() ? empty : *it, path_ + "/" + key);
  }

  void number(const std::string& key, double& out) {
    seen_.insert(key);
    const auto it = j_.find(key);
    if (it == j_.end()) return;
    if (!it->is_number()) throw SchemaError(path_ + "/" + key, "expected a number");
    out = it->get<double>();
    if (!std::isfinite(out)) throw UnitError(path_ + "/" + key, "must be finite");
  }

  void integer(const std::string& key, int& out) {
    seen_.insert(key);
    const auto it = j_.find(key);
    if (it == j_.end()) return;
    if (!it->is_number_integer()) throw SchemaError(path_ + "/" + key, "expected an integer");
    out = it->get<int>();
  }

  void string(const std::string& key, std::string& out) {
    seen_.insert(key);
    const auto it = j_.find(key);
    if (it == j_.end()) return;
    if (!it->is_string()) throw SchemaError(path_ + "/" + key, "expected a string");
    out = it->get<std::string>();
  }

  std::string path(const std::string& key) const { return path_ + "/" + key; }

 private:
  const json& j_;
  std::string path_;
  std::set<std::string> seen_;
};

void require(bool ok, const std::string& path, const std::string& what) {
  if (!ok) throw UnitError(path, what);
}

}  // namespace

ExperimentConfig from_json(const json& j) {
  ExperimentConfig c;
  Reader root(j, "");

  int version = kSchemaVersion;
  root.integer("schema_version", version);
  if (version != kSchemaVersion)
    throw SchemaError("/schema_version", "unsupported version " + std::to_string(version));

  {
    Reader r = root.child("snail");
    r.integer("n", c.snail.n);
    r.number("alpha", c.snail.alpha);
    r.number("l_j_ph", c.snail.l_j_ph);
    r.number("flux_quanta", c.snail.flux_quanta);
    r.finish();
    require(c.snail.n >= 1, r.path("n"), "must be >= 1");
    require(c.snail.alpha > 0.0 && c.snail.alpha <= 1.0, r.path("alpha"), "must lie in (0, 1]");
    require(c.snail.l_j_ph > 0.0, r.path("l_j_ph"), "must be positive (pH)");
  }
  {
    Reader r = root.child("resonator");
    r.number("f0_ghz", c.resonator.f0_ghz);
    r.number("z_c_ohm", c.resonator.z_c_ohm);
    r.integer("m_snails", c.resonator.m_snails);
    r.finish();
    require(c.resonator.f0_ghz > 0.0, r.path("f0_ghz"), "must be positive (GHz)");
    require(c.resonator.z_c_ohm > 0.0, r.path("z_c_ohm"), "must be positive (ohm)");
    require(c.resonator.m_snails >= 1, r.path("m_snails"), "must be >= 1");
  }
  {
    Reader drives = root.child("drives");
    Reader s = drives.child("squeeze");
    s.number("xi_bar", c.squeeze.xi_bar);
    s.number("t_sq_ns", c.squeeze.t_sq_ns);
    s.finish();
    require(std::abs(c.squeeze.xi_bar) < 1.0, s.path("xi_bar"), "|xi_bar| must be < 1");
    require(c.squeeze.t_sq_ns >= 0.0, s.path("t_sq_ns"), "must be >= 0 (ns)");
    Reader k = drives.child("cubic");
    k.number("lambda", c.cubic.lambda);
    k.number("t_g_ns", c.cubic.t_g_ns);
    k.finish();
    require(c.cubic.lambda >= 0.0 && c.cubic.lambda < 1.0, k.path("lambda"), "must lie in [0, 1)");
    require(c.cubic.t_g_ns >= 0.0, k.path("t_g_ns"), "must be >= 0 (ns)");
    drives.finish();
  }
  {
    Reader r = root.child("loss");
    r.number("kappa_khz", c.kappa_khz);
    r.finish();
    require(c.kappa_khz >= 0.0, r.path("kappa_khz"), "must be >= 0 (kHz)");
  }
  {
    Reader r = root.child("sim");
    r.integer("dim", c.sim.dim);
    r.number("rtol", c.sim.rtol);
    r.number("atol", c.sim.atol);
    r.number("sample_ns", c.sim.sample_ns);
    r.string("ac_expansion", c.sim.ac_expansion);
    r.finish();
    require(c.sim.dim >= 4 && c.sim.dim <= 400, r.path("dim"), "must lie in [4, 400]");
    require(c.sim.rtol > 0.0, r.path("rtol"), "must be positive");
    require(c.sim.atol > 0.0, r.path("atol"), "must be positive");
    require(c.sim.sample_ns > 0.0, r.path("sample_ns"), "must be positive (ns)");
    if (c.sim.ac_expansion != "full" && c.sim.ac_expansion != "resonant_only")
      throw SchemaError(r.path("ac_expansion"), "expected \"full\" or \"resonant_only\"");
  }
  {
    Reader r = root.child("wigner");
    r.number("q_min", c.wigner.q_min);
    r.number("q_max", c.wigner.q_max);
    r.number("p_min", c.wigner.p_min);
    r.number("p_max", c.wigner.p_max);
    r.integer("nq", c.wigner.nq);
    r.integer("np", c.wigner.np);
    r.finish();
    require(c.wigner.q_max > c.wigner.q_min, r.path("q_max"), "must exceed q_min");
    require(c.wigner.p_max > c.wigner.p_min, r.path("p_max"), "must exceed p_min");
    require(c.wigner.nq >= 2, r.path("nq"), "must be >= 2");
    require(c.wigner.np >= 2, r.path("np"), "must be >= 2");
  }
  {
    Reader r = root.child("outputs");
    r.string("dir", c.output_dir);
    r.finish();
  }
  root.finish();
  return c;
}

ExperimentConfig parse_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw SchemaError(path, "cannot open config file");
  json j;
  try {
    in >> j;
  } catch (const json::parse_error& e) {
    throw SchemaError(path, std::string("invalid JSON: ") + e.what());
  }
  return from_json(j);
}

}  // namespace snailcv::config
