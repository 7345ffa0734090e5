#include <gtest/gtest.h>

#include <cmath>
#include <filesystem>
#include <fstream>

#include "snailcv/analysis.hpp"
#include "snailcv/config.hpp"
#include "snailcv/constants.hpp"
#include "snailcv/errors.hpp"
#include "snailcv/png_writer.hpp"
#include "snailcv/report.hpp"

using namespace snailcv;
using nlohmann::json;
namespace fs = std::filesystem;

namespace {

fs::path scratch_dir(const std::string& name) {
  const fs::path p = fs::temp_directory_path() / ("snailcv_test_" + name);
  fs::remove_all(p);
  fs::create_directories(p);
  return p;
}

template <typename E>
std::string thrown_path(const json& j) {
  try {
    config::from_json(j);
  } catch (const E& e) {
    return e.field_path();
  }
  return "<no throw>";
}

}  // namespace

TEST(Config, DefaultsAreTheReferenceDevice) {
  const config::ExperimentConfig c;
  EXPECT_EQ(c.snail.n, 3);
  EXPECT_DOUBLE_EQ(c.snail.alpha, 0.1);
  EXPECT_DOUBLE_EQ(c.snail.l_j_ph, 600.0);
  EXPECT_DOUBLE_EQ(c.resonator.f0_ghz, 8.8);
  EXPECT_DOUBLE_EQ(c.resonator.z_c_ohm, 50.0);
  EXPECT_DOUBLE_EQ(c.cubic.lambda, 0.1);
  EXPECT_DOUBLE_EQ(c.kappa_khz, 50.0);
  EXPECT_NEAR(c.l_j(), 600e-12, 1e-24);
  EXPECT_NEAR(c.phi_ext_dc(), 0.3931 * constants::two_pi, 1e-15);
  EXPECT_NEAR(c.lindblad_config().kappa, constants::two_pi * 50e3, 1e-9);
}

TEST(Config, BundledFileMatchesDefaults) {
  const auto c = config::parse_config(SNAILCV_SOURCE_DIR "/config/default.json");
  EXPECT_EQ(c.to_json(), config::ExperimentConfig{}.to_json());
}

TEST(Config, MissingFieldsTakeDefaults) {
  const auto c = config::from_json(json::parse(R"({"snail": {"alpha": 0.2}})"));
  EXPECT_DOUBLE_EQ(c.snail.alpha, 0.2);
  EXPECT_EQ(c.snail.n, 3);
  EXPECT_EQ(c.sim.dim, 80);
  EXPECT_EQ(config::from_json(json::object()).to_json(), config::ExperimentConfig{}.to_json());
}

TEST(Config, RoundTrip) {
  config::ExperimentConfig c;
  c.snail.flux_quanta = 0.41;
  c.sim.dim = 64;
  c.sim.ac_expansion = "resonant_only";
  c.output_dir = "elsewhere";
  const auto back = config::from_json(c.to_json());
  EXPECT_EQ(back.to_json(), c.to_json());
  EXPECT_EQ(back.expansion(), snail::AcExpansion::resonant_only);
}

TEST(Config, UnitErrors) {
  EXPECT_EQ(thrown_path<UnitError>(json::parse(R"({"loss": {"kappa_khz": -1}})")),
            "/loss/kappa_khz");
  EXPECT_EQ(thrown_path<UnitError>(json::parse(R"({"snail": {"l_j_ph": 0}})")), "/snail/l_j_ph");
  EXPECT_EQ(thrown_path<UnitError>(json::parse(R"({"sim": {"dim": 2}})")), "/sim/dim");
  EXPECT_EQ(thrown_path<UnitError>(json::parse(R"({"drives": {"cubic": {"t_g_ns": -3}}})")),
            "/drives/cubic/t_g_ns");
}

TEST(Config, SchemaErrors) {
  EXPECT_EQ(thrown_path<SchemaError>(json::parse(R"({"snail": {"alfa": 0.1}})")), "/snail/alfa");
  EXPECT_EQ(thrown_path<SchemaError>(json::parse(R"({"snail": {"n": "three"}})")), "/snail/n");
  EXPECT_EQ(thrown_path<SchemaError>(json::parse(R"({"snail": {"n": 3.5}})")), "/snail/n");
  EXPECT_EQ(thrown_path<SchemaError>(json::parse(R"({"extra": 1})")), "/extra");
  EXPECT_EQ(thrown_path<SchemaError>(json::parse(R"({"schema_version": 9})")), "/schema_version");
  EXPECT_EQ(thrown_path<SchemaError>(json::parse(R"({"sim": {"ac_expansion": "half"}})")),
            "/sim/ac_expansion");
  EXPECT_EQ(thrown_path<SchemaError>(json::parse(R"([1, 2])")), "/");
}

TEST(Config, FileErrors) {
  EXPECT_THROW(config::parse_config("/nonexistent/cfg.json"), SchemaError);
  const fs::path dir = scratch_dir("badjson");
  std::ofstream(dir / "bad.json") << "{ not json";
  EXPECT_THROW(config::parse_config((dir / "bad.json").string()), SchemaError);
}

TEST(Report, CouplingsReportContent) {
  const auto model = config::ExperimentConfig{}.circuit_model();
  const json j = report::couplings_report(model, 0.1);
  EXPECT_EQ(j["schema_version"], report::kReportSchemaVersion);
  EXPECT_NEAR(j["g_dc"]["3"].get<double>(), -10.64, 0.2);
  EXPECT_NEAR(j["omega_r_ghz"].get<double>(), 4.06, 0.01);
  EXPECT_NEAR(j["g3_eff_mhz"].get<double>(), 0.28, 0.02);
  // Deterministic and re-parseable.
  EXPECT_EQ(j.dump(), report::couplings_report(model, 0.1).dump());
  EXPECT_EQ(json::parse(j.dump()), j);
}

TEST(Report, EigenmodeResidual) {
  const json j = report::eigenmode_report(config::ExperimentConfig{}.circuit_model());
  EXPECT_LT(j["relative_residual"].get<double>(), 1e-10);
  EXPECT_GT(j["eta_factor"].get<double>(), 0.5);
}

TEST(Report, StateBlobRoundTrip) {
  const fs::path dir = scratch_dir("blob");
  const auto s = analysis::ideal_cubic_phase_state(0.1, 0.5, 40, 1e-4);
  report::save_state((dir / "cubic").string(), s, "cubic");
  const auto meta = json::parse(std::ifstream(dir / "cubic.json"));
  EXPECT_EQ(meta["dim"], 40);
  EXPECT_EQ(meta["name"], "cubic");
  EXPECT_EQ(fs::file_size(dir / "cubic.bin"), 40u * 40u * 16u);
  const auto back = report::load_state((dir / "cubic.json").string());
  EXPECT_LT((back.density() - s.density()).cwiseAbs().maxCoeff(), 1e-16);
  fs::resize_file(dir / "cubic.bin", 100);
  EXPECT_THROW(report::load_state((dir / "cubic.json").string()), std::runtime_error);
}

TEST(Report, HeatmapPng) {
  const fs::path dir = scratch_dir("png");
  analysis::GridSpec g;
  g.nq = 31;
  g.np = 21;
  const auto w = analysis::wigner(fock::QuantumState::fock(10, 1), g);
  plot::write_heatmap_png((dir / "w.png").string(), w);
  std::ifstream in(dir / "w.png", std::ios::binary);
  unsigned char sig[8] = {};
  in.read(reinterpret_cast<char*>(sig), 8);
  const unsigned char expected[8] = {0x89, 'P', 'N', 'G', '\r', '\n', 0x1a, '\n'};
  EXPECT_TRUE(std::equal(sig, sig + 8, expected));
  EXPECT_THROW(plot::write_heatmap_png("/nonexistent/dir/w.png", w), std::runtime_error);
}
