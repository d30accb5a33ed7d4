#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iterator>
#include <sstream>
#include <string>

#include <gtest/gtest.h>

#include "lambdaloc/commands.hpp"

using namespace lambdaloc;
namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string& name) {
  const fs::path p = fs::temp_directory_path() / ("lambdaloc_test_" + name);
  fs::remove_all(p);
  return p;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

// Every regular file under `a` exists under `b` with identical bytes.
void expect_same_tree(const fs::path& a, const fs::path& b) {
  std::size_t n = 0;
  for (const auto& e : fs::directory_iterator(a)) {
    ++n;
    const fs::path other = b / e.path().filename();
    ASSERT_TRUE(fs::exists(other)) << other;
    EXPECT_EQ(slurp(e.path()), slurp(other)) << e.path().filename();
  }
  EXPECT_GT(n, 0u);
}

RunConfig small(const std::string& preset, const std::string& extra) {
  RunConfig cfg = make_preset(preset);
  apply_ini_text(cfg, extra, "test");
  cfg.threads = 1;
  return cfg;
}

int run_cli(const std::string& args) {
  const std::string cmd = std::string("\"") + LAMBDALOC_CLI_PATH + "\" " + args + " >/dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

}  // namespace

TEST(Config, DefaultsAreValid) {
  RunConfig cfg;
  EXPECT_NO_THROW(cfg.validate());
  EXPECT_NEAR(cfg.beams.omega_p0, two_pi * 3e6, 1e-6);
}

TEST(Config, PiExpressions) {
  using detail::parse_value;
  EXPECT_DOUBLE_EQ(parse_value("pi", "k"), pi);
  EXPECT_DOUBLE_EQ(parse_value("-pi/4", "k"), -pi / 4);
  EXPECT_DOUBLE_EQ(parse_value(" 0.5*pi ", "k"), 0.5 * pi);
  EXPECT_DOUBLE_EQ(parse_value("2.5", "k"), 2.5);
  EXPECT_THROW(parse_value("abc", "k"), ConfigError);
  EXPECT_THROW(parse_value("1.5x", "k"), ConfigError);
}

TEST(Config, IniOverridesAndUnits) {
  RunConfig cfg;
  apply_ini_text(cfg,
                 "[beams]\nomega_p0_mhz = 4.5\nwidth_um = 7\ntheta_c1 = pi/4\n"
                 "[atom]\ntemperature_uk = 5\n[run]\nseed = 42\n",
                 "test");
  EXPECT_NEAR(cfg.beams.omega_p0, from_mhz(4.5), 1e-9);
  EXPECT_NEAR(cfg.beams.width, 7e-6, 1e-18);
  EXPECT_NEAR(cfg.beams.theta_c1, pi / 4, 1e-15);
  EXPECT_NEAR(cfg.atom.temperature, 5e-6, 1e-18);
  EXPECT_EQ(cfg.seed, 42u);
  EXPECT_EQ(cfg.noise.seed, 42u);
}

TEST(Config, UnknownKeysRejected) {
  RunConfig cfg;
  EXPECT_THROW(apply_ini_text(cfg, "[beams]\nomega_p_mhz = 3\n"), ConfigError);
  EXPECT_THROW(apply_ini_text(cfg, "[beam]\nwidth_um = 3\n"), ConfigError);
  EXPECT_THROW(apply_ini_text(cfg, "[beams]\nwidth_um = three\n"), ConfigError);
  EXPECT_THROW(make_preset("fig9"), ConfigError);
}

TEST(Config, IniRoundTripPreservesValues) {
  for (const auto& name : preset_names()) {
    RunConfig a = make_preset(name);
    apply_ini_text(a, "[beams]\nomega_c20_mhz = 33.3\n[atom]\ntemperature_uk = 2.7\n[run]\nseed = 7\n");
    RunConfig b;
    b.preset = a.preset;
    apply_ini_text(b, to_ini(a), "roundtrip");
    EXPECT_EQ(to_ini(a), to_ini(b)) << name;
    auto rel = [](double x, double y) { return x == y ? 0.0 : std::abs(x - y) / std::abs(x); };
    EXPECT_LT(rel(a.beams.omega_p0, b.beams.omega_p0), 1e-12);
    EXPECT_LT(rel(a.beams.omega_c20, b.beams.omega_c20), 1e-12);
    EXPECT_LT(rel(a.beams.width, b.beams.width), 1e-12);
    EXPECT_LT(rel(a.atom.gamma31, b.atom.gamma31), 1e-12);
    EXPECT_LT(rel(a.atom.gamma21, b.atom.gamma21), 1e-12);
    EXPECT_LT(rel(a.atom.temperature, b.atom.temperature), 1e-12);
    EXPECT_LT(rel(a.atom.mass, b.atom.mass), 1e-12);
    EXPECT_EQ(a.seed, b.seed);
    EXPECT_LT(std::abs(to_mhz(b.beams.omega_c20) - 33.3), 33.3 * 1e-12);
  }
}

TEST(Config, PresetsLoadAndValidate) {
  const auto names = preset_names();
  for (const char* expected : {"default", "fig2", "fig3-resolution", "fig3-noise", "fig4", "fig5"})
    EXPECT_NE(std::find(names.begin(), names.end(), expected), names.end()) << expected;
  for (const auto& n : names) EXPECT_NO_THROW(make_preset(n).validate()) << n;
  const RunConfig f2 = make_preset("fig2");
  EXPECT_EQ(f2.map.kappa_c.size(), 4u);
  EXPECT_EQ(f2.grid.nx, 400u);
  EXPECT_EQ(make_preset("fig5").noise.spread, VelocitySpread::per_axis_vp);
}

TEST(Config, InvalidValuesRejected) {
  EXPECT_THROW(small("fig3-resolution", "[radial]\nkappa_p = 0.01, 0\n").validate(), ConfigError);
  EXPECT_THROW(small("fig2", "[grid]\nnx = 16\nny = 16\n").validate(), ConfigError);
  EXPECT_NO_THROW(small("fig2", "[grid]\nnx = 32\nny = 32\n").validate());
  EXPECT_THROW(small("default", "[noise]\nn_samples = 0\n").validate(), ConfigError);
  EXPECT_THROW(small("default", "[map]\nkappa_c = 0.1, 0.5\ntheta_c1 = pi\n").validate(), ConfigError);
}

TEST(Commands, MapSummaryAndDeterminism) {
  const RunConfig cfg = small("fig2", "[grid]\nnx = 64\nny = 64\nhalf_width_um = 4\n");
  const fs::path a = scratch("map_a"), b = scratch("map_b");
  const json s = cmd_map(cfg, a);
  cmd_map(cfg, b);
  expect_same_tree(a, b);
  ASSERT_EQ(s["cases"].size(), 4u);
  for (const auto& c : s["cases"]) EXPECT_TRUE(c["within_one_cell"].get<bool>());
  const std::string csv = slurp(a / "map_A.csv");
  EXPECT_EQ(csv.rfind("x_um,y_um,rho22\n", 0), 0u);
  EXPECT_EQ(csv.find('\r'), std::string::npos);
  EXPECT_TRUE(fs::exists(a / "map_config.ini"));
  EXPECT_NE(slurp(a / "map_summary.json").find("config_ini"), std::string::npos);
}

TEST(Commands, RadialWidths) {
  const RunConfig cfg = small("fig3-resolution", "[radial]\npoints = 401\n");
  const json s = cmd_radial(cfg, scratch("radial"));
  ASSERT_EQ(s["profiles"].size(), 3u);
  for (const auto& p : s["profiles"]) {
    const double want = p["predicted_fwhm_nm"].get<double>();
    EXPECT_NEAR(p["fwhm_numeric_nm"].get<double>(), want, 0.01 * want);
    EXPECT_LT(p["max_abs_deviation"].get<double>(), 1e-4);
  }
}

TEST(Commands, NoiseDeterminismAndDegenerateFlag) {
  const RunConfig cfg =
      small("fig3-noise", "[noise]\nn_samples = 20\n[intensity_noise]\npoints = 41\n");
  const fs::path a = scratch("noise_a"), b = scratch("noise_b");
  cmd_noise(cfg, a);
  cmd_noise(cfg, b);
  expect_same_tree(a, b);
  EXPECT_TRUE(fs::exists(a / "noise_xi0.05_rloc3um.csv"));

  const RunConfig one = small("fig3-noise", "[noise]\nn_samples = 1\n[intensity_noise]\npoints = 21\n");
  const json s = cmd_noise(one, scratch("noise_one"));
  EXPECT_TRUE(s["std_degenerate"].get<bool>());
  for (const auto& p : s["profiles"]) EXPECT_TRUE(p["std_degenerate"].get<bool>());
}

TEST(Commands, FeasibilityAndThermalDeterminism) {
  const RunConfig f = small("fig4", "[feasibility]\npoints = 7\nomega_p0_mhz = 4.5\n"
                                    "best_resolution_omega_c10_mhz = 150\n");
  const fs::path a = scratch("feas_a"), b = scratch("feas_b");
  cmd_feasibility(f, a);
  cmd_feasibility(f, b);
  expect_same_tree(a, b);

  const RunConfig t = small("fig5", "[noise]\nn_samples = 20\n"
                                    "[thermal]\ntemperature_uk = 5\nt_meas_us = 5\nmode = both\n"
                                    "ray_points = 101\nmap_n = 32\n");
  const fs::path c = scratch("th_a"), d = scratch("th_b");
  cmd_thermal(t, c);
  cmd_thermal(t, d);
  expect_same_tree(c, d);
}

TEST(Cli, ExitCodes) {
  const fs::path out = scratch("cli");
  fs::create_directories(out);
  EXPECT_EQ(run_cli("presets"), 0);
  EXPECT_EQ(run_cli("presets --preset fig4"), 0);

  const fs::path ok = out / "ok.ini";
  write_text(ok, "[radial]\nkappa_p = 0.01\npoints = 101\n");
  EXPECT_EQ(run_cli("radial --config \"" + ok.string() + "\" --out \"" + (out / "r").string() + "\""), 0);
  EXPECT_TRUE(fs::exists(out / "r" / "radial_summary.json"));

  const fs::path coarse = out / "coarse.ini";
  write_text(coarse, "[grid]\nnx = 16\nny = 16\n");
  EXPECT_EQ(run_cli("map --config \"" + coarse.string() + "\" --out \"" + (out / "m").string() + "\""), 2);
  EXPECT_EQ(run_cli("map --preset nope --out \"" + (out / "m").string() + "\""), 2);

  const fs::path zero_kp = out / "kp0.ini";
  write_text(zero_kp, "[radial]\nkappa_p = 0\n");
  EXPECT_EQ(run_cli("radial --config \"" + zero_kp.string() + "\" --out \"" + (out / "k").string() + "\""), 2);

  const fs::path singular = out / "singular.ini";
  write_text(singular,
             "[beams]\nomega_p0_mhz = 0\n[atom]\ngamma21_mhz = 0\n"
             "[map]\nengine = numeric\nkappa_c = 0\ntheta_c1 = pi\nkappa_p = 0\n"
             "[grid]\nnx = 33\nny = 33\nhalf_width_um = 1\n");
  EXPECT_EQ(run_cli("map --preset default --config \"" + singular.string() + "\" --out \"" +
                    (out / "s").string() + "\""),
            3);

  const fs::path short_horizon = out / "horizon.ini";
  write_text(short_horizon,
             "[feasibility]\nomega_p0_mhz = 3\npoints = 3\nhorizon_ms = 1e-5\n"
             "best_resolution_omega_c10_mhz = 150\n");
  EXPECT_EQ(run_cli("feasibility --config \"" + short_horizon.string() + "\" --out \"" +
                    (out / "f").string() + "\""),
            4);
}

TEST(Cli, SeedFlagAndEnvironmentOverride) {
  const fs::path out = scratch("cli_seed");
  fs::create_directories(out);
  const fs::path cfg = out / "n.ini";
  write_text(cfg, "[noise]\nn_samples = 5\n[intensity_noise]\nxi = 0.05\nr_loc_um = 1\npoints = 21\n");
  const std::string base = "noise --config \"" + cfg.string() + "\" --threads 1 --out ";
  ASSERT_EQ(run_cli(base + "\"" + (out / "a").string() + "\" --seed 3"), 0);
  ASSERT_EQ(run_cli(base + "\"" + (out / "b").string() + "\" --seed 3"), 0);
  ASSERT_EQ(run_cli(base + "\"" + (out / "c").string() + "\" --seed 4"), 0);
  expect_same_tree(out / "a", out / "b");
  EXPECT_NE(slurp(out / "a" / "noise_xi0.05_rloc1um.csv"), slurp(out / "c" / "noise_xi0.05_rloc1um.csv"));
  const std::string env = "LAMBDALOC_SEED=3 \"" + std::string(LAMBDALOC_CLI_PATH) + "\" noise --config \"" +
                          cfg.string() + "\" --threads 1 --out \"" + (out / "e").string() +
                          "\" >/dev/null 2>&1";
  ASSERT_EQ(std::system(env.c_str()), 0);
  expect_same_tree(out / "a", out / "e");
}
