#pragma once

// Drivers behind the command-line subcommands. Each writes its data files
// into `out_dir` together with a `<command>_config.ini` holding the resolved
// configuration and a `<command>_summary.json`, and returns the summary.

#include <cmath>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

#include "lambdaloc/config.hpp"
#include "lambdaloc/feasibility.hpp"
#include "lambdaloc/io.hpp"
#include "lambdaloc/localization.hpp"
#include "lambdaloc/noise.hpp"

namespace lambdaloc {

using json = nlohmann::ordered_json;

namespace detail {

inline json optional_nm(const std::optional<double>& v) {
  return v ? json(*v * 1e9) : json(nullptr);
}

inline json summary_header(const RunConfig& cfg, const char* command) {
  json j;
  j["command"] = command;
  j["preset"] = cfg.preset;
  j["seed"] = cfg.seed;
  j["config_ini"] = to_ini(cfg);
  return j;
}

inline void finish(const std::filesystem::path& out_dir, const char* command, const RunConfig& cfg,
                   const json& summary) {
  write_text(out_dir / (std::string(command) + "_config.ini"), to_ini(cfg));
  write_text(out_dir / (std::string(command) + "_summary.json"), summary.dump(2) + "\n");
}

inline std::string case_label(std::size_t i) {
  return i < 26 ? std::string(1, static_cast<char>('A' + i)) : std::to_string(i);
}

inline void prepare(const RunConfig& cfg, const std::filesystem::path& out_dir) {
  cfg.validate();
  std::filesystem::create_directories(out_dir);
}

}  // namespace detail

/// Off-axis maps: one rho22 map per (kappa_c, theta_c1) case.
inline json cmd_map(const RunConfig& cfg, const std::filesystem::path& out_dir) {
  detail::prepare(cfg, out_dir);
  std::vector<BeamSet> cases;
  if (cfg.map.kappa_c.empty()) {
    cases.push_back(cfg.beams);
  } else {
    for (std::size_t i = 0; i < cfg.map.kappa_c.size(); ++i) {
      BeamSet b = cfg.beams;
      b.omega_c20 = cfg.map.kappa_c[i] * b.omega_c10;
      b.theta_c1 = cfg.map.theta_c1[i];
      if (cfg.map.kappa_p > 0.0) b.omega_p0 = cfg.map.kappa_p * b.omega_c10;
      cases.push_back(b);
    }
  }

  json summary = detail::summary_header(cfg, "map");
  summary["engine"] = to_string(cfg.map.engine);
  json list = json::array();
  for (std::size_t c = 0; c < cases.size(); ++c) {
    const BeamSet& b = cases[c];
    b.validate();
    const GridSpec grid = cfg.grid_for(b);
    const Map2D map = compute_map(b, cfg.atom, grid, cfg.map.engine, cfg.threads);
    const std::string label = detail::case_label(c);
    const std::string file = "map_" + label + ".csv";
    {
      CsvWriter csv(out_dir / file, {"x_um", "y_um", "rho22"});
      for (std::size_t j = 0; j < grid.ny; ++j)
        for (std::size_t i = 0; i < grid.nx; ++i)
          csv.row({to_um(grid.x(i)), to_um(grid.y(j)), map.at(i, j)});
    }

    const auto peak = map.argmax();
    json e;
    e["label"] = label;
    e["file"] = file;
    e["kappa_c"] = b.kappa_c();
    e["kappa_p"] = b.kappa_p();
    e["theta_c1"] = b.theta_c1;
    if (b.winding == 1) {
      const LocalizationPoint pred = predicted_position(b);
      const Point2D pc = pred.cartesian();
      e["predicted"] = {{"r_um", to_um(pred.r)},
                        {"theta", pred.theta},
                        {"x_um", to_um(pc.x)},
                        {"y_um", to_um(pc.y)}};
      e["within_one_cell"] = std::abs(peak.point.x - pc.x) <= grid.dx() * (1 + 1e-9) &&
                             std::abs(peak.point.y - pc.y) <= grid.dy() * (1 + 1e-9);
      std::optional<double> fwhm;
      if (b.kappa_p() > 0.0) {
        const double ar = predicted_fwhm(b);
        fwhm = radial_profile(b, cfg.atom, radii_around(pred.r, 10.0 * ar, 801), cfg.map.engine,
                              std::nullopt, cfg.threads)
                   .fwhm;
        e["predicted_fwhm_nm"] = ar * 1e9;
      }
      e["fwhm_nm"] = detail::optional_nm(fwhm);
    }
    e["observed"] = {{"x_um", to_um(peak.point.x)},
                     {"y_um", to_um(peak.point.y)},
                     {"r_um", to_um(peak.point.r())},
                     {"theta", peak.point.theta()}};
    e["peak_value"] = peak.value;
    e["cell_um"] = {to_um(grid.dx()), to_um(grid.dy())};
    list.push_back(e);
  }
  summary["cases"] = list;
  detail::finish(out_dir, "map", cfg, summary);
  return summary;
}

/// Radial profiles through the localization point for each kappa_p, with the
/// closed form, the full steady-state solve and the Lorentzian side by side.
inline json cmd_radial(const RunConfig& cfg, const std::filesystem::path& out_dir) {
  detail::prepare(cfg, out_dir);
  json summary = detail::summary_header(cfg, "radial");
  json list = json::array();
  for (double kp : cfg.radial.kappa_p) {
    const BeamSet b = BeamSet::from_ratios(cfg.beams.omega_c10, cfg.radial.kappa_c, kp,
                                           cfg.beams.width, cfg.beams.theta_c1, cfg.beams.winding);
    b.validate();
    const double ar = predicted_fwhm(b);
    const double r_loc = predicted_position(b).r;
    const auto radii = radii_around(r_loc, cfg.radial.span_fwhm * ar, cfg.radial.points);
    const RadialProfile an = radial_profile(b, cfg.atom, radii, Engine::analytic);
    const RadialProfile nu =
        radial_profile(b, cfg.atom, radii, Engine::numeric, std::nullopt, cfg.threads);

    const std::string file = "radial_kp" + format_label(kp) + ".csv";
    double max_dev = 0.0;
    {
      CsvWriter csv(out_dir / file, {"r_um", "rho22_analytic", "rho22_numeric", "rho22_lorentz"});
      for (std::size_t i = 0; i < radii.size(); ++i) {
        csv.row({to_um(radii[i]), an.values[i], nu.values[i], lorentz_profile(b, radii[i])});
        max_dev = std::max(max_dev, std::abs(an.values[i] - nu.values[i]));
      }
    }
    json e;
    e["kappa_p"] = kp;
    e["file"] = file;
    e["predicted_fwhm_nm"] = ar * 1e9;
    e["fwhm_analytic_nm"] = detail::optional_nm(an.fwhm);
    e["fwhm_numeric_nm"] = detail::optional_nm(nu.fwhm);
    e["peak_analytic"] = an.peak_value;
    e["peak_numeric"] = nu.peak_value;
    e["max_abs_deviation"] = max_dev;
    list.push_back(e);
  }
  summary["profiles"] = list;
  detail::finish(out_dir, "radial", cfg, summary);
  return summary;
}

/// Intensity-noise ensembles for every (xi, r_loc) pair.
inline json cmd_noise(const RunConfig& cfg, const std::filesystem::path& out_dir) {
  detail::prepare(cfg, out_dir);
  json summary = detail::summary_header(cfg, "noise");
  summary["n_samples"] = cfg.noise.n_samples;
  summary["std_degenerate"] = cfg.noise.n_samples < 2;
  json list = json::array();
  for (double r_loc : cfg.intensity_noise.r_loc) {
    const BeamSet b = beams_for_radius(cfg.beams, r_loc);
    b.validate();
    const auto radii = radii_around(r_loc, cfg.intensity_noise.half_span, cfg.intensity_noise.points);
    const RadialProfile clean =
        radial_profile(b, cfg.atom, radii, Engine::numeric, std::nullopt, cfg.threads);
    for (double xi : cfg.intensity_noise.xi) {
      NoiseConfig nc = cfg.noise;
      nc.xi = xi;
      nc.seed = cfg.seed;
      const RadialEnsemble ens = intensity_noise_profile(b, cfg.atom, nc, radii, cfg.threads);
      const std::string file =
          "noise_xi" + format_label(xi) + "_rloc" + format_label(to_um(r_loc)) + "um.csv";
      {
        CsvWriter csv(out_dir / file, {"r_um", "rho22_mean", "rho22_std", "n"});
        for (std::size_t i = 0; i < radii.size(); ++i)
          csv.row({to_um(radii[i]), ens.stats.mean[i], ens.stats.stddev[i],
                   static_cast<double>(ens.stats.n_samples)});
      }
      json e;
      e["xi"] = xi;
      e["r_loc_um"] = to_um(r_loc);
      e["file"] = file;
      e["mean_peak"] = ens.stats.peak_value;
      e["fwhm_nm"] = detail::optional_nm(ens.stats.fwhm);
      e["noiseless_peak"] = clean.peak_value;
      e["noiseless_fwhm_nm"] = detail::optional_nm(clean.fwhm);
      e["std_degenerate"] = ens.stats.degenerate();
      list.push_back(e);
    }
  }
  summary["profiles"] = list;
  detail::finish(out_dir, "noise", cfg, summary);
  return summary;
}

inline json to_json(const FeasibilityReport& r) {
  json j;
  j["units"] = {{"r_loc", "m"}, {"T_s", "s"}, {"T_s_max", "s"}, {"localizable_radius", "m"},
                {"a_r", "m"}, {"v_p", "m/s"}};
  j["r_loc"] = r.r_loc;
  j["T_s"] = r.t_s;
  j["T_s_max"] = r.t_s_max;
  j["localizable_radius"] = r.localizable_radius ? json(*r.localizable_radius) : json(nullptr);
  j["a_r"] = r.a_r;
  j["v_p"] = r.v_p;
  return j;
}

/// Steady-time scans against the motion budget, plus best on-axis resolution.
inline json cmd_feasibility(const RunConfig& cfg, const std::filesystem::path& out_dir) {
  detail::prepare(cfg, out_dir);
  const auto& f = cfg.feasibility;
  FeasibilityOptions opt;
  opt.safety_factor = f.safety_factor;
  opt.steady.epsilon = f.epsilon;
  opt.steady.horizon = f.horizon;

  std::vector<double> r_grid(f.points);
  for (std::size_t i = 0; i < f.points; ++i)
    r_grid[i] = f.r_min + (f.r_max - f.r_min) * static_cast<double>(i) / double(f.points - 1);

  const std::vector<double> probes = f.omega_p0.empty() ? std::vector<double>{cfg.beams.omega_p0}
                                                        : f.omega_p0;
  json summary = detail::summary_header(cfg, "feasibility");
  json scans = json::array();
  for (double wp : probes) {
    BeamSet base = cfg.beams;
    base.omega_p0 = wp;
    base.validate();
    const FeasibilityReport rep = scan_localizable_radius(base, cfg.atom, r_grid, opt, cfg.threads);
    const std::string stem = "feasibility_op" + format_label(to_mhz(wp)) + "mhz";
    write_text(out_dir / (stem + ".json"), to_json(rep).dump(2) + "\n");
    {
      CsvWriter csv(out_dir / (stem + ".csv"), {"r_loc_um", "T_s_us", "T_s_max_us"});
      for (std::size_t i = 0; i < rep.r_loc.size(); ++i)
        csv.row({to_um(rep.r_loc[i]), rep.t_s[i] * 1e6, rep.t_s_max * 1e6});
    }
    json e;
    e["omega_p0_mhz"] = to_mhz(wp);
    e["files"] = {stem + ".json", stem + ".csv"};
    e["a_r_nm"] = rep.a_r * 1e9;
    e["T_s_max_us"] = rep.t_s_max * 1e6;
    e["localizable_radius_um"] =
        rep.localizable_radius ? json(to_um(*rep.localizable_radius)) : json(nullptr);
    scans.push_back(e);
  }
  summary["scans"] = scans;

  json best = json::array();
  for (double wc : f.best_resolution_omega_c10) {
    BeamSet base = cfg.beams;
    base.omega_c10 = wc;
    best.push_back({{"omega_c10_mhz", to_mhz(wc)},
                    {"best_a_r_nm", best_resolution(base, cfg.atom, opt) * 1e9}});
  }
  summary["best_resolution"] = best;
  detail::finish(out_dir, "feasibility", cfg, summary);
  return summary;
}

/// Thermal-motion ensembles for every (t_meas, T) pair.
inline json cmd_thermal(const RunConfig& cfg, const std::filesystem::path& out_dir) {
  detail::prepare(cfg, out_dir);
  const auto& t = cfg.thermal;
  BeamSet b = cfg.beams;
  b.omega_c20 = t.kappa_c * b.omega_c10;
  b.validate();
  const LocalizationPoint pred = predicted_position(b);

  json summary = detail::summary_header(cfg, "thermal");
  summary["velocity_spread"] = to_string(cfg.noise.spread);
  summary["predicted_fwhm_nm"] = predicted_fwhm(b) * 1e9;
  json list = json::array();
  for (double tm : t.t_meas) {
    for (double temp : t.temperature) {
      AtomSpecies atom = cfg.atom;
      atom.temperature = temp;
      NoiseConfig nc = cfg.noise;
      nc.t_meas = tm;
      nc.seed = cfg.seed;
      const std::string stem =
          "thermal_T" + format_label(temp * 1e6) + "uK_tm" + format_label(tm * 1e6) + "us";
      json e;
      e["temperature_uk"] = temp * 1e6;
      e["t_meas_us"] = tm * 1e6;
      e["v_p_cm_s"] = most_probable_speed(atom) * 100.0;
      if (t.mode != ThermalMode::map) {
        const RadialEnsemble ens = thermal_motion_profile(
            b, atom, nc, radii_around(pred.r, t.ray_half_span, t.ray_points), cfg.threads);
        CsvWriter csv(out_dir / (stem + "_ray.csv"), {"r_um", "rho22_mean", "rho22_std", "n"});
        for (std::size_t i = 0; i < ens.radii.size(); ++i)
          csv.row({to_um(ens.radii[i]), ens.stats.mean[i], ens.stats.stddev[i],
                   static_cast<double>(ens.stats.n_samples)});
        e["ray"] = {{"file", stem + "_ray.csv"},
                    {"peak_value", ens.stats.peak_value},
                    {"fwhm_nm", detail::optional_nm(ens.stats.fwhm)}};
      }
      if (t.mode != ThermalMode::ray) {
        const GridSpec grid = GridSpec::centered(pred.cartesian(), t.map_half_width, t.map_n);
        const MapEnsemble ens = thermal_motion_map(b, atom, nc, grid, cfg.threads);
        CsvWriter csv(out_dir / (stem + "_map.csv"),
                      {"x_um", "y_um", "rho22_mean", "rho22_std", "n"});
        for (std::size_t j = 0; j < grid.ny; ++j)
          for (std::size_t i = 0; i < grid.nx; ++i) {
            const std::size_t k = j * grid.nx + i;
            csv.row({to_um(grid.x(i)), to_um(grid.y(j)), ens.stats.mean[k], ens.stats.stddev[k],
                     static_cast<double>(ens.stats.n_samples)});
          }
        e["map"] = {{"file", stem + "_map.csv"},
                    {"peak_value", ens.stats.peak_value},
                    {"peak_x_um", to_um(ens.peak.point.x)},
                    {"peak_y_um", to_um(ens.peak.point.y)},
                    {"fwhm_nm", detail::optional_nm(ens.stats.fwhm)}};
      }
      list.push_back(e);
    }
  }
  summary["runs"] = list;
  detail::finish(out_dir, "thermal", cfg, summary);
  return summary;
}

}  // namespace lambdaloc
