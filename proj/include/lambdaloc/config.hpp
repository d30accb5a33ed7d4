#pragma once

// Run configuration: INI-style documents, built-in presets, and the
// conversion between file units (f/2pi in MHz, um, uK, us) and SI.
//
//   [beams]   omega_p0_mhz omega_c10_mhz omega_c20_mhz width_um winding theta_c1
//   [atom]    gamma31_mhz gamma32_mhz gamma21_mhz mass_amu temperature_uk
//   [noise]   n_samples velocity_spread
//   [grid]    nx ny half_width_um center
//   [map]     engine kappa_c theta_c1 kappa_p
//   [radial]  kappa_p kappa_c points span_fwhm
//   [intensity_noise] xi r_loc_um points half_span_um
//   [feasibility] omega_p0_mhz r_min_um r_max_um points epsilon safety_factor
//                 horizon_ms best_resolution_omega_c10_mhz
//   [thermal] temperature_uk t_meas_us mode kappa_c ray_points ray_half_span_um
//             map_n map_half_width_um
//   [run]     seed threads
//
// Lists are comma separated. Angles accept numbers or multiples of pi
// ("pi", "-pi/4", "0.5*pi").

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>

#include "lambdaloc/bloch.hpp"
#include "lambdaloc/errors.hpp"
#include "lambdaloc/fields.hpp"
#include "lambdaloc/localization.hpp"
#include "lambdaloc/noise.hpp"
#include "lambdaloc/units.hpp"

namespace lambdaloc {

enum class GridCenter { origin, prediction };
enum class ThermalMode { ray, map, both };

struct MapStudy {
  Engine engine = Engine::numeric;
  std::vector<double> kappa_c;   // empty: use [beams] as given
  std::vector<double> theta_c1;  // paired with kappa_c
  double kappa_p = 0.0;          // 0: keep omega_p0 from [beams]
};

struct RadialStudy {
  std::vector<double> kappa_p{0.01, 0.005, 0.002};
  double kappa_c = 0.5;
  std::size_t points = 801;
  double span_fwhm = 10.0;  // half-span of the sampled window in units of a_r
};

struct IntensityNoiseStudy {
  std::vector<double> xi{0.01, 0.05};
  std::vector<double> r_loc{1e-6, 3e-6};  // m
  std::size_t points = 401;
  double half_span = 1.0e-6;  // m
};

struct FeasibilityStudy {
  std::vector<double> omega_p0;  // rad/s; empty: [beams] omega_p0
  double r_min = 0.0;
  double r_max = 6e-6;
  std::size_t points = 60;
  double epsilon = 0.01;
  double safety_factor = 10.0;
  double horizon = 10e-3;  // s
  std::vector<double> best_resolution_omega_c10;  // rad/s
};

struct ThermalStudy {
  std::vector<double> temperature{0.0, 1e-6, 5e-6, 10e-6};  // K
  std::vector<double> t_meas{1e-6, 5e-6};                   // s
  ThermalMode mode = ThermalMode::ray;
  double kappa_c = 0.5;
  std::size_t ray_points = 601;
  double ray_half_span = 1.2e-6;  // m
  std::size_t map_n = 64;
  double map_half_width = 0.75e-6;  // m
};

struct RunConfig {
  std::string preset = "default";
  BeamSet beams;
  AtomSpecies atom;
  NoiseConfig noise;
  GridSpec grid;
  double grid_half_width = 7.5e-6;
  GridCenter grid_center = GridCenter::origin;
  MapStudy map;
  RadialStudy radial;
  IntensityNoiseStudy intensity_noise;
  FeasibilityStudy feasibility;
  ThermalStudy thermal;
  std::uint64_t seed = 1;
  unsigned threads = 0;

  RunConfig() {
    beams.omega_p0 = from_mhz(3.0);
    beams.omega_c10 = from_mhz(150.0);
    beams.omega_c20 = from_mhz(75.0);
    beams.width = 5e-6;
    beams.winding = 1;
    beams.theta_c1 = pi;
    atom = AtomSpecies::rb87(1e-6);
  }

  /// Grid for a given beam set, honoring the center mode.
  GridSpec grid_for(const BeamSet& b) const {
    Point2D c{0.0, 0.0};
    if (grid_center == GridCenter::prediction) c = predicted_position(b).cartesian();
    return GridSpec{grid.nx, grid.ny, c.x - grid_half_width, c.x + grid_half_width,
                    c.y - grid_half_width, c.y + grid_half_width};
  }

  void validate() const {
    beams.validate();
    atom.validate();
    noise.validate();
    if (!(grid_half_width > 0.0)) throw ConfigError("grid.half_width_um must be > 0");
    GridSpec g = grid;
    g.x_min = g.y_min = -grid_half_width;
    g.x_max = g.y_max = grid_half_width;
    g.validate();
    if (map.kappa_c.size() != map.theta_c1.size())
      throw ConfigError("map.kappa_c and map.theta_c1 must have the same length");
    for (double k : map.kappa_c)
      if (!(k >= 0.0)) throw ConfigError("map.kappa_c entries must be >= 0");
    if (!(map.kappa_p >= 0.0)) throw ConfigError("map.kappa_p must be >= 0");
    for (double k : radial.kappa_p)
      if (!(k > 0.0)) throw ConfigError("radial.kappa_p entries must be > 0");
    if (!(radial.kappa_c >= 0.0)) throw ConfigError("radial.kappa_c must be >= 0");
    if (radial.points < 3) throw ConfigError("radial.points must be >= 3");
    if (!(radial.span_fwhm > 0.0)) throw ConfigError("radial.span_fwhm must be > 0");
    for (double x : intensity_noise.xi)
      if (!(x >= 0.0 && x < 1.0)) throw ConfigError("intensity_noise.xi entries must lie in [0, 1)");
    for (double r : intensity_noise.r_loc)
      if (!(r >= 0.0)) throw ConfigError("intensity_noise.r_loc_um entries must be >= 0");
    if (intensity_noise.points < 3) throw ConfigError("intensity_noise.points must be >= 3");
    if (!(intensity_noise.half_span > 0.0))
      throw ConfigError("intensity_noise.half_span_um must be > 0");
    for (double w : feasibility.omega_p0)
      if (!(w > 0.0)) throw ConfigError("feasibility.omega_p0_mhz entries must be > 0");
    for (double w : feasibility.best_resolution_omega_c10)
      if (!(w > 0.0))
        throw ConfigError("feasibility.best_resolution_omega_c10_mhz entries must be > 0");
    if (!(feasibility.r_max > feasibility.r_min) || feasibility.r_min < 0.0)
      throw ConfigError("feasibility radius range must satisfy 0 <= r_min < r_max");
    if (feasibility.points < 2) throw ConfigError("feasibility.points must be >= 2");
    if (!(feasibility.epsilon > 0.0 && feasibility.epsilon <= 0.1))
      throw ConfigError("feasibility.epsilon must lie in (0, 0.1]");
    if (!(feasibility.safety_factor > 0.0)) throw ConfigError("feasibility.safety_factor must be > 0");
    if (!(feasibility.horizon > 0.0)) throw ConfigError("feasibility.horizon_ms must be > 0");
    for (double t : thermal.temperature)
      if (!(t >= 0.0)) throw ConfigError("thermal.temperature_uk entries must be >= 0");
    for (double t : thermal.t_meas)
      if (!(t >= 0.0)) throw ConfigError("thermal.t_meas_us entries must be >= 0");
    if (!(thermal.kappa_c >= 0.0)) throw ConfigError("thermal.kappa_c must be >= 0");
    if (thermal.ray_points < 3) throw ConfigError("thermal.ray_points must be >= 3");
    if (thermal.map_n < min_grid_points) throw ConfigError("thermal.map_n must be >= 32");
    if (!(thermal.ray_half_span > 0.0) || !(thermal.map_half_width > 0.0))
      throw ConfigError("thermal window sizes must be > 0");
  }
};

// --- value parsing --------------------------------------------------------

namespace detail {

inline std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

inline double parse_plain(const std::string& s, const std::string& key) {
  const std::string t = trim(s);
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(t, &used);
  } catch (const std::exception&) {
    throw ConfigError(key + ": cannot parse number '" + t + "'");
  }
  if (used != t.size() || !std::isfinite(v))
    throw ConfigError(key + ": cannot parse number '" + t + "'");
  return v;
}

/// Number, or [sign][factor*]pi[/divisor].
inline double parse_value(const std::string& raw, const std::string& key) {
  std::string s = trim(raw);
  const auto at = s.find("pi");
  if (at == std::string::npos) return parse_plain(s, key);
  double sign = 1.0;
  std::string head = trim(s.substr(0, at));
  std::string tail = trim(s.substr(at + 2));
  if (!head.empty() && (head[0] == '-' || head[0] == '+')) {
    sign = head[0] == '-' ? -1.0 : 1.0;
    head = trim(head.substr(1));
  }
  double factor = 1.0;
  if (!head.empty()) {
    if (head.back() != '*') throw ConfigError(key + ": cannot parse angle '" + s + "'");
    factor = parse_plain(head.substr(0, head.size() - 1), key);
  }
  double divisor = 1.0;
  if (!tail.empty()) {
    if (tail[0] != '/') throw ConfigError(key + ": cannot parse angle '" + s + "'");
    divisor = parse_plain(tail.substr(1), key);
    if (divisor == 0.0) throw ConfigError(key + ": division by zero in '" + s + "'");
  }
  return sign * factor * pi / divisor;
}

inline std::vector<double> parse_list(const std::string& raw, const std::string& key) {
  std::vector<double> out;
  const std::string s = trim(raw);
  if (s.empty()) return out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(parse_value(item, key));
  return out;
}

inline std::size_t parse_count(const std::string& raw, const std::string& key) {
  const double v = parse_plain(raw, key);
  if (v < 0.0 || v != std::floor(v) || v > 1e12)
    throw ConfigError(key + ": expected a non-negative integer, got '" + trim(raw) + "'");
  return static_cast<std::size_t>(v);
}

inline std::string fmt17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

inline std::string join(const std::vector<double>& v, double scale = 1.0) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) s += ", ";
    s += fmt17(v[i] * scale);
  }
  return s;
}

inline std::vector<double> scaled(std::vector<double> v, double f) {
  for (double& x : v) x *= f;
  return v;
}

}  // namespace detail

/// Applies the sections of an INI document on top of `cfg`. Unknown
/// sections or keys are rejected.
inline void apply_ini(RunConfig& cfg, std::istream& in, const std::string& origin = "config") {
  namespace pt = boost::property_tree;
  pt::ptree tree;
  try {
    pt::read_ini(in, tree);
  } catch (const pt::ini_parser_error& e) {
    throw ConfigError(origin + ": " + e.what());
  }
  using detail::parse_count;
  using detail::parse_list;
  using detail::parse_value;
  using detail::scaled;

  for (const auto& [section, body] : tree) {
    if (body.data().size() && body.empty())
      throw ConfigError(origin + ": key '" + section + "' outside of a section");
    for (const auto& [key, node] : body) {
      const std::string name = section + "." + key;
      const std::string v = node.data();
      auto unknown = [&] { throw ConfigError(origin + ": unknown key '" + name + "'"); };

      if (section == "beams") {
        if (key == "omega_p0_mhz") cfg.beams.omega_p0 = from_mhz(parse_value(v, name));
        else if (key == "omega_c10_mhz") cfg.beams.omega_c10 = from_mhz(parse_value(v, name));
        else if (key == "omega_c20_mhz") cfg.beams.omega_c20 = from_mhz(parse_value(v, name));
        else if (key == "width_um") cfg.beams.width = from_um(parse_value(v, name));
        else if (key == "winding") cfg.beams.winding = static_cast<int>(parse_count(v, name));
        else if (key == "theta_c1") cfg.beams.theta_c1 = parse_value(v, name);
        else unknown();
      } else if (section == "atom") {
        if (key == "gamma31_mhz") cfg.atom.gamma31 = from_mhz(parse_value(v, name));
        else if (key == "gamma32_mhz") cfg.atom.gamma32 = from_mhz(parse_value(v, name));
        else if (key == "gamma21_mhz") cfg.atom.gamma21 = from_mhz(parse_value(v, name));
        else if (key == "mass_amu") cfg.atom.mass = parse_value(v, name) * atomic_mass_unit;
        else if (key == "temperature_uk") cfg.atom.temperature = parse_value(v, name) * 1e-6;
        else unknown();
      } else if (section == "noise") {
        if (key == "n_samples") cfg.noise.n_samples = parse_count(v, name);
        else if (key == "velocity_spread") {
          const std::string t = detail::trim(v);
          if (t == "maxwell_boltzmann") cfg.noise.spread = VelocitySpread::maxwell_boltzmann;
          else if (t == "per_axis_vp") cfg.noise.spread = VelocitySpread::per_axis_vp;
          else throw ConfigError(name + ": expected maxwell_boltzmann or per_axis_vp");
        } else unknown();
      } else if (section == "grid") {
        if (key == "nx") cfg.grid.nx = parse_count(v, name);
        else if (key == "ny") cfg.grid.ny = parse_count(v, name);
        else if (key == "half_width_um") cfg.grid_half_width = from_um(parse_value(v, name));
        else if (key == "center") {
          const std::string t = detail::trim(v);
          if (t == "origin") cfg.grid_center = GridCenter::origin;
          else if (t == "prediction") cfg.grid_center = GridCenter::prediction;
          else throw ConfigError(name + ": expected origin or prediction");
        } else unknown();
      } else if (section == "map") {
        if (key == "engine") {
          const std::string t = detail::trim(v);
          if (t == "numeric") cfg.map.engine = Engine::numeric;
          else if (t == "analytic") cfg.map.engine = Engine::analytic;
          else throw ConfigError(name + ": expected numeric or analytic");
        } else if (key == "kappa_c") cfg.map.kappa_c = parse_list(v, name);
        else if (key == "theta_c1") cfg.map.theta_c1 = parse_list(v, name);
        else if (key == "kappa_p") cfg.map.kappa_p = parse_value(v, name);
        else unknown();
      } else if (section == "radial") {
        if (key == "kappa_p") cfg.radial.kappa_p = parse_list(v, name);
        else if (key == "kappa_c") cfg.radial.kappa_c = parse_value(v, name);
        else if (key == "points") cfg.radial.points = parse_count(v, name);
        else if (key == "span_fwhm") cfg.radial.span_fwhm = parse_value(v, name);
        else unknown();
      } else if (section == "intensity_noise") {
        if (key == "xi") cfg.intensity_noise.xi = parse_list(v, name);
        else if (key == "r_loc_um") cfg.intensity_noise.r_loc = scaled(parse_list(v, name), 1e-6);
        else if (key == "points") cfg.intensity_noise.points = parse_count(v, name);
        else if (key == "half_span_um") cfg.intensity_noise.half_span = from_um(parse_value(v, name));
        else unknown();
      } else if (section == "feasibility") {
        auto& f = cfg.feasibility;
        if (key == "omega_p0_mhz") f.omega_p0 = scaled(parse_list(v, name), from_mhz(1.0));
        else if (key == "r_min_um") f.r_min = from_um(parse_value(v, name));
        else if (key == "r_max_um") f.r_max = from_um(parse_value(v, name));
        else if (key == "points") f.points = parse_count(v, name);
        else if (key == "epsilon") f.epsilon = parse_value(v, name);
        else if (key == "safety_factor") f.safety_factor = parse_value(v, name);
        else if (key == "horizon_ms") f.horizon = parse_value(v, name) * 1e-3;
        else if (key == "best_resolution_omega_c10_mhz")
          f.best_resolution_omega_c10 = scaled(parse_list(v, name), from_mhz(1.0));
        else unknown();
      } else if (section == "thermal") {
        auto& t = cfg.thermal;
        if (key == "temperature_uk") t.temperature = scaled(parse_list(v, name), 1e-6);
        else if (key == "t_meas_us") t.t_meas = scaled(parse_list(v, name), 1e-6);
        else if (key == "mode") {
          const std::string m = detail::trim(v);
          if (m == "ray") t.mode = ThermalMode::ray;
          else if (m == "map") t.mode = ThermalMode::map;
          else if (m == "both") t.mode = ThermalMode::both;
          else throw ConfigError(name + ": expected ray, map or both");
        } else if (key == "kappa_c") t.kappa_c = parse_value(v, name);
        else if (key == "ray_points") t.ray_points = parse_count(v, name);
        else if (key == "ray_half_span_um") t.ray_half_span = from_um(parse_value(v, name));
        else if (key == "map_n") t.map_n = parse_count(v, name);
        else if (key == "map_half_width_um") t.map_half_width = from_um(parse_value(v, name));
        else unknown();
      } else if (section == "run") {
        if (key == "seed") cfg.seed = parse_count(v, name);
        else if (key == "threads") cfg.threads = static_cast<unsigned>(parse_count(v, name));
        else unknown();
      } else {
        throw ConfigError(origin + ": unknown section '[" + section + "]'");
      }
    }
  }
  cfg.noise.seed = cfg.seed;
}

inline void apply_ini_text(RunConfig& cfg, const std::string& text,
                           const std::string& origin = "config") {
  std::istringstream in(text);
  apply_ini(cfg, in, origin);
}

inline void apply_ini_file(RunConfig& cfg, const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file '" + path + "'");
  apply_ini(cfg, in, path);
}

inline const char* to_string(ThermalMode m) {
  return m == ThermalMode::ray ? "ray" : m == ThermalMode::map ? "map" : "both";
}

/// Resolved configuration as an INI document in file units. Parsing the
/// output reproduces the configuration.
inline std::string to_ini(const RunConfig& c) {
  using detail::fmt17;
  using detail::join;
  std::ostringstream o;
  o << "; preset: " << c.preset << "\n";
  o << "[beams]\n"
    << "omega_p0_mhz = " << fmt17(to_mhz(c.beams.omega_p0)) << "\n"
    << "omega_c10_mhz = " << fmt17(to_mhz(c.beams.omega_c10)) << "\n"
    << "omega_c20_mhz = " << fmt17(to_mhz(c.beams.omega_c20)) << "\n"
    << "width_um = " << fmt17(to_um(c.beams.width)) << "\n"
    << "winding = " << c.beams.winding << "\n"
    << "theta_c1 = " << fmt17(c.beams.theta_c1) << "\n";
  o << "[atom]\n"
    << "gamma31_mhz = " << fmt17(to_mhz(c.atom.gamma31)) << "\n"
    << "gamma32_mhz = " << fmt17(to_mhz(c.atom.gamma32)) << "\n"
    << "gamma21_mhz = " << fmt17(to_mhz(c.atom.gamma21)) << "\n"
    << "mass_amu = " << fmt17(c.atom.mass / atomic_mass_unit) << "\n"
    << "temperature_uk = " << fmt17(c.atom.temperature * 1e6) << "\n";
  o << "[noise]\n"
    << "n_samples = " << c.noise.n_samples << "\n"
    << "velocity_spread = " << to_string(c.noise.spread) << "\n";
  o << "[grid]\n"
    << "nx = " << c.grid.nx << "\n"
    << "ny = " << c.grid.ny << "\n"
    << "half_width_um = " << fmt17(to_um(c.grid_half_width)) << "\n"
    << "center = " << (c.grid_center == GridCenter::origin ? "origin" : "prediction") << "\n";
  o << "[map]\n"
    << "engine = " << to_string(c.map.engine) << "\n"
    << "kappa_c = " << join(c.map.kappa_c) << "\n"
    << "theta_c1 = " << join(c.map.theta_c1) << "\n"
    << "kappa_p = " << fmt17(c.map.kappa_p) << "\n";
  o << "[radial]\n"
    << "kappa_p = " << join(c.radial.kappa_p) << "\n"
    << "kappa_c = " << fmt17(c.radial.kappa_c) << "\n"
    << "points = " << c.radial.points << "\n"
    << "span_fwhm = " << fmt17(c.radial.span_fwhm) << "\n";
  o << "[intensity_noise]\n"
    << "xi = " << join(c.intensity_noise.xi) << "\n"
    << "r_loc_um = " << join(c.intensity_noise.r_loc, 1e6) << "\n"
    << "points = " << c.intensity_noise.points << "\n"
    << "half_span_um = " << fmt17(to_um(c.intensity_noise.half_span)) << "\n";
  const auto& f = c.feasibility;
  o << "[feasibility]\n"
    << "omega_p0_mhz = " << join(f.omega_p0, 1.0 / from_mhz(1.0)) << "\n"
    << "r_min_um = " << fmt17(to_um(f.r_min)) << "\n"
    << "r_max_um = " << fmt17(to_um(f.r_max)) << "\n"
    << "points = " << f.points << "\n"
    << "epsilon = " << fmt17(f.epsilon) << "\n"
    << "safety_factor = " << fmt17(f.safety_factor) << "\n"
    << "horizon_ms = " << fmt17(f.horizon * 1e3) << "\n"
    << "best_resolution_omega_c10_mhz = "
    << join(f.best_resolution_omega_c10, 1.0 / from_mhz(1.0)) << "\n";
  const auto& t = c.thermal;
  o << "[thermal]\n"
    << "temperature_uk = " << join(t.temperature, 1e6) << "\n"
    << "t_meas_us = " << join(t.t_meas, 1e6) << "\n"
    << "mode = " << to_string(t.mode) << "\n"
    << "kappa_c = " << fmt17(t.kappa_c) << "\n"
    << "ray_points = " << t.ray_points << "\n"
    << "ray_half_span_um = " << fmt17(to_um(t.ray_half_span)) << "\n"
    << "map_n = " << t.map_n << "\n"
    << "map_half_width_um = " << fmt17(to_um(t.map_half_width)) << "\n";
  o << "[run]\n"
    << "seed = " << c.seed << "\n"
    << "threads = " << c.threads << "\n";
  return o.str();
}

// --- presets ----------------------------------------------------------------

inline const std::map<std::string, std::string>& preset_overrides() {
  static const std::map<std::string, std::string> presets = {
      {"default", ""},
      // Off-axis spots A-D, kappa_p = 0.01.
      {"fig2",
       "[map]\nengine = numeric\nkappa_c = 0.1, 0.5, 0.5, 0.5\n"
       "theta_c1 = pi, pi, pi/4, -pi/4\nkappa_p = 0.01\n"
       "[grid]\nnx = 400\nny = 400\nhalf_width_um = 7.5\ncenter = origin\n"},
      // Radial Lorentzian width versus kappa_p, dark-state limit G21 = 0.
      {"fig3-resolution",
       "[atom]\ngamma21_mhz = 0\n"
       "[radial]\nkappa_p = 0.01, 0.005, 0.002\nkappa_c = 0.5\npoints = 801\nspan_fwhm = 10\n"},
      // Intensity noise at r_loc = 1 and 3 um.
      {"fig3-noise",
       "[beams]\nomega_p0_mhz = 3\nomega_c10_mhz = 150\n"
       "[noise]\nn_samples = 500\n"
       "[intensity_noise]\nxi = 0.01, 0.05\nr_loc_um = 1, 3\npoints = 401\nhalf_span_um = 1\n"},
      // Steady time versus r_loc for four probe strengths.
      {"fig4",
       "[beams]\nomega_c10_mhz = 150\n[atom]\ntemperature_uk = 1\n"
       "[feasibility]\nomega_p0_mhz = 4.5, 3.0, 2.1, 1.5\nr_min_um = 0\nr_max_um = 6\n"
       "points = 60\nepsilon = 0.01\nsafety_factor = 10\nhorizon_ms = 10\n"
       "best_resolution_omega_c10_mhz = 150, 300\n"},
      // Thermal broadening at T = 0, 1, 5, 10 uK for 1 and 5 us measurements.
      {"fig5",
       "[beams]\nomega_p0_mhz = 3\nomega_c10_mhz = 150\n"
       "[noise]\nn_samples = 500\nvelocity_spread = per_axis_vp\n"
       "[thermal]\ntemperature_uk = 0, 1, 5, 10\nt_meas_us = 1, 5\nmode = ray\nkappa_c = 0.5\n"
       "ray_points = 601\nray_half_span_um = 1.2\nmap_n = 64\nmap_half_width_um = 0.75\n"},
  };
  return presets;
}

inline std::vector<std::string> preset_names() {
  std::vector<std::string> names;
  for (const auto& [k, v] : preset_overrides()) names.push_back(k);
  return names;
}

inline RunConfig make_preset(const std::string& name) {
  const auto& all = preset_overrides();
  const auto it = all.find(name);
  if (it == all.end()) throw ConfigError("unknown preset '" + name + "'");
  RunConfig cfg;
  cfg.preset = name;
  apply_ini_text(cfg, it->second, "preset " + name);
  return cfg;
}

}  // namespace lambdaloc
