#pragma once

// Monte Carlo ensembles for laser intensity noise and atomic thermal motion.
//
// Every random draw comes from a counter-keyed stream derived from
// (seed, measurement index), so results do not depend on the number of worker
// threads or on evaluation order. A measurement images the whole cloud at
// once: its intensity perturbation, or its sampled velocity, applies to every
// point of that measurement.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "lambdaloc/bloch.hpp"
#include "lambdaloc/errors.hpp"
#include "lambdaloc/fields.hpp"
#include "lambdaloc/localization.hpp"
#include "lambdaloc/parallel.hpp"
#include "lambdaloc/units.hpp"

namespace lambdaloc {

/// SplitMix64 generator keyed by up to three integers. Satisfies
/// UniformRandomBitGenerator.
class StreamRng {
 public:
  using result_type = std::uint64_t;

  explicit StreamRng(std::uint64_t seed, std::uint64_t stream = 0, std::uint64_t substream = 0) {
    state_ = mix(seed ^ 0x6a09e667f3bcc909ULL);
    state_ = mix(state_ ^ (stream + 0x9e3779b97f4a7c15ULL));
    state_ = mix(state_ ^ (substream + 0xbb67ae8584caa73bULL));
  }

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() { return std::numeric_limits<result_type>::max(); }

  result_type operator()() {
    state_ += 0x9e3779b97f4a7c15ULL;
    return mix(state_);
  }

 private:
  static std::uint64_t mix(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }
  std::uint64_t state_;
};

/// Width convention for the per-axis velocity distribution.
///  - maxwell_boltzmann: f ~ exp(-(vx^2+vy^2)/v_p^2), per-axis sigma = v_p/sqrt(2).
///  - per_axis_vp: per-axis sigma = v_p.
enum class VelocitySpread { maxwell_boltzmann, per_axis_vp };

inline const char* to_string(VelocitySpread v) {
  return v == VelocitySpread::maxwell_boltzmann ? "maxwell_boltzmann" : "per_axis_vp";
}

struct NoiseConfig {
  double xi = 0.0;             // intensity noise bound, dOmega/Omega in [-xi, xi]
  std::size_t n_samples = 500;
  double t_meas = 0.0;         // s
  std::uint64_t seed = 1;
  VelocitySpread spread = VelocitySpread::maxwell_boltzmann;

  void validate() const {
    if (!(xi >= 0.0 && xi < 1.0)) throw ConfigError("noise.xi must lie in [0, 1)");
    if (n_samples < 1) throw ConfigError("noise.n_samples must be >= 1");
    if (!(t_meas >= 0.0)) throw ConfigError("noise.t_meas must be >= 0");
  }
};

/// Per-point ensemble mean and sample standard deviation of rho22.
struct EnsembleStats {
  std::vector<double> mean;
  std::vector<double> stddev;
  std::size_t n_samples = 0;
  double peak_value = 0.0;
  std::optional<double> fwhm;  // m

  /// With a single sample the deviation is zero by convention.
  bool degenerate() const { return n_samples < 2; }
};

struct RadialEnsemble {
  std::vector<double> radii;
  double theta = 0.0;
  EnsembleStats stats;
};

struct MapEnsemble {
  GridSpec grid;
  EnsembleStats stats;
  Map2D::Cell peak;        // argmax of the mean map
  RadialProfile ray;       // mean map along the radial ray through the peak
};

namespace detail {

/// Two-pass mean / sample std over the n samples of one point. The mean is
/// accumulated relative to the first sample, so identical samples reduce to
/// that value exactly with zero deviation.
inline void reduce_samples(const std::vector<double>& s, double& mean, double& sd) {
  double sum = 0.0;
  for (double v : s) sum += v - s.front();
  mean = s.front() + sum / static_cast<double>(s.size());
  if (s.size() < 2) {
    sd = 0.0;
    return;
  }
  double ss = 0.0;
  for (double v : s) ss += (v - mean) * (v - mean);
  sd = std::sqrt(ss / static_cast<double>(s.size() - 1));
}

inline void finish_radial(RadialEnsemble& out) {
  const auto& m = out.stats.mean;
  out.stats.peak_value = m.empty() ? 0.0 : *std::max_element(m.begin(), m.end());
  try {
    out.stats.fwhm = extract_fwhm(out.radii, m);
  } catch (const NoPeak&) {
  } catch (const OneSidedPeak&) {
  }
}

}  // namespace detail

// --- intensity noise ------------------------------------------------------

/// Omega'_i0 = Omega_i0 (1 + u_i), u_i ~ U[-xi, xi] independently for the
/// probe, LG and Gaussian coupling peaks.
template <class Rng>
BeamSet sample_intensity_noise(const BeamSet& b, const NoiseConfig& cfg, Rng& rng) {
  if (cfg.xi == 0.0) return b;
  std::uniform_real_distribution<double> u(-cfg.xi, cfg.xi);
  BeamSet out = b;
  out.omega_p0 = b.omega_p0 * (1.0 + u(rng));
  out.omega_c10 = b.omega_c10 * (1.0 + u(rng));
  out.omega_c20 = b.omega_c20 * (1.0 + u(rng));
  return out;
}

/// Ensemble of numeric rho22 profiles along the ray through the nominal
/// localization point. One perturbed BeamSet per measurement, shared by all
/// radii of that measurement.
inline RadialEnsemble intensity_noise_profile(const BeamSet& b, const AtomSpecies& atom,
                                              const NoiseConfig& cfg, std::vector<double> radii,
                                              unsigned threads = 0) {
  cfg.validate();
  RadialEnsemble out;
  out.radii = std::move(radii);
  out.theta = wrap_angle(pi - b.theta_c1);
  out.stats.n_samples = cfg.n_samples;

  std::vector<BeamSet> draws(cfg.n_samples);
  for (std::size_t j = 0; j < cfg.n_samples; ++j) {
    StreamRng rng(cfg.seed, j);
    draws[j] = sample_intensity_noise(b, cfg, rng);
  }

  const std::size_t n = out.radii.size();
  out.stats.mean.assign(n, 0.0);
  out.stats.stddev.assign(n, 0.0);
  parallel_for(n, threads, [&](std::size_t i) {
    const Point2D p = Point2D::polar(out.radii[i], out.theta);
    std::vector<double> s(cfg.n_samples);
    for (std::size_t j = 0; j < cfg.n_samples; ++j) {
      try {
        s[j] = numeric_rho22(draws[j], atom, p);
      } catch (const Error& e) {
        throw Error(std::string(e.what()) + " (intensity-noise sample " + std::to_string(j) + ")");
      }
    }
    detail::reduce_samples(s, out.stats.mean[i], out.stats.stddev[i]);
  });
  detail::finish_radial(out);
  return out;
}

// --- thermal motion -------------------------------------------------------

struct Velocity2D {
  double vx = 0.0;
  double vy = 0.0;
};

/// Most probable speed of the 2D Maxwell-Boltzmann distribution, sqrt(2 kB T / M).
inline double most_probable_speed(const AtomSpecies& atom) {
  return std::sqrt(2.0 * boltzmann * atom.temperature / atom.mass);
}

/// One velocity draw. With the default spread each component is normal with
/// sigma = v_p / sqrt(2), i.e. f(vx, vy) = exp(-(vx^2+vy^2)/v_p^2) / (pi v_p^2).
template <class Rng>
Velocity2D sample_velocity(const AtomSpecies& atom, Rng& rng,
                           VelocitySpread spread = VelocitySpread::maxwell_boltzmann) {
  if (atom.temperature == 0.0) return {};
  const double vp = most_probable_speed(atom);
  const double sigma = spread == VelocitySpread::maxwell_boltzmann ? vp / std::sqrt(2.0) : vp;
  std::normal_distribution<double> g(0.0, sigma);
  const double vx = g(rng);
  const double vy = g(rng);
  return {vx, vy};
}

namespace detail {

inline std::vector<Velocity2D> draw_velocities(const AtomSpecies& atom, const NoiseConfig& cfg) {
  std::vector<Velocity2D> v(cfg.n_samples);
  for (std::size_t j = 0; j < cfg.n_samples; ++j) {
    StreamRng rng(cfg.seed, j);
    v[j] = sample_velocity(atom, rng, cfg.spread);
  }
  return v;
}

/// rho22 seen during one measurement by the atom nominally at p: fields are
/// evaluated at the end-of-measurement position p + v t_meas.
inline double displaced_rho22(const BeamSet& b, const AtomSpecies& atom, double t_meas,
                              const Point2D& p, const Velocity2D& v) {
  return numeric_rho22(b, atom, {p.x + v.vx * t_meas, p.y + v.vy * t_meas});
}

}  // namespace detail

/// Thermal-motion ensemble over a Cartesian grid. The radial FWHM is read
/// from the mean map along the ray from the origin through its argmax.
inline MapEnsemble thermal_motion_map(const BeamSet& b, const AtomSpecies& atom,
                                      const NoiseConfig& cfg, const GridSpec& grid,
                                      unsigned threads = 0, std::size_t ray_points = 601) {
  cfg.validate();
  grid.validate();
  MapEnsemble out;
  out.grid = grid;
  out.stats.n_samples = cfg.n_samples;
  out.stats.mean.assign(grid.size(), 0.0);
  out.stats.stddev.assign(grid.size(), 0.0);
  const auto velocities = detail::draw_velocities(atom, cfg);

  parallel_for(grid.ny, threads, [&](std::size_t jy) {
    std::vector<double> s(cfg.n_samples);
    for (std::size_t ix = 0; ix < grid.nx; ++ix) {
      const std::size_t k = jy * grid.nx + ix;
      const Point2D p = grid.point(ix, jy);
      for (std::size_t j = 0; j < cfg.n_samples; ++j)
        s[j] = detail::displaced_rho22(b, atom, cfg.t_meas, p, velocities[j]);
      detail::reduce_samples(s, out.stats.mean[k], out.stats.stddev[k]);
    }
  });

  Map2D mean_map;
  mean_map.grid = grid;
  mean_map.values = out.stats.mean;
  out.peak = mean_map.argmax();
  out.stats.peak_value = out.peak.value;

  // Ray through the peak, reaching half the grid width to either side.
  const double theta = out.peak.point.theta();
  const double r0 = out.peak.point.r();
  const double half = 0.5 * std::min(grid.x_max - grid.x_min, grid.y_max - grid.y_min);
  out.ray = map_ray(mean_map, theta, radii_around(r0, half, ray_points));
  out.stats.fwhm = out.ray.fwhm;
  return out;
}

/// Thermal-motion ensemble along the radial ray through the nominal
/// localization point; the one-dimensional counterpart of thermal_motion_map.
inline RadialEnsemble thermal_motion_profile(const BeamSet& b, const AtomSpecies& atom,
                                             const NoiseConfig& cfg, std::vector<double> radii,
                                             unsigned threads = 0) {
  cfg.validate();
  RadialEnsemble out;
  out.radii = std::move(radii);
  out.theta = wrap_angle(pi - b.theta_c1);
  out.stats.n_samples = cfg.n_samples;
  const std::size_t n = out.radii.size();
  out.stats.mean.assign(n, 0.0);
  out.stats.stddev.assign(n, 0.0);
  const auto velocities = detail::draw_velocities(atom, cfg);
  parallel_for(n, threads, [&](std::size_t i) {
    const Point2D p = Point2D::polar(out.radii[i], out.theta);
    std::vector<double> s(cfg.n_samples);
    for (std::size_t j = 0; j < cfg.n_samples; ++j)
      s[j] = detail::displaced_rho22(b, atom, cfg.t_meas, p, velocities[j]);
    detail::reduce_samples(s, out.stats.mean[i], out.stats.stddev[i]);
  });
  detail::finish_radial(out);
  return out;
}

}  // namespace lambdaloc
