#pragma once

// Localization observables: rho22 maps and radial profiles, closed-form
// predictions for the localization point and its width, and FWHM extraction
// from sampled data.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "lambdaloc/bloch.hpp"
#include "lambdaloc/errors.hpp"
#include "lambdaloc/fields.hpp"
#include "lambdaloc/parallel.hpp"
#include "lambdaloc/units.hpp"

namespace lambdaloc {

enum class Engine { analytic, numeric };

inline const char* to_string(Engine e) { return e == Engine::analytic ? "analytic" : "numeric"; }

/// Closed-form steady population for G21 = 0, G31 = G32:
/// rho22 = 1 / (1 + I_c / I_p). The common Gaussian envelope is divided out
/// before squaring so the ratio stays finite far outside the beams.
inline double analytic_rho22(const BeamSet& b, const Point2D& p) {
  if (!(b.omega_p0 > 0.0)) throw Error("analytic_rho22 requires omega_p0 > 0");
  const double s = p.r() / b.width;
  const complex coupling = std::polar(b.omega_c10 * std::pow(s, b.winding),
                                      b.winding * (p.theta() + b.theta_c1)) +
                           b.omega_c20;
  const double ratio = std::norm(coupling) / (b.omega_p0 * b.omega_p0);
  return 1.0 / (1.0 + ratio);
}

/// Lorentzian radial profile along theta = pi - theta_c1 (l = 1, equal widths).
inline double lorentz_profile(const BeamSet& b, double r) {
  const double kp = b.kappa_p();
  if (!(kp > 0.0)) throw Error("lorentz_profile requires kappa_p > 0");
  const double d = (r - b.kappa_c() * b.width) / (kp * b.width);
  return 1.0 / (1.0 + d * d);
}

/// Steady rho22 from the full linear solve with the local fields at p.
inline double numeric_rho22(const BeamSet& b, const AtomSpecies& atom, const Point2D& p) {
  return steady_rho22(atom, gaussian_amplitude(b, GaussianBeam::probe, p), hybrid_coupling(b, p));
}

inline double rho22(const BeamSet& b, const AtomSpecies& atom, const Point2D& p, Engine engine) {
  return engine == Engine::analytic ? analytic_rho22(b, p) : numeric_rho22(b, atom, p);
}

struct LocalizationPoint {
  double r = 0.0;
  double theta = 0.0;  // in (-pi, pi]

  Point2D cartesian() const { return Point2D::polar(r, theta); }
};

/// Zero of the hybrid coupling intensity: (kappa_c W, pi - theta_c1).
inline LocalizationPoint predicted_position(const BeamSet& b) {
  if (b.winding != 1) throw Error("predicted_position requires winding number 1");
  return {b.kappa_c() * b.width, wrap_angle(pi - b.theta_c1)};
}

/// FWHM of the radial Lorentzian, a_r = 2 kappa_p W.
inline double predicted_fwhm(const BeamSet& b) {
  const double kp = b.kappa_p();
  if (!(kp > 0.0)) throw Error("predicted_fwhm requires kappa_p > 0");
  return 2.0 * kp * b.width;
}

// --- FWHM extraction ------------------------------------------------------

/// Full width at half maximum of a sampled single-peaked profile. Half-max
/// crossings are located by linear interpolation between the samples that
/// bracket them on each side of the maximum.
inline double extract_fwhm(const std::vector<double>& coords, const std::vector<double>& values) {
  const std::size_t n = values.size();
  if (coords.size() != n) throw Error("extract_fwhm: coordinate/value size mismatch");
  if (n < 3) throw NoPeak("extract_fwhm: fewer than three samples");
  for (std::size_t i = 1; i < n; ++i)
    if (!(coords[i] > coords[i - 1])) throw Error("extract_fwhm: coordinates must increase");

  const auto peak_it = std::max_element(values.begin(), values.end());
  const std::size_t k = static_cast<std::size_t>(peak_it - values.begin());
  const double peak = *peak_it;
  if (k == 0 || k == n - 1) throw NoPeak("extract_fwhm: maximum lies on the boundary");
  if (!(peak > std::min(values.front(), values.back())))
    throw NoPeak("extract_fwhm: profile is flat");
  const double half = 0.5 * peak;

  auto crossing = [&](std::size_t inside, std::size_t outside) {
    const double v0 = values[inside], v1 = values[outside];
    const double s = (v0 - half) / (v0 - v1);
    return coords[inside] + s * (coords[outside] - coords[inside]);
  };

  std::optional<double> left, right;
  for (std::size_t i = k; i > 0; --i) {
    if (values[i - 1] < half) {
      left = crossing(i, i - 1);
      break;
    }
  }
  for (std::size_t i = k; i + 1 < n; ++i) {
    if (values[i + 1] < half) {
      right = crossing(i, i + 1);
      break;
    }
  }
  if (!left || !right)
    throw OneSidedPeak(std::string("extract_fwhm: half maximum not reached on the ") +
                       (!left ? "low" : "high") + " side");
  return *right - *left;
}

// --- radial profiles -------------------------------------------------------

struct RadialProfile {
  std::vector<double> radii;   // m, strictly increasing
  std::vector<double> values;  // rho22
  double theta = 0.0;          // ray direction
  double peak_value = 0.0;
  double peak_radius = 0.0;
  std::optional<double> fwhm;  // m; empty when no clean peak is sampled

  void summarize() {
    if (values.empty()) return;
    const auto it = std::max_element(values.begin(), values.end());
    peak_value = *it;
    peak_radius = radii[static_cast<std::size_t>(it - values.begin())];
    try {
      fwhm = extract_fwhm(radii, values);
    } catch (const NoPeak&) {
      fwhm.reset();
    } catch (const OneSidedPeak&) {
      fwhm.reset();
    }
  }
};

/// n evenly spaced radii on [center - half_span, center + half_span], clipped at 0.
inline std::vector<double> radii_around(double center, double half_span, std::size_t n) {
  if (n < 2) throw Error("radii_around: need at least two samples");
  const double lo = std::max(0.0, center - half_span);
  const double hi = center + half_span;
  std::vector<double> r(n);
  for (std::size_t i = 0; i < n; ++i)
    r[i] = lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(n - 1);
  return r;
}

/// Samples rho22 along the ray at angle `theta` (default: through the
/// predicted localization point, theta = pi - theta_c1).
inline RadialProfile radial_profile(const BeamSet& b, const AtomSpecies& atom,
                                    std::vector<double> radii, Engine engine,
                                    std::optional<double> theta = std::nullopt,
                                    unsigned threads = 1) {
  RadialProfile prof;
  prof.theta = theta ? *theta : wrap_angle(pi - b.theta_c1);
  prof.radii = std::move(radii);
  prof.values.resize(prof.radii.size());
  parallel_for(prof.radii.size(), threads, [&](std::size_t i) {
    prof.values[i] = rho22(b, atom, Point2D::polar(prof.radii[i], prof.theta), engine);
  });
  prof.summarize();
  return prof;
}

// --- 2D maps ----------------------------------------------------------------

inline constexpr std::size_t min_grid_points = 32;

struct GridSpec {
  std::size_t nx = 400;
  std::size_t ny = 400;
  double x_min = -7.5e-6, x_max = 7.5e-6;
  double y_min = -7.5e-6, y_max = 7.5e-6;

  double dx() const { return (x_max - x_min) / static_cast<double>(nx - 1); }
  double dy() const { return (y_max - y_min) / static_cast<double>(ny - 1); }
  double x(std::size_t i) const { return x_min + dx() * static_cast<double>(i); }
  double y(std::size_t j) const { return y_min + dy() * static_cast<double>(j); }
  Point2D point(std::size_t i, std::size_t j) const { return {x(i), y(j)}; }
  std::size_t size() const { return nx * ny; }

  bool contains(const Point2D& p) const {
    return p.x >= x_min && p.x <= x_max && p.y >= y_min && p.y <= y_max;
  }

  void validate() const {
    if (nx < min_grid_points || ny < min_grid_points)
      throw ConfigError("grid resolution must be at least 32x32 (got " + std::to_string(nx) +
                        "x" + std::to_string(ny) + ")");
    if (!(x_max > x_min) || !(y_max > y_min)) throw ConfigError("grid extent must be positive");
  }

  /// Square n x n grid of half-width `half_width` around `center`.
  static GridSpec centered(const Point2D& center, double half_width, std::size_t n) {
    return {n, n, center.x - half_width, center.x + half_width, center.y - half_width,
            center.y + half_width};
  }
};

struct Map2D {
  GridSpec grid;
  std::vector<double> values;  // index j * nx + i
  BeamSet beams;
  AtomSpecies atom;
  Engine engine = Engine::numeric;
  LocalizationPoint predicted;

  double at(std::size_t i, std::size_t j) const { return values[j * grid.nx + i]; }

  struct Cell {
    std::size_t i = 0, j = 0;
    double value = 0.0;
    Point2D point;
  };
  Cell argmax() const {
    const auto it = std::max_element(values.begin(), values.end());
    const auto k = static_cast<std::size_t>(it - values.begin());
    const std::size_t i = k % grid.nx, j = k / grid.nx;
    return {i, j, *it, grid.point(i, j)};
  }

  /// Bilinear interpolation; points outside the grid are clamped to its edge.
  double sample(const Point2D& p) const {
    const double fx = std::clamp((p.x - grid.x_min) / grid.dx(), 0.0, double(grid.nx - 1));
    const double fy = std::clamp((p.y - grid.y_min) / grid.dy(), 0.0, double(grid.ny - 1));
    const std::size_t i0 = std::min(static_cast<std::size_t>(fx), grid.nx - 2);
    const std::size_t j0 = std::min(static_cast<std::size_t>(fy), grid.ny - 2);
    const double tx = fx - double(i0), ty = fy - double(j0);
    return (1 - tx) * (1 - ty) * at(i0, j0) + tx * (1 - ty) * at(i0 + 1, j0) +
           (1 - tx) * ty * at(i0, j0 + 1) + tx * ty * at(i0 + 1, j0 + 1);
  }
};

/// rho22 over a Cartesian grid. Numeric engine failures name the grid point.
inline Map2D compute_map(const BeamSet& b, const AtomSpecies& atom, const GridSpec& grid,
                         Engine engine, unsigned threads = 0) {
  grid.validate();
  Map2D map;
  map.grid = grid;
  map.beams = b;
  map.atom = atom;
  map.engine = engine;
  if (b.winding == 1) map.predicted = predicted_position(b);
  map.values.resize(grid.size());
  parallel_for(grid.ny, threads, [&](std::size_t j) {
    for (std::size_t i = 0; i < grid.nx; ++i) {
      const Point2D p = grid.point(i, j);
      try {
        map.values[j * grid.nx + i] = rho22(b, atom, p, engine);
      } catch (const SingularSteadyState& e) {
        throw SingularSteadyState(std::string(e.what()) + " at grid point (" + std::to_string(i) +
                                  ", " + std::to_string(j) + ") x = " + std::to_string(p.x) +
                                  " m, y = " + std::to_string(p.y) + " m");
      }
    }
  });
  return map;
}

/// Profile of a map along the ray from the origin at angle `theta`, sampled
/// at the given radii by bilinear interpolation.
inline RadialProfile map_ray(const Map2D& map, double theta, std::vector<double> radii) {
  RadialProfile prof;
  prof.theta = theta;
  prof.radii = std::move(radii);
  prof.values.reserve(prof.radii.size());
  for (double r : prof.radii) prof.values.push_back(map.sample(Point2D::polar(r, theta)));
  prof.summarize();
  return prof;
}

}  // namespace lambdaloc
