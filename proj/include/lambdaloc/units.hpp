#pragma once

#include <cmath>
#include <numbers>

namespace lambdaloc {

inline constexpr double pi = std::numbers::pi;
inline constexpr double two_pi = 2.0 * std::numbers::pi;

inline constexpr double boltzmann = 1.380649e-23;       // J/K (exact, SI 2019)
inline constexpr double atomic_mass_unit = 1.66053906660e-27;  // kg
inline constexpr double rb87_mass = 86.909180527 * atomic_mass_unit;

/// Angular frequency (rad/s) from a value quoted as f/2pi in MHz.
constexpr double from_mhz(double mhz) { return two_pi * mhz * 1e6; }
constexpr double to_mhz(double rad_per_s) { return rad_per_s / (two_pi * 1e6); }

constexpr double from_um(double um) { return um / 1e6; }
constexpr double to_um(double m) { return m * 1e6; }

/// Wrap an angle into (-pi, pi].
inline double wrap_angle(double a) {
  double w = std::remainder(a, two_pi);
  if (w <= -pi) w += two_pi;
  return w;
}

}  // namespace lambdaloc
