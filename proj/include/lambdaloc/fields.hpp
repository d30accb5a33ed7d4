#pragma once

// Transverse beam profiles: Gaussian probe, LG + Gaussian hybrid coupling.

#include <cmath>
#include <complex>
#include <cstdlib>
#include <string>

#include "lambdaloc/errors.hpp"
#include "lambdaloc/units.hpp"

namespace lambdaloc {

using complex = std::complex<double>;

/// Optical configuration. Rabi frequencies in rad/s, width in m.
struct BeamSet {
  double omega_p0 = 0.0;   // probe peak
  double omega_c10 = 0.0;  // LG coupling peak
  double omega_c20 = 0.0;  // Gaussian coupling peak
  double width = 5e-6;     // common spot size W
  int winding = 1;
  double theta_c1 = 0.0;   // LG initial phase

  /// Omega_c20 / Omega_c10, the position knob.
  double kappa_c() const { return omega_c10 > 0.0 ? omega_c20 / omega_c10 : 0.0; }
  /// Omega_p0 / Omega_c10, the resolution knob.
  double kappa_p() const { return omega_c10 > 0.0 ? omega_p0 / omega_c10 : 0.0; }

  void validate() const {
    if (!(width > 0.0) || !std::isfinite(width))
      throw ConfigError("beams.width must be > 0");
    if (!(omega_p0 >= 0.0)) throw ConfigError("beams.omega_p0 must be >= 0");
    if (!(omega_c10 >= 0.0)) throw ConfigError("beams.omega_c10 must be >= 0");
    if (!(omega_c20 >= 0.0)) throw ConfigError("beams.omega_c20 must be >= 0");
    if (winding < 1) throw ConfigError("beams.winding must be >= 1");
    if (!std::isfinite(theta_c1)) throw ConfigError("beams.theta_c1 must be finite");
  }

  /// Beams with peaks chosen from ratios: Omega_c20 = kc*Omega_c10, Omega_p0 = kp*Omega_c10.
  static BeamSet from_ratios(double omega_c10, double kappa_c, double kappa_p,
                             double width, double theta_c1, int winding = 1) {
    BeamSet b;
    b.omega_c10 = omega_c10;
    b.omega_c20 = kappa_c * omega_c10;
    b.omega_p0 = kappa_p * omega_c10;
    b.width = width;
    b.theta_c1 = theta_c1;
    b.winding = winding;
    return b;
  }
};

struct Point2D {
  double x = 0.0;
  double y = 0.0;

  double r() const { return std::hypot(x, y); }
  /// atan2 range is [-pi, pi]; -pi only arises for y == -0.0, folded to pi.
  double theta() const {
    double t = std::atan2(y, x);
    return t == -pi ? pi : t;
  }

  static Point2D polar(double r, double theta) {
    return {r * std::cos(theta), r * std::sin(theta)};
  }
};

enum class GaussianBeam { probe, coupling2 };

inline complex gaussian_amplitude(const BeamSet& b, GaussianBeam which, const Point2D& p) {
  const double peak = which == GaussianBeam::probe ? b.omega_p0 : b.omega_c20;
  const double r = p.r();
  return {peak * std::exp(-(r * r) / (b.width * b.width)), 0.0};
}

inline complex lg_amplitude(const BeamSet& b, const Point2D& p) {
  const double r = p.r();
  const double s = r / b.width;
  const int l = b.winding;
  const double radial = b.omega_c10 * std::pow(s, std::abs(l)) * std::exp(-s * s);
  return std::polar(radial, l * (p.theta() + b.theta_c1));
}

/// Omega_c = Omega_c1 + Omega_c2 at p.
inline complex hybrid_coupling(const BeamSet& b, const Point2D& p) {
  return lg_amplitude(b, p) + gaussian_amplitude(b, GaussianBeam::coupling2, p);
}

/// |Omega_c1 + Omega_c2|^2 in (rad/s)^2.
///
/// The l = 1 case uses the factored form
///   (Omega_c10/W)^2 exp(-2r^2/W^2) |r + kappa_c W exp(-i(theta + theta_c1))|^2,
/// which is evaluated without forming the complex sum. Other windings fall
/// back to the modulus of the sum.
inline double coupling_intensity(const BeamSet& b, const Point2D& p) {
  if (b.winding != 1) return std::norm(hybrid_coupling(b, p));
  const double r = p.r();
  const double w = b.width;
  const double phase = p.theta() + b.theta_c1;
  const double kw = b.omega_c10 > 0.0 ? b.kappa_c() * w : 0.0;
  const double re = r + kw * std::cos(phase);
  const double im = -kw * std::sin(phase);
  const double envelope = std::exp(-2.0 * r * r / (w * w));
  if (b.omega_c10 == 0.0) {
    const double g = b.omega_c20 * std::exp(-(r * r) / (w * w));
    return g * g;
  }
  const double scale = b.omega_c10 / w;
  return scale * scale * envelope * (re * re + im * im);
}

/// |Omega_p|^2 in (rad/s)^2.
inline double probe_intensity(const BeamSet& b, const Point2D& p) {
  return std::norm(gaussian_amplitude(b, GaussianBeam::probe, p));
}

}  // namespace lambdaloc
