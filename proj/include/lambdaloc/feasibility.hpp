#pragma once

// Steady-time budget and the localizable radius.
//
// Atoms must move less than a_r / safety during the time rho22 needs to
// settle: v_p T_s <= a_r / safety. Scanning the localization radius (with
// Omega_c20 = r_loc Omega_c10 / W) against that budget gives the region in
// which off-axis localization remains valid.

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "lambdaloc/bloch.hpp"
#include "lambdaloc/errors.hpp"
#include "lambdaloc/fields.hpp"
#include "lambdaloc/localization.hpp"
#include "lambdaloc/noise.hpp"
#include "lambdaloc/parallel.hpp"

namespace lambdaloc {

struct FeasibilityOptions {
  double safety_factor = 10.0;
  SteadyTimeOptions steady{};
  DensityMatrix initial = DensityMatrix::ground();
  double resolution_tol = 1e-9;  // m, bisection tolerance on a_r
};

struct FeasibilityReport {
  std::vector<double> r_loc;  // m
  std::vector<double> t_s;    // s
  double t_s_max = 0.0;       // s
  std::optional<double> localizable_radius;  // m
  double a_r = 0.0;           // m
  double v_p = 0.0;           // m/s
};

/// Largest steady time compatible with the motion budget: a_r / (safety v_p).
inline double t_s_max(const BeamSet& b, const AtomSpecies& atom, double safety_factor = 10.0) {
  const double vp = most_probable_speed(atom);
  if (!(vp > 0.0)) throw InfiniteBudget("t_s_max: zero temperature leaves the steady time unbounded");
  return predicted_fwhm(b) / (safety_factor * vp);
}

/// Beams with the Gaussian coupling peak set so the zero sits at r_loc.
inline BeamSet beams_for_radius(const BeamSet& base, double r_loc) {
  BeamSet b = base;
  b.omega_c20 = r_loc * base.omega_c10 / base.width;
  return b;
}

/// Steady time of rho22 at the predicted localization point of `b`.
inline double steady_time_at_localization(const BeamSet& b, const AtomSpecies& atom,
                                          const FeasibilityOptions& opt = {}) {
  const Point2D p = predicted_position(b).cartesian();
  return steady_time(atom, gaussian_amplitude(b, GaussianBeam::probe, p), hybrid_coupling(b, p),
                     opt.initial, opt.steady);
}

inline FeasibilityReport scan_localizable_radius(const BeamSet& base, const AtomSpecies& atom,
                                                 const std::vector<double>& r_grid,
                                                 const FeasibilityOptions& opt = {},
                                                 unsigned threads = 0) {
  for (std::size_t i = 1; i < r_grid.size(); ++i)
    if (!(r_grid[i] > r_grid[i - 1])) throw Error("scan_localizable_radius: r_grid must increase");
  FeasibilityReport rep;
  rep.r_loc = r_grid;
  rep.a_r = predicted_fwhm(base);
  rep.v_p = most_probable_speed(atom);
  rep.t_s_max = t_s_max(base, atom, opt.safety_factor);
  rep.t_s.assign(r_grid.size(), 0.0);
  parallel_for(r_grid.size(), threads, [&](std::size_t i) {
    try {
      rep.t_s[i] = steady_time_at_localization(beams_for_radius(base, r_grid[i]), atom, opt);
    } catch (const NotConverged& e) {
      throw NotConverged(std::string(e.what()) + " at r_loc = " + std::to_string(r_grid[i]) + " m");
    }
  });
  for (std::size_t i = 0; i < r_grid.size() && rep.t_s[i] <= rep.t_s_max; ++i)
    rep.localizable_radius = r_grid[i];
  return rep;
}

/// Smallest a_r whose on-axis steady time still fits the motion budget,
/// found by bisection on Omega_p0 at fixed Omega_c10.
inline double best_resolution(const BeamSet& base, const AtomSpecies& atom,
                              const FeasibilityOptions& opt = {}) {
  auto slack = [&](double omega_p0) {
    BeamSet b = beams_for_radius(base, 0.0);
    b.omega_p0 = omega_p0;
    return steady_time_at_localization(b, atom, opt) - t_s_max(b, atom, opt.safety_factor);
  };
  auto fwhm_of = [&](double omega_p0) { return 2.0 * omega_p0 / base.omega_c10 * base.width; };

  double hi = base.omega_p0 > 0.0 ? base.omega_p0 : 1e-3 * base.omega_c10;
  double lo = hi;
  int guard = 0;
  while (slack(hi) > 0.0) {
    lo = hi;
    hi *= 2.0;
    if (++guard > 40) throw NotConverged("best_resolution: no feasible probe strength found");
  }
  if (lo == hi) {
    do {
      hi = lo;
      lo *= 0.5;
      if (++guard > 80) throw NotConverged("best_resolution: no infeasible probe strength found");
    } while (slack(lo) <= 0.0);
  }
  while (fwhm_of(hi) - fwhm_of(lo) > opt.resolution_tol) {
    const double mid = 0.5 * (lo + hi);
    (slack(mid) > 0.0 ? lo : hi) = mid;
  }
  return fwhm_of(hi);
}

}  // namespace lambdaloc
