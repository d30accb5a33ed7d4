#pragma once

// Resonant three-level Lambda system: master equation, steady state, and
// time evolution.
//
// States are labelled 1, 2 (ground manifold) and 3 (excited). The probe
// couples 1-3, the hybrid coupling field couples 2-3. The Hamiltonian (hbar
// = 1) is
//     H = Omega_p |3><1| + Omega_c |3><2| + h.c.
// and spontaneous emission enters through Lindblad jumps sqrt(G31)|1><3|,
// sqrt(G32)|2><3|, sqrt(G21)|1><2|. For real fields the component equations
// are the textbook Lambda-system Bloch equations with dephasing rates
// g12 = G21/2, g13 = (G31+G32)/2, g23 = (G31+G32+G21)/2.

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "lambdaloc/errors.hpp"
#include "lambdaloc/units.hpp"

namespace lambdaloc {

using complex = std::complex<double>;

/// Matter configuration. Rates in rad/s (s^-1), mass in kg, temperature in K.
struct AtomSpecies {
  double gamma31 = 0.0;
  double gamma32 = 0.0;
  double gamma21 = 0.0;
  double mass = rb87_mass;
  double temperature = 0.0;

  double gamma12() const { return gamma21 / 2.0; }
  double gamma13() const { return (gamma31 + gamma32) / 2.0; }
  double gamma23() const { return (gamma31 + gamma32 + gamma21) / 2.0; }

  void validate() const {
    if (!(gamma31 >= 0.0) || !(gamma32 >= 0.0) || !(gamma21 >= 0.0))
      throw ConfigError("atom decay rates must be >= 0");
    if (!(mass > 0.0)) throw ConfigError("atom.mass must be > 0");
    if (!(temperature >= 0.0)) throw ConfigError("atom.temperature must be >= 0");
  }

  /// 87Rb D1 line: G31 = G32 = 2pi x 5.75 MHz, G21 = 5e3 s^-1 (200 us lifetime).
  static AtomSpecies rb87(double temperature = 1e-6) {
    AtomSpecies a;
    a.gamma31 = from_mhz(5.75);
    a.gamma32 = from_mhz(5.75);
    a.gamma21 = 5e3;
    a.mass = rb87_mass;
    a.temperature = temperature;
    return a;
  }
};

/// 3x3 density matrix. Index 0, 1, 2 holds states 1, 2, 3.
struct DensityMatrix {
  Eigen::Matrix3cd m = Eigen::Matrix3cd::Zero();

  DensityMatrix() = default;
  explicit DensityMatrix(const Eigen::Matrix3cd& mat) : m(mat) {}

  static DensityMatrix diagonal(double p1, double p2, double p3) {
    DensityMatrix d;
    d.m(0, 0) = p1;
    d.m(1, 1) = p2;
    d.m(2, 2) = p3;
    return d;
  }
  static DensityMatrix ground() { return diagonal(1.0, 0.0, 0.0); }

  /// Population of state n in {1, 2, 3}.
  double population(int n) const { return m(n - 1, n - 1).real(); }
  complex operator()(int n, int k) const { return m(n - 1, k - 1); }

  complex trace() const { return m.trace(); }
  double hermiticity_error() const { return (m - m.adjoint()).cwiseAbs().maxCoeff(); }
  double min_eigenvalue() const {
    const Eigen::Matrix3cd h = 0.5 * (m + m.adjoint());
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix3cd> es(h, Eigen::EigenvaluesOnly);
    return es.eigenvalues().minCoeff();
  }

  /// Throws InvariantViolation if the matrix is not a physical state.
  void check(double trace_tol = 1e-10, double herm_tol = 1e-10, double pos_tol = 1e-8) const {
    const double tr_err = std::abs(trace() - 1.0);
    if (!(tr_err < trace_tol))
      throw InvariantViolation("density matrix trace off by " + std::to_string(tr_err));
    const double h = hermiticity_error();
    if (!(h < herm_tol))
      throw InvariantViolation("density matrix not Hermitian: " + std::to_string(h));
    const double ev = min_eigenvalue();
    if (!(ev >= -pos_tol))
      throw InvariantViolation("density matrix not positive: eigenvalue " + std::to_string(ev));
  }
};

namespace detail {

inline Eigen::Matrix3cd bloch_rhs_matrix(const Eigen::Matrix3cd& rho, const AtomSpecies& atom,
                                         complex omega_p, complex omega_c) {
  Eigen::Matrix3cd h = Eigen::Matrix3cd::Zero();
  h(2, 0) = omega_p;
  h(0, 2) = std::conj(omega_p);
  h(2, 1) = omega_c;
  h(1, 2) = std::conj(omega_c);
  const complex i(0.0, 1.0);
  Eigen::Matrix3cd d = -i * (h * rho - rho * h);

  // Lindblad terms written out: each jump |a><b| at rate g moves population
  // b -> a and damps coherences involving b at g/2.
  const double g31 = atom.gamma31, g32 = atom.gamma32, g21 = atom.gamma21;
  d(0, 0) += g31 * rho(2, 2) + g21 * rho(1, 1);
  d(1, 1) += g32 * rho(2, 2) - g21 * rho(1, 1);
  d(2, 2) -= (g31 + g32) * rho(2, 2);
  const double out[3] = {0.0, g21, g31 + g32};  // total decay out of each state
  for (int a = 0; a < 3; ++a)
    for (int b = 0; b < 3; ++b)
      if (a != b) d(a, b) -= 0.5 * (out[a] + out[b]) * rho(a, b);
  return d;
}

}  // namespace detail

/// d(rho)/dt for the driven, damped Lambda system.
inline DensityMatrix bloch_rhs(const DensityMatrix& rho, const AtomSpecies& atom,
                               complex omega_p, complex omega_c) {
  return DensityMatrix(detail::bloch_rhs_matrix(rho.m, atom, omega_p, omega_c));
}

using Liouvillian = Eigen::Matrix<complex, 9, 9>;

/// Superoperator on row-major vec(rho): column 3a+b is the image of |a><b|.
inline Liouvillian liouvillian(const AtomSpecies& atom, complex omega_p, complex omega_c) {
  Liouvillian l;
  for (int a = 0; a < 3; ++a) {
    for (int b = 0; b < 3; ++b) {
      Eigen::Matrix3cd e = Eigen::Matrix3cd::Zero();
      e(a, b) = 1.0;
      const Eigen::Matrix3cd img = detail::bloch_rhs_matrix(e, atom, omega_p, omega_c);
      for (int r = 0; r < 3; ++r)
        for (int c = 0; c < 3; ++c) l(3 * r + c, 3 * a + b) = img(r, c);
    }
  }
  return l;
}

/// Largest rate scale present, used to normalize residuals and step sizes.
inline double max_rate(const AtomSpecies& atom, complex omega_p, complex omega_c) {
  return std::max({std::abs(omega_p), std::abs(omega_c), atom.gamma31 + atom.gamma32,
                   atom.gamma21, std::numeric_limits<double>::min()});
}

/// Stationary state from a direct linear solve. The rho11 row of the
/// Liouvillian is redundant (trace is conserved) and is replaced with the
/// normalization condition.
inline DensityMatrix steady_state(const AtomSpecies& atom, complex omega_p, complex omega_c) {
  Liouvillian l = liouvillian(atom, omega_p, omega_c);
  const double scale = max_rate(atom, omega_p, omega_c);
  l /= scale;
  l.row(0).setZero();
  l(0, 0) = l(0, 4) = l(0, 8) = 1.0;
  Eigen::Matrix<complex, 9, 1> rhs = Eigen::Matrix<complex, 9, 1>::Zero();
  rhs(0) = 1.0;

  Eigen::FullPivLU<Liouvillian> lu(l);
  lu.setThreshold(1e-12);
  if (lu.rank() < 9) {
    throw SingularSteadyState("steady state not unique (Liouvillian null space dimension " +
                              std::to_string(10 - lu.rank()) + ")");
  }
  const Eigen::Matrix<complex, 9, 1> x = lu.solve(rhs);
  DensityMatrix rho;
  for (int r = 0; r < 3; ++r)
    for (int c = 0; c < 3; ++c) rho.m(r, c) = x(3 * r + c);
  rho.m = 0.5 * (rho.m + rho.m.adjoint()).eval();
  return rho;
}

/// Steady population of state 2; the measured observable.
inline double steady_rho22(const AtomSpecies& atom, complex omega_p, complex omega_c) {
  return steady_state(atom, omega_p, omega_c).population(2);
}

// --- time evolution -------------------------------------------------------

struct EvolveOptions {
  double rtol = 1e-8;
  double atol = 1e-10;
  /// Upper bound on the step; 0 selects 1 / (largest rate) so Rabi cycles
  /// are resolved by the accepted-step samples.
  double max_step = 0.0;
  bool check_invariants = true;
  double trace_tol = 1e-8;
  double hermiticity_tol = 1e-10;
  double positivity_tol = 1e-8;
};

struct Trajectory {
  std::vector<double> times;
  std::vector<DensityMatrix> states;
};

/// Adaptive Dormand-Prince 5(4) integration of the master equation from t = 0
/// to t_final. `observer(t, rho)` is called at t = 0 and after each accepted
/// step; returning false stops the integration early. Returns the final time.
template <class Observer>
double integrate(const DensityMatrix& rho0, const AtomSpecies& atom, complex omega_p,
                 complex omega_c, double t_final, const EvolveOptions& opt, Observer&& observer) {
  using M = Eigen::Matrix3cd;
  constexpr double a21 = 1.0 / 5;
  constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
  constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
  constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561,
                   a54 = -212.0 / 729;
  constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247,
                   a64 = 49.0 / 176, a65 = -5103.0 / 18656;
  constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192, b5 = -2187.0 / 6784,
                   b6 = 11.0 / 84;
  // b - b*, the embedded fourth-order error weights.
  constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920,
                   e5 = -17253.0 / 339200, e6 = 22.0 / 525, e7 = -1.0 / 40;

  const auto f = [&](const M& y) { return detail::bloch_rhs_matrix(y, atom, omega_p, omega_c); };
  const double rate = max_rate(atom, omega_p, omega_c);
  const double h_max = opt.max_step > 0.0 ? opt.max_step : 1.0 / rate;
  const double h_min = 1e-12 * std::min(h_max, t_final);

  M y = rho0.m;
  double t = 0.0;
  double h = std::min(0.01 / rate, t_final);
  M k1 = f(y);
  if (!observer(t, DensityMatrix(y))) return t;

  while (t < t_final) {
    if (t + h > t_final) h = t_final - t;
    const M k2 = f(y + h * (a21 * k1));
    const M k3 = f(y + h * (a31 * k1 + a32 * k2));
    const M k4 = f(y + h * (a41 * k1 + a42 * k2 + a43 * k3));
    const M k5 = f(y + h * (a51 * k1 + a52 * k2 + a53 * k3 + a54 * k4));
    const M k6 = f(y + h * (a61 * k1 + a62 * k2 + a63 * k3 + a64 * k4 + a65 * k5));
    const M y_new = y + h * (b1 * k1 + b3 * k3 + b4 * k4 + b5 * k5 + b6 * k6);
    const M k7 = f(y_new);
    const M err = h * (e1 * k1 + e3 * k3 + e4 * k4 + e5 * k5 + e6 * k6 + e7 * k7);

    double err_norm = 0.0;
    for (int i = 0; i < 9; ++i) {
      const double sc = opt.atol + opt.rtol * std::max(std::abs(y(i)), std::abs(y_new(i)));
      err_norm = std::max(err_norm, std::abs(err(i)) / sc);
    }

    if (err_norm <= 1.0) {
      t += h;
      y = y_new;
      k1 = k7;
      DensityMatrix state(y);
      if (opt.check_invariants) state.check(opt.trace_tol, opt.hermiticity_tol, opt.positivity_tol);
      if (!observer(t, state)) return t;
    }
    const double factor =
        err_norm == 0.0 ? 5.0 : std::clamp(0.9 * std::pow(err_norm, -0.2), 0.2, 5.0);
    h = std::min(h * factor, h_max);
    if (h < h_min && t < t_final)
      throw StepSizeUnderflow("step size underflow at t = " + std::to_string(t) + " s");
  }
  return t;
}

/// Full trajectory of accepted steps. `tol` is the relative local error
/// target; the absolute target is tol/100.
inline Trajectory evolve(const DensityMatrix& rho0, const AtomSpecies& atom, complex omega_p,
                         complex omega_c, double t_final, double tol = 1e-8) {
  if (!(t_final > 0.0)) throw Error("evolve: t_final must be > 0");
  if (!(tol > 0.0 && tol <= 1e-2)) throw Error("evolve: tol must lie in (0, 1e-2]");
  rho0.check();
  EvolveOptions opt;
  opt.rtol = tol;
  opt.atol = tol * 1e-2;
  Trajectory traj;
  integrate(rho0, atom, omega_p, omega_c, t_final, opt, [&](double t, const DensityMatrix& r) {
    traj.times.push_back(t);
    traj.states.push_back(r);
    return true;
  });
  return traj;
}

struct SteadyTimeOptions {
  double epsilon = 0.01;
  double horizon = 10e-3;  // s
  EvolveOptions evolve{};
};

/// Smallest t after which rho22 stays within epsilon * max(rho22_ss, 1e-3) of
/// its steady value for all later accepted samples. The exit from the band is
/// located by linear interpolation inside the step where it happens.
///
/// Integration stops once every element of rho is within 1% of the band of
/// the steady state, since all Liouvillian modes then only decay further.
inline double steady_time(const AtomSpecies& atom, complex omega_p, complex omega_c,
                          const DensityMatrix& rho0, const SteadyTimeOptions& opt = {}) {
  if (!(opt.epsilon > 0.0 && opt.epsilon <= 0.1))
    throw Error("steady_time: epsilon must lie in (0, 0.1]");
  const DensityMatrix ss = steady_state(atom, omega_p, omega_c);
  const double target = ss.population(2);
  const double band = opt.epsilon * std::max(target, 1e-3);

  double t_exit = 0.0;
  double prev_t = 0.0, prev_dev = 0.0;
  bool inside = false;
  bool settled = false;
  integrate(rho0, atom, omega_p, omega_c, opt.horizon, opt.evolve,
            [&](double t, const DensityMatrix& rho) {
              const double dev = rho.population(2) - target;
              const bool in_band = std::abs(dev) <= band;
              if (t == 0.0) {
                inside = in_band;
              } else if (!in_band) {
                inside = false;
              } else if (!inside) {
                // Entered the band inside (prev_t, t]; interpolate the edge.
                const double edge = prev_dev > 0.0 ? band : -band;
                const double s = (prev_dev - edge) / (prev_dev - dev);
                t_exit = prev_t + std::clamp(s, 0.0, 1.0) * (t - prev_t);
                inside = true;
              }
              prev_t = t;
              prev_dev = dev;
              if (inside && (rho.m - ss.m).cwiseAbs().maxCoeff() < 1e-2 * band) {
                settled = true;
                return false;
              }
              return true;
            });
  if (!settled) {
    throw NotConverged("rho22 did not settle within the " + std::to_string(opt.horizon * 1e3) +
                       " ms horizon");
  }
  return t_exit;
}

}  // namespace lambdaloc
