#include <cmath>
#include <vector>

#include <gtest/gtest.h>

#include "lambdaloc/feasibility.hpp"

using namespace lambdaloc;

namespace {

BeamSet base(double omega_p0_mhz, double omega_c10_mhz = 150.0) {
  BeamSet b;
  b.omega_p0 = from_mhz(omega_p0_mhz);
  b.omega_c10 = from_mhz(omega_c10_mhz);
  b.width = 5e-6;
  b.theta_c1 = pi;
  return b;
}

std::vector<double> scan_grid(int n = 60, double r_max = 6e-6) {
  std::vector<double> r(n);
  for (int i = 0; i < n; ++i) r[i] = r_max * i / (n - 1.0);
  return r;
}

}  // namespace

TEST(Feasibility, BudgetAt200nm) {
  const double t = t_s_max(base(3.0), AtomSpecies::rb87(1e-6));
  EXPECT_NEAR(t, 1.4458749470962878e-06, 1e-18);
  EXPECT_NEAR(t, 1.43e-6, 0.05e-6);
}

TEST(Feasibility, BudgetScaling) {
  const AtomSpecies a = AtomSpecies::rb87(1e-6);
  EXPECT_NEAR(t_s_max(base(1.5), a), 0.5 * t_s_max(base(3.0), a), 1e-18);
  EXPECT_NEAR(t_s_max(base(3.0), AtomSpecies::rb87(4e-6)), 0.5 * t_s_max(base(3.0), a), 1e-18);
  EXPECT_NEAR(t_s_max(base(3.0), a, 5.0), 2.0 * t_s_max(base(3.0), a), 1e-18);
  EXPECT_THROW(t_s_max(base(3.0), AtomSpecies::rb87(0.0)), InfiniteBudget);
}

TEST(Feasibility, BeamsForRadiusPlacesZero) {
  const BeamSet b = beams_for_radius(base(3.0), 3.7e-6);
  EXPECT_NEAR(predicted_position(b).r, 3.7e-6, 1e-18);
  EXPECT_NEAR(std::abs(hybrid_coupling(b, predicted_position(b).cartesian())), 0.0,
              1e-8 * b.omega_c10);
}

TEST(Feasibility, ReportIsConsistent) {
  const AtomSpecies a = AtomSpecies::rb87(1e-6);
  const BeamSet b = base(3.0);
  const FeasibilityReport rep = scan_localizable_radius(b, a, scan_grid(), {}, 0);
  EXPECT_EQ(rep.a_r, predicted_fwhm(b));
  EXPECT_EQ(rep.t_s_max, rep.a_r / (10.0 * rep.v_p));
  ASSERT_TRUE(rep.localizable_radius);
  std::size_t k = 0;
  while (rep.r_loc[k] < *rep.localizable_radius) EXPECT_LE(rep.t_s[k++], rep.t_s_max);
  EXPECT_LE(rep.t_s[k], rep.t_s_max);
  ASSERT_LT(k + 1, rep.r_loc.size());
  EXPECT_GT(rep.t_s[k + 1], rep.t_s_max);
  for (std::size_t i = 1; i < rep.t_s.size(); ++i) EXPECT_GE(rep.t_s[i], rep.t_s[i - 1]) << i;
}

TEST(Feasibility, WeakProbeLocalizesNowhere) {
  const FeasibilityReport rep =
      scan_localizable_radius(base(1.5), AtomSpecies::rb87(1e-6), scan_grid(13), {}, 0);
  EXPECT_FALSE(rep.localizable_radius);
}

TEST(Feasibility, DoublingAllDrivesAtFixedWidthSpeedsUpCore) {
  const AtomSpecies a = AtomSpecies::rb87(1e-6);
  const double t150 = steady_time_at_localization(base(3.0, 150.0), a);
  const double t300 = steady_time_at_localization(base(6.0, 300.0), a);
  EXPECT_EQ(predicted_fwhm(base(3.0, 150.0)), predicted_fwhm(base(6.0, 300.0)));
  EXPECT_LT(t300, 0.75 * t150);
}

TEST(Feasibility, BestResolutionIsOnTheBudgetEdge) {
  const AtomSpecies a = AtomSpecies::rb87(1e-6);
  FeasibilityOptions opt;
  const double ar = best_resolution(base(3.0), a, opt);
  const double omega_p0 = ar / (2.0 * 5e-6) * from_mhz(150.0);
  BeamSet at = base(0.0);
  at.omega_p0 = omega_p0;
  EXPECT_LE(steady_time_at_localization(at, a, opt), t_s_max(at, a));
  BeamSet below = at;
  below.omega_p0 = omega_p0 * (1.0 - 2e-9 / ar);
  EXPECT_GT(steady_time_at_localization(below, a, opt), t_s_max(below, a));
}

TEST(Feasibility, ScanGridMustIncrease) {
  EXPECT_THROW(scan_localizable_radius(base(3.0), AtomSpecies::rb87(), {1e-6, 1e-6}), Error);
}
