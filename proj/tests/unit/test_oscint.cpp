#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <sstream>

#include "deltasieve/oscint.hpp"

using namespace deltasieve;
using namespace deltasieve::oscint;

namespace {
constexpr double kPi = std::numbers::pi;
}

TEST(IEval, NearlyFlatPhase) { EXPECT_NEAR(std::abs(I_eval({0.0, 1e-8}) - cplx(1, 0)), 0.0, 1e-4); }

TEST(IEval, GaussianTransform) {
  for (double a : {-2.0, -0.5, 0.3, 1.5}) EXPECT_NEAR(std::abs(I_eval({a, 1e-9}) - std::exp(-kPi * a * a)), 0.0, 1e-5);
}

TEST(IEval, RealForEvenWeight) {
  for (double a : {-4.0, 0.7}) EXPECT_NEAR(I_eval({a, 2.0}).imag(), 0.0, 1e-9);
}

TEST(IEval, FinerReferenceAgrees) {
  const OscillatoryProblem p{-1.0, 1.0};
  OscillatoryProblem fine = p;
  fine.tolerance = 1e-11;
  QuadratureOptions opts;
  opts.panel_fraction = 0.025;
  EXPECT_NEAR(std::abs(I_quad(p).value - I_quad(fine, opts).value), 0.0, 1e-8);
}

TEST(IEval, Validation) {
  EXPECT_THROW(I_eval({0.0, -1.0}), DomainError);
  OscillatoryProblem p;
  p.tolerance = 1e-3;
  EXPECT_THROW(I_eval(p), DomainError);
}

TEST(GEval, ZeroForNonNegativeAlpha) {
  EXPECT_EQ(G_eval({0.5, 1.0}), cplx(0, 0));
  EXPECT_EQ(G_eval({0.0, 1.0}), cplx(0, 0));
}

TEST(GEval, StationaryPointsAtMinusThree) {
  const auto sp = stationary_point(-3.0, 1.0);
  EXPECT_NEAR(sp.x0, 1.0, 1e-15);
  EXPECT_NEAR(sp.amplitude, std::pow(2.0, -0.5) * std::pow(3.0, -0.5), 1e-15);
  EXPECT_NEAR(sp.phase, 2.0, 1e-14);
  // Weight value e^{-pi} at each point, two conjugate contributions.
  EXPECT_NEAR(std::abs(G_eval({-3.0, 1.0})), 2.0 * sp.amplitude * std::exp(-kPi) * std::abs(std::cos(2 * kPi * (2.0 - 0.125))),
              1e-12);
}

TEST(I1G1, FiniteDifference) {
  const auto fd = finite_difference_check({-3.0, 1.0}, 1.0);
  EXPECT_TRUE(fd.ok()) << fd.deviation;
  EXPECT_EQ(I1_G1_eval({0.5, 1.0}, 1.0).G1, cplx(0, 0));
}

TEST(I1G1, AmplitudeRatio) {
  // At alpha = -3, beta = 1, s = 1 both main terms share the e(phase) factors; the ratio is 4 pi.
  const OscillatoryProblem p{-3.0, 1.0};
  const auto r = I1_G1_eval(p, 1.0);
  EXPECT_NEAR(std::abs(r.G1) / std::abs(G_eval(p)), 4.0 * kPi, 1e-9);
}

TEST(ParamMap, Examples) {
  ParamContext c;
  EXPECT_EQ(param_map(c).alpha, 0.0);
  c.u = 3.0;
  const auto unit = param_map(c);
  EXPECT_DOUBLE_EQ(unit.alpha, 3.0);
  EXPECT_DOUBLE_EQ(unit.beta, 1.0);
  EXPECT_DOUBLE_EQ(unit.K, 1.0);
  c = {};
  c.X = 10;
  c.s = 1e3;
  c.u = 2;
  const auto m = param_map(c);
  EXPECT_DOUBLE_EQ(m.alpha, 200.0);
  EXPECT_DOUBLE_EQ(m.beta, 1.0);
}

TEST(OmegaScan, ZeroRowAndTail) {
  const auto rep = omega_scan(default_omega_config());
  EXPECT_TRUE(rep.ok());
  EXPECT_GT(rep.asserted, 0);
  for (const auto& r : rep.rows) {
    if (r.regime == OmegaRegime::zero) EXPECT_LE(r.row.omega_abs, 1.0 + 1e-9);
  }
  std::ostringstream os;
  write_omega_csv(os, rep);
  EXPECT_EQ(os.str().rfind("u,s,alpha,beta,K_cut,I_re,I_im,G_re,G_im,omega_abs,envelope", 0), 0u);
}

TEST(StationScan, EnvelopeRatioBounded) {
  StationScanConfig cfg;
  cfg.points = 12;
  const auto rep = station_scan(cfg);
  EXPECT_TRUE(rep.ok()) << rep.max_ratio << " vs median " << rep.median_ratio;
  EXPECT_GT(rep.fitted_C, 0.0);
}
