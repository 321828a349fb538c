#include <cmath>
#include <numbers>
#include <sstream>

#include "deltasieve/oscint.hpp"
#include "timing.hpp"

namespace deltasieve::verify {

using namespace oscint;

namespace {

std::string ab(double alpha, double beta) {
  std::ostringstream os;
  os << "alpha=" << alpha << " beta=" << beta;
  return os.str();
}

}  // namespace

Check check_plancherel() {
  Timed t("plancherel", 1e-5);
  for (int i = -12; i <= 12; ++i) {
    const double alpha = 0.25 * i;
    const cplx I = I_eval({alpha, 1e-9});
    t.check.compare(std::abs(I - std::exp(-std::numbers::pi * alpha * alpha)), [&] { return ab(alpha, 1e-9); });
  }
  return t.done();
}

Check check_I1_finite_difference() {
  Timed t("I1_finite_difference", 1e-5);
  for (double alpha : {-3.0, -1.0, -0.3, 0.0, 0.5, 2.0}) {
    for (double beta : {0.5, 1.0, 3.0}) {
      for (double s : {1.0, 2.5}) {
        const auto fd = finite_difference_check({alpha, beta}, s);
        t.check.compare(fd.deviation / (1.0 + std::abs(fd.I1)),
                        [&] { return ab(alpha, beta) + " s=" + std::to_string(s); });
      }
    }
  }
  return t.done();
}

Check check_G_zero() {
  Timed t("G_zero", 0.0);
  for (double alpha : {0.0, 1e-300, 1e-12, 0.5, 1.0, 10.0, 1e6}) {
    for (double beta : {1e-6, 1.0, 1e3}) {
      const cplx G = G_eval({alpha, beta});
      t.check.expect(G.real() == 0.0 && G.imag() == 0.0, [&] { return ab(alpha, beta); });
    }
  }
  return t.done();
}

Check check_quadrature_refinement() {
  Timed t("quadrature_refinement", 1e-8);
  QuadratureOptions fine;
  fine.panel_fraction /= 10.0;
  for (double alpha : {-20.0, -4.0, -1.0, 0.0, 3.0}) {
    for (double beta : {0.1, 1.0, 4.0}) {
      const OscillatoryProblem p{alpha, beta};
      OscillatoryProblem p10 = p;
      p10.tolerance /= 10.0;
      const cplx a = I_quad(p).value, b = I_quad(p10, fine).value;
      t.check.compare(std::abs(a - b), [&] { return ab(alpha, beta); });
    }
  }
  return t.done();
}

Check check_reflection() {
  // z -> -z turns the integral of w^(-z) e(beta z^3 + alpha z) into conj(I) for a real weight.
  Timed t("reflection", 1e-9);
  for (const auto& w : {SchwartzWeight::gaussian(), SchwartzWeight::scaled_gaussian(0.7)}) {
    for (double alpha : {-5.0, -0.5, 0.0, 2.0}) {
      for (double beta : {0.3, 2.0}) {
        OscillatoryProblem p{alpha, beta, w};
        const QuadratureResult fwd = I_quad(p);
        const QuadratureResult back = integrate_cubic_phase([&](double z) { return cplx(w.fourier(-z), 0.0); },
                                                            -alpha, -beta, fwd.radius, p.tolerance);
        t.check.compare(std::abs(back.value - std::conj(fwd.value)),
                        [&] { return ab(alpha, beta) + " weight=" + w.name(); });
      }
    }
  }
  return t.done();
}

Check check_station_envelope() {
  Timed t("station_envelope", 10.0);
  const auto rep = station_scan({});
  const double ratio = rep.median_ratio > 0 ? rep.max_ratio / rep.median_ratio : INFINITY;
  t.check.compare(ratio, [&] {
    std::ostringstream os;
    os << "station_envelope max/median=" << ratio << " max=" << rep.max_ratio << " median=" << rep.median_ratio;
    return os.str();
  });
  return t.done();
}

Check check_omega_tail() {
  Timed t("omega_tail", 1e-6);
  const auto rep = omega_scan(default_omega_config());
  for (const auto& r : rep.rows) {
    if (!r.asserted) continue;
    t.check.compare(r.row.omega_abs, [&] {
      std::ostringstream os;
      os << "|u|>K u=" << r.row.u << " s=" << r.row.s << " " << ab(r.row.alpha, r.row.beta);
      return os.str();
    });
  }
  return t.done();
}

SuiteReport oscint_suite(const Options&) {
  return {"oscint",
          {check_plancherel(), check_I1_finite_difference(), check_G_zero(), check_quadrature_refinement(),
           check_reflection(), check_station_envelope(), check_omega_tail()}};
}

}  // namespace deltasieve::verify
