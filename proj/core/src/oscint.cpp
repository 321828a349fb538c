#include "deltasieve/oscint.hpp"

#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <utility>

#include "deltasieve/errors.hpp"
#include "deltasieve/pairwise_sum.hpp"

namespace deltasieve::oscint {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kEps = std::numeric_limits<double>::epsilon();

// Gauss-Kronrod 15/7 nodes on [-1, 1], non-negative half.
constexpr std::array<double, 8> kXgk = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851, 0.864864423359769072789712788640926,
    0.741531185599394439863864773280788, 0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.0};
constexpr std::array<double, 8> kWgk = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204, 0.104790010322250183839876322541518,
    0.140653259715525918745189590510238, 0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
// Gauss 7-point weights for kXgk[1], kXgk[3], kXgk[5], kXgk[7].
constexpr std::array<double, 4> kWg = {0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
                                       0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

cplx e_of(double x) {
  x -= std::floor(x);
  const double a = 2.0 * kPi * x;
  return {std::cos(a), std::sin(a)};
}

struct Panel {
  double a, b;
  int depth;
};

struct Integrator {
  const std::function<cplx(double)>& amp;
  double alpha, beta;
  long budget;
  long evals = 0;

  cplx f(double z) {
    ++evals;
    return amp(z) * e_of(-beta * z * z * z - alpha * z);
  }

  std::pair<cplx, double> gk15(double a, double b) {
    if (evals + 15 > budget) throw ConvergenceError("oscillatory quadrature exceeded its evaluation budget");
    const double c = 0.5 * (a + b), h = 0.5 * (b - a);
    const cplx fc = f(c);
    cplx k = fc * kWgk[7];
    cplx g = fc * kWg[3];
    for (int i = 0; i < 7; ++i) {
      const cplx s = f(c - h * kXgk[i]) + f(c + h * kXgk[i]);
      k += s * kWgk[i];
      if (i % 2 == 1) g += s * kWg[i / 2];
    }
    return {k * h, std::abs((k - g) * h)};
  }
};

double phase_slope(double alpha, double beta, double z) { return std::abs(3.0 * beta * z * z + alpha); }

}  // namespace

void OscillatoryProblem::validate() const {
  if (!(beta > 0.0) || !std::isfinite(beta)) throw DomainError("oscillatory problem: beta must be positive");
  if (!std::isfinite(alpha)) throw DomainError("oscillatory problem: alpha must be finite");
  if (!(tolerance > 0.0) || tolerance > 1e-6) throw DomainError("oscillatory problem: tolerance must lie in (0, 1e-6]");
}

QuadratureResult integrate_cubic_phase(const std::function<cplx(double)>& amp, double alpha, double beta, double Z,
                                       double tolerance, const QuadratureOptions& opts) {
  Integrator in{amp, alpha, beta, opts.max_evaluations};
  PairwiseSum<cplx> total;
  double err = 0.0;
  const double per_length = tolerance / (2.0 * Z);
  // Cut [-Z, Z] into panels no wider than panel_fraction of the local period.
  double z = -Z;
  std::vector<Panel> stack;
  while (z < Z) {
    double w = std::min(0.5, Z - z);
    while (w * std::max(phase_slope(alpha, beta, z), phase_slope(alpha, beta, z + w)) > opts.panel_fraction) w *= 0.5;
    const double next = (Z - (z + w) < 1e-12 * Z) ? Z : z + w;
    stack.push_back({z, next, 0});
    while (!stack.empty()) {
      Panel p = stack.back();
      stack.pop_back();
      auto [v, e] = in.gk15(p.a, p.b);
      const double allowed = std::max(per_length * (p.b - p.a), 50.0 * kEps * std::abs(v));
      if (e <= allowed || p.depth >= 40) {
        if (e > allowed) throw ConvergenceError("oscillatory quadrature hit its subdivision depth");
        total.add(v);
        err += e;
        continue;
      }
      const double mid = 0.5 * (p.a + p.b);
      // Right half first so the left half is integrated first.
      stack.push_back({mid, p.b, p.depth + 1});
      stack.push_back({p.a, mid, p.depth + 1});
    }
    z = next;
  }
  return {total.total(), err, in.evals, Z};
}

QuadratureResult I_quad(const OscillatoryProblem& p, const QuadratureOptions& opts) {
  p.validate();
  const double Z = std::max(1.0, p.weight.fourier_radius(p.tolerance / 10.0));
  const SchwartzWeight w = p.weight;
  std::function<cplx(double)> amp = [w](double z) { return cplx{w.fourier(z), 0.0}; };
  return integrate_cubic_phase(amp, p.alpha, p.beta, Z, p.tolerance / 2.0, opts);
}

cplx I_eval(const OscillatoryProblem& p) { return I_quad(p).value; }

StationaryPoint stationary_point(double alpha, double beta) {
  const double a = std::abs(alpha);
  StationaryPoint sp;
  sp.x0 = std::sqrt(a / (3.0 * beta));
  sp.phase = 2.0 * std::pow(a, 1.5) / (std::pow(3.0, 1.5) * std::sqrt(beta));
  sp.amplitude = 1.0 / (std::sqrt(2.0) * std::pow(3.0 * a * beta, 0.25));
  return sp;
}

cplx G_eval(const OscillatoryProblem& p) {
  p.validate();
  if (p.alpha >= 0.0) return {0.0, 0.0};
  const auto sp = stationary_point(p.alpha, p.beta);
  // At +x0 the phase -beta z^3 + |alpha| z has a maximum, so it carries e(-1/8).
  return sp.amplitude *
         (p.weight.fourier(sp.x0) * e_of(sp.phase - 0.125) + p.weight.fourier(-sp.x0) * e_of(0.125 - sp.phase));
}

I1G1 I1_G1_eval(const OscillatoryProblem& p, double s) {
  p.validate();
  if (!(s > 0.0)) throw DomainError("I1: s must be positive");
  const double alpha = p.alpha, beta = p.beta;
  const SchwartzWeight w = p.weight;
  auto poly = [=](double z) { return -4.0 * beta / s * z * z * z - 2.0 * alpha / s * z; };
  // Radius where weight times the polynomial factor drops below tol/10.
  double Z = std::max(1.0, w.fourier_radius(p.tolerance / 10.0));
  for (int it = 0; it < 4; ++it) {
    Z = std::max(1.0, w.fourier_radius(p.tolerance / (10.0 * 2.0 * kPi * (1.0 + std::abs(poly(Z))))));
  }
  std::function<cplx(double)> amp = [=](double z) { return cplx{0.0, 2.0 * kPi} * (w.fourier(z) * poly(z)); };
  I1G1 out;
  out.I1 = integrate_cubic_phase(amp, alpha, beta, Z, p.tolerance / 2.0).value;
  if (alpha >= 0.0) {
    out.G1 = {0.0, 0.0};
  } else {
    const auto sp = stationary_point(alpha, beta);
    // d/ds of the phase 2|alpha|^(3/2)/(3^(3/2) beta^(1/2)) is phase / s.
    const double amp1 = sp.amplitude * sp.phase / s;
    out.G1 = cplx{0.0, 2.0 * kPi} * amp1 *
             (w.fourier(sp.x0) * e_of(sp.phase - 0.125) - w.fourier(-sp.x0) * e_of(0.125 - sp.phase));
  }
  return out;
}

FiniteDifferenceCheck finite_difference_check(const OscillatoryProblem& p, double s) {
  p.validate();
  OscillatoryProblem q = p;
  q.tolerance = std::min(p.tolerance, 1e-12);
  const double h = 1e-3 * s;
  auto at = [&](double sp) {
    OscillatoryProblem r = q;
    const double t = sp / s;
    r.alpha = p.alpha * t * t;
    r.beta = p.beta * t * t * t * t;
    return I_eval(r);
  };
  FiniteDifferenceCheck out;
  out.I1 = I1_G1_eval(q, s).I1;
  out.fd = (-at(s + 2 * h) + 8.0 * at(s + h) - 8.0 * at(s - h) + at(s - 2 * h)) / (12.0 * h);
  out.deviation = std::abs(out.I1 - out.fd);
  out.bound = 1e-5 * (1.0 + std::abs(out.I1));
  return out;
}

ParamMap param_map(const ParamContext& c) {
  const double M = std::abs(c.m_star * c.m_tilde);
  if (c.X == 0.0 || c.k3 == 0.0 || M == 0.0) throw DomainError("param_map: zero denominator");
  if (!(c.s > 0.0)) throw DomainError("param_map: s must be positive");
  const double X4 = std::pow(c.X, 4), X8 = X4 * X4, X12 = X8 * X4;
  ParamMap out;
  out.alpha = c.u * c.s * c.s / (X4 * c.k3 * c.k3 * M * M);
  const double kh = c.k2 * c.h * c.d * c.s * c.s;
  out.beta = kh * kh / (X12 * M * M);
  const double kk = c.k2 * c.k3 * c.h * c.d * c.s;
  out.K = kk * kk / X8;
  return out;
}

}  // namespace deltasieve::oscint
