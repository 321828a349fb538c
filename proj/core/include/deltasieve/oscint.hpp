#pragma once

#include <complex>
#include <functional>
#include <ostream>
#include <vector>

#include "deltasieve/errors.hpp"
#include "deltasieve/weight.hpp"

namespace deltasieve::oscint {

using cplx = std::complex<double>;

struct OscillatoryProblem {
  double alpha = 0.0;
  double beta = 1.0;
  SchwartzWeight weight = SchwartzWeight::gaussian();
  double tolerance = 1e-10;

  void validate() const;
};

struct QuadratureOptions {
  // Panel width as a fraction of the local period of beta z^3 + alpha z.
  double panel_fraction = 0.25;
  long max_evaluations = 200'000'000;
};

struct QuadratureResult {
  cplx value;
  double error_estimate = 0.0;
  long evaluations = 0;
  double radius = 0.0;  // Z
};

// Integral of amp(z) e(-beta z^3 - alpha z) over [-Z, Z].
QuadratureResult integrate_cubic_phase(const std::function<cplx(double)>& amp, double alpha, double beta, double Z,
                                       double tolerance, const QuadratureOptions& opts = {});

// I(alpha, beta) = integral of weight^(z) e(-beta z^3 - alpha z) dz.
QuadratureResult I_quad(const OscillatoryProblem& p, const QuadratureOptions& opts = {});
cplx I_eval(const OscillatoryProblem& p);

// Stationary-phase main term; exactly 0 for alpha >= 0.
cplx G_eval(const OscillatoryProblem& p);

// Pieces of G for alpha < 0.
struct StationaryPoint {
  double x0;         // |alpha|^(1/2) / (3 beta)^(1/2)
  double phase;      // 2 |alpha|^(3/2) / (3^(3/2) beta^(1/2))
  double amplitude;  // 2^(-1/2) (3 |alpha| beta)^(-1/4)
};
StationaryPoint stationary_point(double alpha, double beta);

// d/ds I under alpha ~ s^2, beta ~ s^4, and its main term.
struct I1G1 {
  cplx I1;
  cplx G1;
};
I1G1 I1_G1_eval(const OscillatoryProblem& p, double s);

struct FiniteDifferenceCheck {
  cplx I1;
  cplx fd;
  double deviation;
  double bound;  // 1e-5 (1 + |I1|)
  bool ok() const { return deviation <= bound; }
};
// Five-point central difference of s -> I(alpha (s'/s)^2, beta (s'/s)^4).
FiniteDifferenceCheck finite_difference_check(const OscillatoryProblem& p, double s);

struct ParamContext {
  double u = 0.0;
  double s = 1.0;
  double X = 1.0;
  double k2 = 1.0, k3 = 1.0, h = 1.0, d = 1.0;
  double m_star = 1.0, m_tilde = 1.0;
};
struct ParamMap {
  double alpha;
  double beta;
  double K;
};
// alpha = u s^2/(X^4 k3^2 |m* m~|^2), beta = k2^2 h^2 d^2 s^4/(X^12 |m* m~|^2),
// K = (k2 k3 h d s)^2 / X^8 (epsilon = 0).
ParamMap param_map(const ParamContext& ctx);

enum class OmegaRegime { zero, middle, tail };
const char* regime_name(OmegaRegime r);

struct ScanRow {
  double u;  // NaN outside omega scans
  double s;
  double alpha;
  double beta;
  double K_cut;
  cplx I;
  cplx G;
  double omega_abs;
  double envelope;
};

struct OmegaRow {
  ScanRow row;
  OmegaRegime regime;
  bool asserted;
  bool passed;
};

struct OmegaScanConfig {
  ParamContext base;  // u and s are overwritten from the grids
  std::vector<double> s_values;
  std::vector<double> u_values;
  double tolerance = 1e-10;
  double assert_threshold = 1e-6;
  double beta_floor_exponent = 0.1;  // assert only when beta >= X^(-0.1)
};

struct OmegaScanReport {
  std::vector<OmegaRow> rows;
  int asserted = 0;
  int violations = 0;
  double max_middle_ratio = 0.0;  // |Omega| / envelope over 0 < |u| <= K
  bool ok() const { return violations == 0; }
};

// Default grid: X = 2, s in {8, 16, 32}, u in [-12, 12].
OmegaScanConfig default_omega_config();
OmegaScanReport omega_scan(const OmegaScanConfig& cfg);

struct StationScanConfig {
  std::vector<double> betas{0.5, 1.0, 2.0, 5.0};
  int points = 40;
  double delta = 10.0;
  // alpha runs log-spaced over [-hi_factor beta, -lo_factor beta].
  double lo_factor = 0.01;
  double hi_factor = 0.0;  // 0: 3 z_d^2 with z_d the weight decay radius
  double tolerance = 1e-10;
  SchwartzWeight weight = SchwartzWeight::gaussian();
};

struct StationScanReport {
  std::vector<ScanRow> rows;
  double fitted_C = 0.0;  // max of |I - G| / envelope
  double median_ratio = 0.0;
  double max_ratio = 0.0;
  bool ok() const { return max_ratio <= 10.0 * median_ratio; }
};
StationScanReport station_scan(const StationScanConfig& cfg);

void write_scan_csv(std::ostream& os, const std::vector<ScanRow>& rows);
void write_omega_csv(std::ostream& os, const OmegaScanReport& report);

}  // namespace deltasieve::oscint
