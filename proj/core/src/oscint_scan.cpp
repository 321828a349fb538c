#include <algorithm>
#include <cmath>
#include <limits>

#include "deltasieve/csv.hpp"
#include "deltasieve/errors.hpp"
#include "deltasieve/oscint.hpp"
#include "deltasieve/parallel.hpp"

namespace deltasieve::oscint {

namespace {
constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();
// Weight argument beyond which the Gaussian is below 1e-9.
double decay_threshold(const SchwartzWeight& w) { return w.fourier_radius(1e-9); }
}  // namespace

const char* regime_name(OmegaRegime r) {
  switch (r) {
    case OmegaRegime::zero:
      return "u=0";
    case OmegaRegime::middle:
      return "0<|u|<=K";
    case OmegaRegime::tail:
      return "|u|>K";
  }
  return "?";
}

OmegaScanConfig default_omega_config() {
  OmegaScanConfig cfg;
  cfg.base.X = 2.0;
  cfg.s_values = {8.0, 16.0, 32.0};
  for (int u = -12; u <= 12; ++u) cfg.u_values.push_back(u);
  return cfg;
}

OmegaScanReport omega_scan(const OmegaScanConfig& cfg) {
  if (cfg.s_values.empty() || cfg.u_values.empty()) throw DomainError("omega_scan: empty grid");
  const SchwartzWeight weight = SchwartzWeight::gaussian();
  const double zd = decay_threshold(weight);
  const double beta_floor = std::pow(cfg.base.X, -cfg.beta_floor_exponent);
  const double M = std::abs(cfg.base.m_star * cfg.base.m_tilde);

  OmegaScanReport rep;
  rep.rows.resize(cfg.s_values.size() * cfg.u_values.size());
  parallel_for(rep.rows.size(), default_workers(), [&](std::size_t idx) {
    ParamContext ctx = cfg.base;
    ctx.s = cfg.s_values[idx / cfg.u_values.size()];
    ctx.u = cfg.u_values[idx % cfg.u_values.size()];
    const ParamMap pm = param_map(ctx);
    OscillatoryProblem p{pm.alpha, pm.beta, weight, cfg.tolerance};
    OmegaRow& r = rep.rows[idx];
    r.row = {ctx.u, ctx.s, pm.alpha, pm.beta, pm.K, I_eval(p), G_eval(p), 0.0, 0.0};
    r.row.omega_abs = std::abs(r.row.I - r.row.G);
    const double au = std::abs(ctx.u);
    if (au == 0.0) {
      r.regime = OmegaRegime::zero;
      r.row.envelope = 1.0;
    } else if (au <= pm.K) {
      r.regime = OmegaRegime::middle;
      r.row.envelope = std::pow(cfg.base.X, 4) * M * M / (au * ctx.s * ctx.s);
    } else {
      r.regime = OmegaRegime::tail;
      r.row.envelope = cfg.assert_threshold;
    }
    // With epsilon = 0 the cut |u| > K only puts the stationary point at
    // weight argument 3^(-1/2); assert once it is past the decay threshold.
    const double x0 = std::sqrt(std::abs(pm.alpha) / (3.0 * pm.beta));
    r.asserted = r.regime == OmegaRegime::tail && pm.beta >= beta_floor && x0 >= zd;
    r.passed = !r.asserted || r.row.omega_abs < cfg.assert_threshold;
  });
  for (const auto& r : rep.rows) {
    if (r.asserted) ++rep.asserted;
    if (!r.passed) ++rep.violations;
    if (r.regime == OmegaRegime::middle) rep.max_middle_ratio = std::max(rep.max_middle_ratio, r.row.omega_abs / r.row.envelope);
  }
  return rep;
}

StationScanReport station_scan(const StationScanConfig& cfg) {
  if (cfg.points < 2 || cfg.betas.empty()) throw DomainError("station_scan: need at least two points per beta");
  if (!(cfg.delta > 1.0)) throw DomainError("station_scan: Delta must exceed 1");
  const double hi = cfg.hi_factor > 0.0 ? cfg.hi_factor : 3.0 * std::pow(decay_threshold(cfg.weight), 2);
  if (!(cfg.lo_factor > 0.0) || !(hi > cfg.lo_factor)) throw DomainError("station_scan: bad alpha range");
  if (hi > cfg.delta * cfg.delta) throw DomainError("station_scan: box exceeds |alpha| <= Delta^2 beta");

  StationScanReport rep;
  const std::size_t n = static_cast<std::size_t>(cfg.points);
  rep.rows.resize(cfg.betas.size() * n);
  parallel_for(rep.rows.size(), default_workers(), [&](std::size_t idx) {
    const double beta = cfg.betas[idx / n];
    if (beta < 1.0 / cfg.delta) throw DomainError("station_scan: need beta >= 1/Delta");
    const double t = static_cast<double>(idx % n) / static_cast<double>(n - 1);
    const double alpha = -beta * cfg.lo_factor * std::pow(hi / cfg.lo_factor, t);
    OscillatoryProblem p{alpha, beta, cfg.weight, cfg.tolerance};
    ScanRow& r = rep.rows[idx];
    r = {kNaN, kNaN, alpha, beta, kNaN, I_eval(p), G_eval(p), 0.0, 0.0};
    r.omega_abs = std::abs(r.I - r.G);
    r.envelope = cfg.delta * std::log(2.0 + beta) / std::abs(alpha);
  });
  std::vector<double> ratios;
  for (const auto& r : rep.rows) ratios.push_back(r.omega_abs / r.envelope);
  std::sort(ratios.begin(), ratios.end());
  const std::size_t m = ratios.size();
  rep.median_ratio = m % 2 ? ratios[m / 2] : 0.5 * (ratios[m / 2 - 1] + ratios[m / 2]);
  rep.max_ratio = ratios.back();
  rep.fitted_C = rep.max_ratio;
  return rep;
}

void write_scan_csv(std::ostream& os, const std::vector<ScanRow>& rows) {
  csv::write_row(os, {"u", "s", "alpha", "beta", "K_cut", "I_re", "I_im", "G_re", "G_im", "omega_abs", "envelope"});
  for (const auto& r : rows) {
    csv::write_row(os, {csv::num(r.u), csv::num(r.s), csv::num(r.alpha), csv::num(r.beta), csv::num(r.K_cut),
                        csv::num(r.I.real()), csv::num(r.I.imag()), csv::num(r.G.real()), csv::num(r.G.imag()),
                        csv::num(r.omega_abs), csv::num(r.envelope)});
  }
}

void write_omega_csv(std::ostream& os, const OmegaScanReport& report) {
  std::vector<ScanRow> rows;
  rows.reserve(report.rows.size());
  for (const auto& r : report.rows) rows.push_back(r.row);
  write_scan_csv(os, rows);
}

}  // namespace deltasieve::oscint
