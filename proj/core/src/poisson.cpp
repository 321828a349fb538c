#include <cmath>
#include <map>

#include "deltasieve/expsum.hpp"
#include "deltasieve/pairwise_sum.hpp"

namespace deltasieve::expsum {

namespace {
constexpr double kTermBudget = 1e8;

i64 range_bound(double radius, double scale) {
  const double r = radius * scale;
  if (r > kTermBudget) throw LimitExceeded("truncation budget", "lattice range exceeds 10^8 terms");
  return static_cast<i64>(std::floor(r));
}
}  // namespace

PoissonCheckResult poisson_check(const CongruenceFrame& frame, double X, const SchwartzWeight& weight,
                                 double truncation) {
  if (!(X > 0.0)) throw DomainError("poisson_check: X must be positive");
  if (X > 4.0) throw LimitExceeded("X", "poisson_check needs X <= 4");
  if (!(truncation > 0.0 && truncation < 1e-3)) throw DomainError("poisson_check: truncation out of range");
  const DoubleSumSolutions sols(frame);
  const i64 q = sols.modulus();
  const double X4 = std::pow(X, 4), X6 = std::pow(X, 6);
  const double sx = frame.k2 * frame.h / X6;  // Gamma argument per unit x
  const double sy = frame.k3 * frame.h / X4;

  // Per-class weight sums W[c] = sum over x = c mod l^2 of Gamma(sx x).
  const i64 xmax = range_bound(weight.value_radius(truncation), 1.0 / sx);
  const i64 ymax = range_bound(weight.value_radius(truncation), 1.0 / sy);
  std::vector<PairwiseSum<double>> wx(static_cast<std::size_t>(q));
  for (i64 x = -xmax; x <= xmax; ++x) wx[arith::reduce(x, q)].add(weight.value(sx * static_cast<double>(x)));
  std::vector<double> W(static_cast<std::size_t>(q));
  for (i64 c = 0; c < q; ++c) W[c] = wx[c].total();

  std::vector<std::vector<i64>> by_d(static_cast<std::size_t>(q));
  for (const auto& [c, d] : sols.pairs()) by_d[d].push_back(c);

  PairwiseSum<double> lhs;
  for (i64 y = -ymax; y <= ymax; ++y) {
    const auto& cs = by_d[arith::reduce(y, q)];
    if (cs.empty()) continue;
    double inner = 0.0;
    for (i64 c : cs) inner += W[c];
    lhs.add(weight.value(sy * static_cast<double>(y)) * inner);
  }

  const double tx = X6 / (frame.k2 * frame.h * static_cast<double>(q));
  const double ty = X4 / (frame.k3 * frame.h * static_cast<double>(q));
  const i64 mmax = range_bound(weight.fourier_radius(truncation), 1.0 / tx);
  const i64 nmax = range_bound(weight.fourier_radius(truncation), 1.0 / ty);
  std::map<std::pair<i64, i64>, cplx> cache;
  PairwiseSum<cplx> rhs;
  for (i64 m = -mmax; m <= mmax; ++m) {
    const double gm = weight.fourier(tx * static_cast<double>(m));
    for (i64 n = -nmax; n <= nmax; ++n) {
      const auto key = std::make_pair(arith::reduce(m, q), arith::reduce(n, q));
      auto it = cache.find(key);
      if (it == cache.end()) it = cache.emplace(key, sols.evaluate(key.first, key.second).value).first;
      rhs.add(gm * weight.fourier(ty * static_cast<double>(n)) * it->second);
    }
  }
  const double pref = X6 * X4 / (frame.k2 * frame.k3 * static_cast<double>(frame.h * frame.h) *
                                 static_cast<double>(q) * static_cast<double>(q));
  const cplx rhs_total = pref * rhs.total();

  PoissonCheckResult r{};
  r.lhs = lhs.total();
  r.rhs = rhs_total.real();
  r.delta = std::abs(r.lhs - rhs_total);
  r.lattice_terms = (2 * xmax + 1) + (2 * ymax + 1);
  r.dual_terms = (2 * mmax + 1) * (2 * nmax + 1);
  return r;
}

PoissonCheckResult poisson_check_plain(double s, const SchwartzWeight& weight, double truncation) {
  if (!(s > 0.0)) throw DomainError("poisson_check_plain: s must be positive");
  const i64 xmax = range_bound(weight.value_radius(truncation), s);
  const i64 mmax = range_bound(weight.fourier_radius(truncation), 1.0 / s);
  PairwiseSum<double> lhs, rhs;
  for (i64 x = -xmax; x <= xmax; ++x) lhs.add(weight.value(static_cast<double>(x) / s));
  for (i64 m = -mmax; m <= mmax; ++m) rhs.add(weight.fourier(s * static_cast<double>(m)));
  PoissonCheckResult r{};
  r.lhs = lhs.total();
  r.rhs = s * rhs.total();
  r.delta = std::abs(r.lhs - r.rhs);
  r.lattice_terms = 2 * xmax + 1;
  r.dual_terms = 2 * mmax + 1;
  return r;
}

}  // namespace deltasieve::expsum
