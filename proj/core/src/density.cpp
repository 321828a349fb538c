#include "deltasieve/density.hpp"

#include <cmath>
#include <vector>

#include "deltasieve/mobius_table.hpp"
#include "deltasieve/pairwise_sum.hpp"

namespace deltasieve::density {

using arith::reduce128;

namespace {

bool allowed_modulus(i64 q) {
  if (q <= kMaxSigmaModulus) return true;
  const i64 p = arith::isqrt(q);
  return p * p == q && p <= kMaxSigmaPrime && arith::is_prime(static_cast<u64>(p));
}

}  // namespace

LocalDensity sigma(i64 q) {
  if (q < 1) throw DomainError("sigma: q must be >= 1");
  if (!allowed_modulus(q)) throw LimitExceeded("modulus", "sigma needs q <= 10^4 or q = p^2 with p <= 500");
  std::vector<i64> cubes(static_cast<std::size_t>(q), 0), squares(static_cast<std::size_t>(q), 0);
  for (i64 x = 0; x < q; ++x) {
    ++cubes[reduce128(static_cast<i128>(4) * x % q * x % q * x, q)];
    ++squares[reduce128(static_cast<i128>(-27) * x % q * x, q)];
  }
  i64 count = 0;
  for (i64 v = 0; v < q; ++v) count += cubes[v] * squares[v];
  return {q, count, Rational(count, static_cast<i128>(q) * q)};
}

i64 sigma_enumerate(i64 q) {
  if (q < 1) throw DomainError("sigma_enumerate: q must be >= 1");
  if (q > kMaxEnumerateModulus) throw LimitExceeded("modulus", "sigma_enumerate needs q <= 1000");
  i64 count = 0;
  for (i64 a = 0; a < q; ++a) {
    const i64 a3 = 4 * (a * a % q) * a % q;
    for (i64 b = 0; b < q; ++b) {
      if ((a3 + 27 * (b * b % q)) % q == 0) ++count;
    }
  }
  return count;
}

bool per_prime_identity(i64 p) {
  if (p <= 3 || !arith::is_prime(static_cast<u64>(p))) throw DomainError("per_prime_identity: p must be a prime > 3");
  const i128 P = p, P3 = P * P * P;
  const Rational one(1);
  const Rational lhs = (one - Rational(P, P3 - P + 1)) * (one - Rational(P - 1, P3));
  return lhs == one - Rational(2 * P - 1, P3);
}

bool MuPhiSeries::agrees() const { return std::abs(series - product) <= tail_bound; }

MuPhiSeries mu_phi_series(i64 h, i64 P, i64 T) {
  if (h < 1) throw DomainError("mu_phi_series: h must be >= 1");
  if (T < 1 || T > 10'000'000) throw LimitExceeded("terms", "mu_phi_series needs 1 <= T <= 10^7");
  if (P < 2 || P > 100'000'000) throw LimitExceeded("P", "mu_phi_series needs 2 <= P <= 10^8");
  const i64 six_h = 6 * h;
  // phi via a smallest-prime-factor table alongside mu.
  std::vector<i64> phi(static_cast<std::size_t>(T) + 1);
  for (i64 i = 0; i <= T; ++i) phi[i] = i;
  for (i64 p = 2; p <= T; ++p) {
    if (phi[p] != p) continue;
    for (i64 m = p; m <= T; m += p) phi[m] -= phi[m] / p;
  }
  const auto mu = arith::mobius_table(T);
  PairwiseSum<double> series;
  for (i64 e = 1; e <= T; ++e) {
    if (mu[e] == 0 || std::gcd(e, six_h) != 1) continue;
    const double ed = static_cast<double>(e);
    series.add(static_cast<double>(mu[e]) * static_cast<double>(phi[e]) / (ed * ed * ed));
  }
  double log_prod = 0.0;
  for (i64 p : arith::primes_up_to(P)) {
    if (six_h % p == 0) continue;
    const double pd = static_cast<double>(p);
    log_prod += std::log1p(-(pd - 1.0) / (pd * pd * pd));
  }
  MuPhiSeries out;
  out.series = series.total();
  out.product = std::exp(log_prod);
  out.tail_bound = 1.0 / static_cast<double>(T) + 1.0 / static_cast<double>(P);
  return out;
}

}  // namespace deltasieve::density
