#include <boost/math/special_functions/binomial.hpp>
#include <boost/math/special_functions/zeta.hpp>
#include <boost/multiprecision/cpp_bin_float.hpp>
#include <cmath>
#include <map>
#include <mutex>

#include "deltasieve/density.hpp"

namespace deltasieve::density {

namespace {

using Real = boost::multiprecision::cpp_bin_float_50;

// Absolute slack for rounding in the 50-digit evaluation of the tail.
const Real kSlack("1e-40");

std::string dec(const Real& x) { return x.str(30, std::ios_base::scientific); }

// Prime zeta P(s) = sum over k of mu(k)/k log zeta(k s), s >= 2.
Real prime_zeta(int s) {
  static std::mutex mu_lock;
  static std::map<int, Real> cache;
  {
    std::lock_guard lock(mu_lock);
    if (auto it = cache.find(s); it != cache.end()) return it->second;
  }
  Real acc = 0;
  for (int k = 1;; ++k) {
    const int ks = k * s;
    // log zeta(ks) < 2^(1-ks); stop once that is far below the working precision.
    if (ks > 180) break;
    const int m = arith::mobius(k);
    if (m == 0) continue;
    const Real z = boost::math::zeta(Real(ks));
    acc += Real(m) / k * log(z);
  }
  std::lock_guard lock(mu_lock);
  cache[s] = acc;
  return acc;
}

// log(1 - (2p-1)/p^3) = -sum_j b_j p^(-j), with
// b_j = sum over 2k + i = j, 0 <= i <= k of C(k,i) 2^(k-i) (-1)^i / k.
Real log_coefficient(int j) {
  Real b = 0;
  for (int k = (j + 2) / 3; 2 * k <= j; ++k) {
    const int i = j - 2 * k;
    if (i > k) continue;
    Real term = boost::math::binomial_coefficient<Real>(static_cast<unsigned>(k), static_cast<unsigned>(i));
    term *= pow(Real(2), k - i) / k;
    b += (i % 2 ? -term : term);
  }
  return b;
}

struct Tail {
  Real log_estimate;  // estimate of log prod over p > P
  Real error;         // |true - estimate| bound
};

Tail accelerated_tail(const std::vector<i64>& primes, i64 P) {
  const Real Pr(P);
  const Real r3 = sqrt(Real(3));
  if (!(r3 / Pr < 1)) throw DomainError("euler_product: P too small");
  // Terms j > J contribute at most 2 3^(j/2) P^(1-j)/(j-1) each.
  int J = 2;
  Real trunc;
  for (;; ++J) {
    trunc = 2 * pow(r3, J + 1) * pow(Pr, -J) / J / (1 - r3 / Pr);
    if (trunc < kSlack || J >= 400) break;
  }
  Real log_tail = 0;
  for (int j = 2; j <= J; ++j) {
    const Real b = log_coefficient(j);
    if (b == 0) continue;
    Real T;
    if (j > 160) {
      // P(j) is below 2^-160 here; bound the whole term instead.
      T = 0;
      trunc += abs(b) * pow(Pr, 1 - j) / (j - 1);
    } else {
      Real head = 0;
      for (i64 p : primes) head += pow(Real(p), -j);
      T = prime_zeta(j) - head;
    }
    log_tail -= b * T;
  }
  return {log_tail, trunc + kSlack};
}

}  // namespace

EulerProductResult euler_product(int theorem, i64 P, TailMode mode) {
  if (theorem != 1 && theorem != 2) throw DomainError("euler_product: theorem must be 1 or 2");
  if (P < 5) throw DomainError("euler_product: P must be >= 5");
  if (P > 100'000'000) throw LimitExceeded("P", "euler_product needs P <= 10^8");
  const auto primes = arith::primes_up_to(P);

  Real partial = theorem == 1 ? Real(1) : Real(1) / 3;
  for (i64 p : primes) {
    const Real pr(p);
    if (theorem == 1) {
      const i64 s = p <= 100 ? sigma(p * p).sigma : 2 * p * p - p;
      partial *= 1 - Real(s) / (pr * pr * pr * pr);
    } else if (p > 3) {
      partial *= 1 - (2 * pr - 1) / (pr * pr * pr);
    }
  }

  EulerProductResult out;
  out.theorem = theorem;
  out.P = P;
  out.mode = mode;
  Real lo, hi;
  if (mode == TailMode::crude) {
    // Sum over n > P of x/(1-x) <= 2/(n^2-2), integrated.
    const Real r2 = sqrt(Real(2));
    const Real T = log((Real(P) + r2) / (Real(P) - r2)) / r2;
    lo = partial * exp(-T);
    hi = partial;
    out.tail_bound = static_cast<double>(T);
  } else {
    const Tail t = accelerated_tail(primes, P);
    lo = partial * exp(t.log_estimate - t.error);
    hi = partial * exp(t.log_estimate + t.error);
    if (hi > partial) hi = partial;  // every factor is below 1
    out.tail_bound = static_cast<double>(t.error);
  }
  // Pad outward so the 30-digit strings still enclose the interval.
  const Real pad("1e-30");
  lo -= pad;
  hi += pad;
  out.tail_bound += 1e-30;
  out.partial = dec(partial);
  out.value_lo = dec(lo);
  out.value_hi = dec(hi);
  out.partial_d = static_cast<double>(partial);
  out.lo = static_cast<double>(lo);
  out.hi = static_cast<double>(hi);
  out.width = static_cast<double>(hi - lo);
  return out;
}

bool overlap(const EulerProductResult& a, const EulerProductResult& b) {
  // Compare the 30-digit strings exactly rather than the rounded doubles.
  const Real alo(a.value_lo), ahi(a.value_hi), blo(b.value_lo), bhi(b.value_hi);
  return alo <= bhi && blo <= ahi;
}

}  // namespace deltasieve::density
