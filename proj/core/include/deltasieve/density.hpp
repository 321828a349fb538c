#pragma once

#include <string>

#include "deltasieve/arith.hpp"
#include "deltasieve/rational.hpp"

namespace deltasieve::density {

inline constexpr i64 kMaxSigmaModulus = 10000;
inline constexpr i64 kMaxSigmaPrime = 500;     // q = p^2 route
inline constexpr i64 kMaxEnumerateModulus = 1000;  // q^2 pair checks

struct LocalDensity {
  i64 q;
  i64 sigma;         // #{(a, b) mod q : 4a^3 + 27b^2 = 0 mod q}
  Rational density;  // sigma / q^2, which is sigma(p^2)/p^4 at q = p^2
};

// Counts by matching the value distributions of 4a^3 and -27b^2 mod q.
LocalDensity sigma(i64 q);
// Independent q^2 pair enumeration.
i64 sigma_enumerate(i64 q);

// (1 - p/(p^3-p+1)) (1 - (p-1)/p^3) == 1 - (2p-1)/p^3 in exact arithmetic.
bool per_prime_identity(i64 p);

struct MuPhiSeries {
  double series;   // sum over e <= T, (e, 6h) = 1 of mu(e) phi(e) / e^3
  double product;  // prod over p <= P, p not dividing 6h, of 1 - (p-1)/p^3
  double tail_bound;  // sum_{e > T} e^-2 + sum_{n > P} n^-2
  bool agrees() const;
};
MuPhiSeries mu_phi_series(i64 h, i64 P, i64 T);

enum class TailMode { accelerated, crude };

struct EulerProductResult {
  int theorem;
  i64 P;
  TailMode mode;
  std::string partial;  // decimal strings, 30 digits
  std::string value_lo;
  std::string value_hi;
  double partial_d;
  double lo;
  double hi;
  double tail_bound;  // bound on |log(tail)| error (accelerated) or on -log(tail) (crude)
  double width = 0.0;  // hi - lo before rounding to double
};

// theorem 1: prod over p <= P of (1 - sigma(p^2)/p^4), times the tail.
// theorem 2: (1/3) prod over 3 < p <= P of (1 - (2p-1)/p^3), times the tail.
// The tail over p > P is either estimated through prime zeta values with a
// truncation bound (accelerated) or only bounded by -log(1-x) <= x/(1-x) (crude).
EulerProductResult euler_product(int theorem, i64 P, TailMode mode = TailMode::accelerated);

// True when both intervals intersect.
bool overlap(const EulerProductResult& a, const EulerProductResult& b);

}  // namespace deltasieve::density
