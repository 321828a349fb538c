#pragma once

#include <complex>
#include <cstdint>
#include <numeric>
#include <vector>

#include "deltasieve/errors.hpp"

namespace deltasieve {

using i64 = std::int64_t;
using u64 = std::uint64_t;
__extension__ typedef __int128 i128;
__extension__ typedef unsigned __int128 u128;

namespace arith {

inline constexpr i64 kMaxModulus = i64{1} << 62;

struct PrimePower {
  i64 prime;
  int exponent;
  bool operator==(const PrimePower&) const = default;
};

class Factorization {
 public:
  Factorization() = default;
  Factorization(i64 n, std::vector<PrimePower> factors);

  i64 n() const { return n_; }
  const std::vector<PrimePower>& factors() const { return factors_; }
  // Number of distinct primes, the omega(Q) of the Loxton-Schmidt bound.
  int omega() const { return static_cast<int>(factors_.size()); }
  bool squarefree() const;
  bool has_prime(i64 p) const;
  std::vector<i64> divisors() const;

 private:
  i64 n_ = 1;
  std::vector<PrimePower> factors_;
};

Factorization factorize(i64 n);

int mobius(i64 n);
i64 euler_phi(i64 n);

struct RadSquare {
  i64 rad;
  i64 square;
};
RadSquare rad_and_square_part(i64 n);

bool is_prime(u64 n);
std::vector<i64> primes_up_to(i64 limit);
i64 isqrt(i64 n);
i64 icbrt(i64 n);

// Non-negative representative of a mod m.
constexpr i64 reduce(i64 a, i64 m) {
  i64 r = a % m;
  return r < 0 ? r + m : r;
}
inline i64 reduce128(i128 a, i64 m) {
  i128 r = a % m;
  return static_cast<i64>(r < 0 ? r + m : r);
}
inline u64 mulmod(u64 a, u64 b, u64 m) {
  return static_cast<u64>(static_cast<u128>(a) * b % m);
}
u64 powmod(u64 base, u64 exp, u64 m);
i128 gcd128(i128 a, i128 b);
i64 ipow(i64 base, int exp);

class Residue {
 public:
  Residue() = default;
  Residue(i64 value, i64 modulus);

  i64 value() const { return value_; }
  i64 modulus() const { return modulus_; }

  Residue operator+(const Residue& o) const;
  Residue operator-(const Residue& o) const;
  Residue operator*(const Residue& o) const;
  Residue operator-() const;
  Residue pow(u64 e) const;
  Residue inverse() const;
  bool operator==(const Residue&) const = default;

 private:
  void require_same(const Residue& o) const;
  i64 value_ = 0;
  i64 modulus_ = 1;
};

Residue mod_inverse(i64 a, i64 m);
// Inverse as a plain integer in [0, m).
inline i64 inv(i64 a, i64 m) { return mod_inverse(a, m).value(); }

int legendre(i64 a, i64 p);
struct LegendreEps {
  int symbol;
  std::complex<double> eps;
};
LegendreEps legendre_eps(i64 a, i64 p);

// All x mod p^k with x^2 = a, p odd. Sorted.
std::vector<Residue> sqrt_mod_prime_power(i64 a, i64 p, int k);
// All x mod m with x^2 = a for odd m, combining prime powers by CRT. Sorted.
std::vector<i64> sqrt_mod(i64 a, i64 m);

// Integer polynomial c0 + c1 x + ... + cn x^n.
struct IntPolynomial {
  std::vector<i64> coeffs;
  i64 eval_mod(i64 x, i64 m) const;
  IntPolynomial derivative() const;
};

// Lift a simple root of f mod l to the unique root mod l^2 above it.
Residue hensel_lift_unique(const Residue& root, const IntPolynomial& f);

// x with x = r1 mod m1 and x = r2 mod m2, coprime moduli.
Residue crt(const Residue& r1, const Residue& r2);

}  // namespace arith
}  // namespace deltasieve
