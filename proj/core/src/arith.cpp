#include "deltasieve/arith.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace deltasieve::arith {

namespace {

constexpr i64 kTrialBound = 1000000;

const std::vector<i64>& small_primes() {
  static const std::vector<i64> table = primes_up_to(kTrialBound);
  return table;
}

u64 gcd_u(u64 a, u64 b) {
  while (b != 0) {
    u64 t = a % b;
    a = b;
    b = t;
  }
  return a;
}

// Brent's variant with batched gcds.
u64 pollard_rho(u64 n) {
  if (n % 2 == 0) return 2;
  for (u64 c = 1;; ++c) {
    auto f = [&](u64 x) { return (mulmod(x, x, n) + c) % n; };
    u64 y = 2, x = 2, g = 1, q = 1, ys = 2;
    u64 r = 1;
    constexpr u64 m = 128;
    do {
      x = y;
      for (u64 i = 0; i < r; ++i) y = f(y);
      u64 k = 0;
      do {
        ys = y;
        for (u64 i = 0; i < std::min(m, r - k); ++i) {
          y = f(y);
          q = mulmod(q, x > y ? x - y : y - x, n);
        }
        g = gcd_u(q, n);
        k += m;
      } while (k < r && g == 1);
      r *= 2;
    } while (g == 1);
    if (g == n) {
      do {
        ys = f(ys);
        g = gcd_u(x > ys ? x - ys : ys - x, n);
      } while (g == 1);
    }
    if (g != n) return g;
  }
}

void factor_large(u64 n, std::vector<u64>& out) {
  if (n == 1) return;
  if (is_prime(n)) {
    out.push_back(n);
    return;
  }
  u64 d = pollard_rho(n);
  factor_large(d, out);
  factor_large(n / d, out);
}

}  // namespace

Factorization::Factorization(i64 n, std::vector<PrimePower> factors)
    : n_(n), factors_(std::move(factors)) {}

bool Factorization::squarefree() const {
  return std::all_of(factors_.begin(), factors_.end(),
                     [](const PrimePower& pp) { return pp.exponent == 1; });
}

bool Factorization::has_prime(i64 p) const {
  return std::any_of(factors_.begin(), factors_.end(),
                     [p](const PrimePower& pp) { return pp.prime == p; });
}

std::vector<i64> Factorization::divisors() const {
  std::vector<i64> divs{1};
  for (const auto& [p, e] : factors_) {
    std::size_t base = divs.size();
    i64 pk = 1;
    for (int j = 1; j <= e; ++j) {
      pk *= p;
      for (std::size_t i = 0; i < base; ++i) divs.push_back(divs[i] * pk);
    }
  }
  std::sort(divs.begin(), divs.end());
  return divs;
}

u64 powmod(u64 base, u64 exp, u64 m) {
  if (m == 1) return 0;
  u64 result = 1;
  base %= m;
  while (exp > 0) {
    if (exp & 1) result = mulmod(result, base, m);
    base = mulmod(base, base, m);
    exp >>= 1;
  }
  return result;
}

i128 gcd128(i128 a, i128 b) {
  if (a < 0) a = -a;
  if (b < 0) b = -b;
  while (b != 0) {
    i128 t = a % b;
    a = b;
    b = t;
  }
  return a;
}

i64 ipow(i64 base, int exp) {
  i64 r = 1;
  for (int i = 0; i < exp; ++i) r *= base;
  return r;
}

bool is_prime(u64 n) {
  if (n < 2) return false;
  for (u64 p : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
    if (n % p == 0) return n == p;
  }
  u64 d = n - 1;
  int s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  // Deterministic for n < 2^64.
  for (u64 a : {2ULL, 325ULL, 9375ULL, 28178ULL, 450775ULL, 9780504ULL, 1795265022ULL}) {
    u64 x = powmod(a % n, d, n);
    if (a % n == 0 || x == 1 || x == n - 1) continue;
    bool composite = true;
    for (int r = 1; r < s; ++r) {
      x = mulmod(x, x, n);
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

std::vector<i64> primes_up_to(i64 limit) {
  std::vector<i64> primes;
  if (limit < 2) return primes;
  std::vector<bool> composite(static_cast<std::size_t>(limit) + 1, false);
  for (i64 i = 2; i <= limit; ++i) {
    if (composite[i]) continue;
    primes.push_back(i);
    for (i64 j = i * i; j <= limit; j += i) composite[j] = true;
  }
  return primes;
}

i64 isqrt(i64 n) {
  if (n < 0) throw DomainError("isqrt of negative");
  i64 r = static_cast<i64>(std::sqrt(static_cast<double>(n)));
  while (r > 0 && static_cast<i128>(r) * r > n) --r;
  while (static_cast<i128>(r + 1) * (r + 1) <= n) ++r;
  return r;
}

i64 icbrt(i64 n) {
  if (n < 0) throw DomainError("icbrt of negative");
  i64 r = static_cast<i64>(std::cbrt(static_cast<double>(n)));
  while (r > 0 && static_cast<i128>(r) * r * r > n) --r;
  while (static_cast<i128>(r + 1) * (r + 1) * (r + 1) <= n) ++r;
  return r;
}

Factorization factorize(i64 n) {
  if (n == 0) throw DomainError("factorize: n must be nonzero");
  u64 m = n < 0 ? static_cast<u64>(-(n + 1)) + 1 : static_cast<u64>(n);
  std::vector<PrimePower> out;
  const auto& primes = small_primes();
  for (i64 p : primes) {
    if (static_cast<u128>(p) * p > m) break;
    if (m % p != 0) continue;
    int e = 0;
    while (m % p == 0) {
      m /= p;
      ++e;
    }
    out.push_back({p, e});
  }
  if (m > 1) {
    std::vector<u64> rest;
    if (static_cast<u128>(kTrialBound) * kTrialBound >= m) {
      rest.push_back(m);
    } else {
      factor_large(m, rest);
    }
    std::sort(rest.begin(), rest.end());
    for (u64 p : rest) {
      if (!out.empty() && static_cast<u64>(out.back().prime) == p) {
        ++out.back().exponent;
      } else {
        out.push_back({static_cast<i64>(p), 1});
      }
    }
  }
  return Factorization(n, std::move(out));
}

int mobius(i64 n) {
  if (n == 0) return 0;
  auto f = factorize(n);
  if (!f.squarefree()) return 0;
  return f.omega() % 2 == 0 ? 1 : -1;
}

i64 euler_phi(i64 n) {
  if (n <= 0) throw DomainError("euler_phi: n must be positive");
  i64 result = n;
  const auto f = factorize(n);
  for (const auto& pp : f.factors()) result = result / pp.prime * (pp.prime - 1);
  return result;
}

RadSquare rad_and_square_part(i64 n) {
  auto f = factorize(n);
  RadSquare rs{1, 1};
  for (const auto& [p, e] : f.factors()) {
    rs.rad *= p;
    rs.square *= ipow(p, 2 * (e / 2));
  }
  return rs;
}

Residue::Residue(i64 value, i64 modulus) : modulus_(modulus) {
  if (modulus < 1 || modulus > kMaxModulus) {
    throw DomainError("Residue: modulus out of range [1, 2^62]");
  }
  value_ = reduce(value, modulus);
}

void Residue::require_same(const Residue& o) const {
  if (o.modulus_ != modulus_) throw DomainError("Residue: mismatched moduli");
}

Residue Residue::operator+(const Residue& o) const {
  require_same(o);
  return Residue(static_cast<i64>((static_cast<u128>(value_) + o.value_) % modulus_), modulus_);
}

Residue Residue::operator-(const Residue& o) const {
  require_same(o);
  return Residue(value_ - o.value_, modulus_);
}

Residue Residue::operator*(const Residue& o) const {
  require_same(o);
  return Residue(static_cast<i64>(mulmod(value_, o.value_, modulus_)), modulus_);
}

Residue Residue::operator-() const { return Residue(-value_, modulus_); }

Residue Residue::pow(u64 e) const {
  return Residue(static_cast<i64>(powmod(value_, e, modulus_)), modulus_);
}

Residue Residue::inverse() const { return mod_inverse(value_, modulus_); }

Residue mod_inverse(i64 a, i64 m) {
  if (m < 1) throw DomainError("mod_inverse: modulus must be >= 1");
  i128 r0 = m, r1 = reduce(a, m);
  i128 s0 = 0, s1 = 1;
  while (r1 != 0) {
    i128 q = r0 / r1;
    i128 t = r0 - q * r1;
    r0 = r1;
    r1 = t;
    t = s0 - q * s1;
    s0 = s1;
    s1 = t;
  }
  if (r0 != 1 && m != 1) throw NotInvertible(a, m);
  return Residue(reduce128(s0, m), m);
}

namespace {
void require_odd_prime(i64 p, const char* who) {
  if (p < 3 || p % 2 == 0 || !is_prime(static_cast<u64>(p))) {
    throw DomainError(std::string(who) + ": p must be an odd prime");
  }
}
}  // namespace

int legendre(i64 a, i64 p) {
  require_odd_prime(p, "legendre");
  i64 r = reduce(a, p);
  if (r == 0) return 0;
  return powmod(r, (p - 1) / 2, p) == 1 ? 1 : -1;
}

LegendreEps legendre_eps(i64 a, i64 p) {
  int s = legendre(a, p);
  return {s, p % 4 == 1 ? std::complex<double>(1, 0) : std::complex<double>(0, 1)};
}

namespace {

// Square root of a unit a mod p (Legendre symbol 1).
i64 tonelli_shanks(i64 a, i64 p) {
  if (p % 4 == 3) return static_cast<i64>(powmod(a, (p + 1) / 4, p));
  i64 q = p - 1;
  int s = 0;
  while (q % 2 == 0) {
    q /= 2;
    ++s;
  }
  i64 z = 2;
  while (powmod(z, (p - 1) / 2, p) != static_cast<u64>(p - 1)) ++z;
  u64 c = powmod(z, q, p);
  u64 x = powmod(a, (q + 1) / 2, p);
  u64 t = powmod(a, q, p);
  int m = s;
  while (t != 1) {
    int i = 0;
    u64 tt = t;
    while (tt != 1) {
      tt = mulmod(tt, tt, p);
      ++i;
    }
    u64 b = c;
    for (int j = 0; j < m - i - 1; ++j) b = mulmod(b, b, p);
    x = mulmod(x, b, p);
    c = mulmod(b, b, p);
    t = mulmod(t, c, p);
    m = i;
  }
  return static_cast<i64>(x);
}

// Roots of y^2 = a mod p^k for a unit a, as the pair {y, -y}.
std::vector<i64> unit_sqrt(i64 a, i64 p, int k) {
  i64 pk = ipow(p, k);
  a = reduce(a, pk);
  if (legendre(a, p) != 1) return {};
  i64 y = tonelli_shanks(a % p, p);
  i64 mod = p;
  for (int j = 1; j < k; ++j) {
    mod *= p;
    // Newton step y <- y - (y^2 - a) / (2y).
    i64 fy = reduce128(static_cast<i128>(y) * y - a, mod);
    i64 corr = static_cast<i64>(mulmod(fy, inv(2 * y % mod, mod), mod));
    y = reduce(y - corr, mod);
  }
  i64 other = reduce(-y, pk);
  if (other == y) return {y};
  return {std::min(y, other), std::max(y, other)};
}

}  // namespace

std::vector<Residue> sqrt_mod_prime_power(i64 a, i64 p, int k) {
  require_odd_prime(p, "sqrt_mod_prime_power");
  if (k < 1) throw DomainError("sqrt_mod_prime_power: k must be >= 1");
  i128 pk128 = 1;
  for (int i = 0; i < k; ++i) {
    pk128 *= p;
    if (pk128 > kMaxModulus) throw DomainError("sqrt_mod_prime_power: p^k too large");
  }
  const i64 pk = static_cast<i64>(pk128);
  a = reduce(a, pk);
  std::vector<i64> roots;
  if (a == 0) {
    i64 step = ipow(p, (k + 1) / 2);
    for (i64 x = 0; x < pk; x += step) roots.push_back(x);
  } else {
    int v = 0;
    i64 rest = a;
    while (rest % p == 0) {
      rest /= p;
      ++v;
    }
    if (v % 2 != 0) return {};
    // x = p^(v/2) y with y^2 = rest mod p^(k-v); y is free mod p^(k-v/2).
    i64 half = ipow(p, v / 2);
    i64 inner_mod = ipow(p, k - v);
    i64 free_mod = ipow(p, k - v / 2);
    for (i64 y0 : unit_sqrt(rest, p, k - v)) {
      for (i64 y = y0; y < free_mod; y += inner_mod) {
        roots.push_back(static_cast<i64>(static_cast<i128>(half) * y % pk));
      }
    }
    std::sort(roots.begin(), roots.end());
  }
  std::vector<Residue> out;
  out.reserve(roots.size());
  for (i64 r : roots) out.emplace_back(r, pk);
  return out;
}

std::vector<i64> sqrt_mod(i64 a, i64 m) {
  if (m < 1) throw DomainError("sqrt_mod: modulus must be positive");
  if (m % 2 == 0) throw DomainError("sqrt_mod: modulus must be odd");
  std::vector<Residue> acc{Residue(0, 1)};
  const auto fm = factorize(m);
  for (const auto& [p, e] : fm.factors()) {
    auto local = sqrt_mod_prime_power(a, p, e);
    std::vector<Residue> next;
    next.reserve(acc.size() * local.size());
    for (const auto& r1 : acc) {
      for (const auto& r2 : local) next.push_back(crt(r1, r2));
    }
    acc = std::move(next);
    if (acc.empty()) break;
  }
  std::vector<i64> out;
  out.reserve(acc.size());
  for (const auto& r : acc) out.push_back(r.value());
  std::sort(out.begin(), out.end());
  return out;
}

i64 IntPolynomial::eval_mod(i64 x, i64 m) const {
  i64 acc = 0;
  x = reduce(x, m);
  for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) {
    acc = reduce128(static_cast<i128>(acc) * x + reduce(*it, m), m);
  }
  return acc;
}

IntPolynomial IntPolynomial::derivative() const {
  IntPolynomial d;
  for (std::size_t i = 1; i < coeffs.size(); ++i) {
    d.coeffs.push_back(coeffs[i] * static_cast<i64>(i));
  }
  return d;
}

Residue hensel_lift_unique(const Residue& root, const IntPolynomial& f) {
  const i64 l = root.modulus();
  if (static_cast<i128>(l) * l > kMaxModulus) throw DomainError("hensel_lift_unique: l^2 too large");
  const i64 l2 = l * l;
  if (f.eval_mod(root.value(), l) != 0) throw DomainError("hensel_lift_unique: not a root mod l");
  if (std::gcd(root.value(), l) != 1) throw DomainError("hensel_lift_unique: root must be a unit");
  i64 fp = f.derivative().eval_mod(root.value(), l);
  if (std::gcd(fp, l) != 1) {
    throw DomainError("hensel_lift_unique: derivative not invertible, lift not unique");
  }
  i64 x = root.value();
  i64 fx = f.eval_mod(x, l2);
  i64 step = static_cast<i64>(mulmod(fx, inv(f.derivative().eval_mod(x, l2), l2), l2));
  return Residue(x - step, l2);
}

Residue crt(const Residue& r1, const Residue& r2) {
  const i64 m1 = r1.modulus(), m2 = r2.modulus();
  if (std::gcd(m1, m2) != 1) throw DomainError("crt: moduli must be coprime");
  if (static_cast<i128>(m1) * m2 > kMaxModulus) throw DomainError("crt: combined modulus too large");
  const i64 m = m1 * m2;
  // x = r1 + m1 * ((r2 - r1) * m1^-1 mod m2)
  i64 t = static_cast<i64>(mulmod(reduce(r2.value() - r1.value(), m2), inv(m1, m2), m2));
  return Residue(static_cast<i64>(r1.value() + static_cast<i128>(m1) * t), m);
}

}  // namespace deltasieve::arith
