#include <cmath>
#include <numeric>

#include "deltasieve/arith.hpp"
#include "deltasieve/mobius_table.hpp"
#include "deltasieve/rational.hpp"
#include "timing.hpp"

namespace deltasieve::verify {

namespace {

// Trial division straight from the definitions.
struct Naive {
  int mu;
  i64 phi;
};
Naive naive(i64 n) {
  int mu = 1;
  i64 phi = n, m = n;
  for (i64 p = 2; p * p <= m; ++p) {
    if (m % p) continue;
    int e = 0;
    while (m % p == 0) m /= p, ++e;
    mu = e > 1 ? 0 : -mu;
    phi = phi / p * (p - 1);
  }
  if (m > 1) mu = -mu, phi = phi / m * (m - 1);
  return {mu, phi};
}

std::string num(i64 n) { return std::to_string(n); }

}  // namespace

SuiteReport arith_suite(const Options& opts) {
  Rng rng(opts.seed ^ 0xA1);
  SuiteReport rep{"arith", {}};

  {
    Timed t("factorize", 0.0);
    auto roundtrip = [&](i64 n) {
      const auto f = arith::factorize(n);
      i128 prod = 1;
      bool primes = true;
      for (const auto& pp : f.factors()) {
        primes = primes && arith::is_prime(static_cast<u64>(pp.prime));
        for (int e = 0; e < pp.exponent; ++e) prod *= pp.prime;
      }
      t.check.expect(primes && prod == n, [&] { return "n=" + num(n); });
    };
    for (i64 n = 1; n <= 20000; ++n) roundtrip(n);
    for (int i = 0; i < 300; ++i) roundtrip(rng.uniform(1, i64{1} << 62));
    rep.checks.push_back(t.done());
  }
  {
    Timed t("mobius_phi", 0.0);
    const auto table = arith::mobius_table(5000);
    for (i64 n = 1; n <= 5000; ++n) {
      const Naive e = naive(n);
      t.check.expect(arith::mobius(n) == e.mu && table[n] == e.mu && arith::euler_phi(n) == e.phi,
                     [&] { return "n=" + num(n); });
    }
    const i64 lo = 1000000, hi = 1005000;
    arith::MobiusSegments(lo, hi).for_each([&](i64 n, int mu) {
      t.check.expect(mu == naive(n).mu, [&] { return "segment n=" + num(n); });
    });
    rep.checks.push_back(t.done());
  }
  {
    Timed t("sqrt_mod_prime_power", 0.0);
    for (i64 p : {3, 5, 7, 11, 13}) {
      for (int k = 1; arith::ipow(p, k) <= 3000; ++k) {
        const i64 m = arith::ipow(p, k);
        for (i64 a = 0; a < m; ++a) {
          std::vector<i64> expect;
          for (i64 x = 0; x < m; ++x) {
            if (x * x % m == a) expect.push_back(x);
          }
          std::vector<i64> got;
          for (const auto& r : arith::sqrt_mod_prime_power(a, p, k)) got.push_back(r.value());
          t.check.expect(got == expect, [&] { return "a=" + num(a) + " p=" + num(p) + " k=" + std::to_string(k); });
        }
      }
    }
    rep.checks.push_back(t.done());
  }
  {
    Timed t("inverse_crt", 0.0);
    for (int i = 0; i < 2000; ++i) {
      const i64 m1 = rng.uniform(2, 100000), m2 = rng.uniform(2, 100000);
      const i64 a = rng.uniform(0, m1 - 1);
      if (std::gcd(a, m1) == 1) {
        const i64 x = arith::inv(a, m1);
        t.check.expect(static_cast<i128>(a) * x % m1 == 1, [&] { return "inv a=" + num(a) + " m=" + num(m1); });
      }
      if (std::gcd(m1, m2) != 1) continue;
      const i64 r1 = rng.uniform(0, m1 - 1), r2 = rng.uniform(0, m2 - 1);
      const auto x = arith::crt(arith::Residue(r1, m1), arith::Residue(r2, m2));
      t.check.expect(x.modulus() == m1 * m2 && x.value() % m1 == r1 && x.value() % m2 == r2,
                     [&] { return "crt " + num(r1) + "/" + num(m1) + " " + num(r2) + "/" + num(m2); });
    }
    rep.checks.push_back(t.done());
  }
  {
    Timed t("legendre", 0.0);
    for (i64 p : arith::primes_up_to(300)) {
      if (p == 2) continue;
      for (i64 a = 0; a < p; ++a) {
        const u64 e = arith::powmod(static_cast<u64>(a), static_cast<u64>((p - 1) / 2), static_cast<u64>(p));
        const int expect = a == 0 ? 0 : (e == 1 ? 1 : -1);
        t.check.expect(arith::legendre(a, p) == expect, [&] { return "a=" + num(a) + " p=" + num(p); });
      }
    }
    rep.checks.push_back(t.done());
  }
  {
    Timed t("hensel_lift", 0.0);
    for (int i = 0; i < 500; ++i) {
      const i64 l = rng.pick(std::vector<i64>{5, 7, 11, 13, 35, 77, 143});
      // x^3 + c x + e has a simple root r mod l when e = -r^3 - c r and f'(r) is a unit.
      const i64 r = rng.uniform(0, l - 1), c = rng.uniform(0, l - 1);
      const i64 e = arith::reduce(-(r * r * r) - c * r, l);
      arith::IntPolynomial f{{e, c, 0, 1}};
      if (std::gcd(r, l) != 1 || std::gcd(arith::reduce(3 * r * r + c, l), l) != 1) continue;
      const auto lift = arith::hensel_lift_unique(arith::Residue(r, l), f);
      t.check.expect(lift.modulus() == l * l && f.eval_mod(lift.value(), l * l) == 0 && lift.value() % l == r,
                     [&] { return "root " + num(r) + " of x^3+" + num(c) + "x+" + num(e) + " mod " + num(l); });
    }
    rep.checks.push_back(t.done());
  }
  {
    Timed t("rational", 0.0);
    for (int i = 0; i < 2000; ++i) {
      const Rational a(rng.uniform(-1000, 1000), rng.uniform(1, 1000));
      const Rational b(rng.uniform(-1000, 1000), rng.uniform(1, 1000));
      bool ok = (a + b) - b == a && (a * b == b * a);
      if (b != Rational(0)) ok = ok && (a / b) * b == a;
      ok = ok && std::gcd(static_cast<i64>(a.num()), static_cast<i64>(a.den())) == 1 && a.den() > 0;
      ok = ok && Rational::parse(a.str()) == a;
      t.check.expect(ok, [&] { return "a=" + a.str() + " b=" + b.str(); });
    }
    t.check.expect(Rational::parse("0.125") == Rational(1, 8), [] { return "parse 0.125"; });
    rep.checks.push_back(t.done());
  }
  return rep;
}

}  // namespace deltasieve::verify
