#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include "deltasieve/balance.hpp"
#include "deltasieve/density.hpp"
#include "timing.hpp"

namespace deltasieve::verify {

using namespace density;

namespace {

std::string q_str(i64 q) { return "q=" + std::to_string(q); }

}  // namespace

Check check_sigma_values() {
  Timed t("sigma_values", 0.0);
  for (auto [q, want] : {std::pair<i64, i64>{4, 8}, {9, 27}, {25, 45}}) {
    t.check.expect(sigma(q).sigma == want && sigma_enumerate(q) == want, [&, q = q] { return "sigma " + q_str(q); });
  }
  return t.done();
}

Check check_one_third() {
  Timed t("one_third", 0.0);
  const Rational f = (Rational(1) - Rational(sigma_enumerate(4), 16)) * (Rational(1) - Rational(sigma_enumerate(9), 81));
  t.check.expect(f == Rational(1, 3), [&] { return "(1-sigma(4)/16)(1-sigma(9)/81) = " + f.str(); });
  return t.done();
}

Check check_sigma_prime_square(i64 p_max) {
  Timed t("sigma_prime_square", 0.0);
  for (i64 p : arith::primes_up_to(p_max)) {
    if (p <= 3) continue;
    const i64 s = sigma(p * p).sigma;
    t.check.expect(s == 2 * p * p - p, [&] { return "p=" + std::to_string(p) + " sigma=" + std::to_string(s); });
  }
  return t.done();
}

Check check_sigma_enumeration(i64 q_max) {
  Timed t("sigma_enumeration", 0.0);
  for (i64 q = 1; q <= q_max; ++q) t.check.expect(sigma(q).sigma == sigma_enumerate(q), [&] { return q_str(q); });
  return t.done();
}

Check check_sigma_multiplicative(i64 q_max) {
  Timed t("sigma_multiplicative", 0.0);
  for (i64 a = 2; a * a <= q_max; ++a) {
    for (i64 b = a + 1; a * b <= q_max; ++b) {
      if (std::gcd(a, b) != 1) continue;
      t.check.expect(sigma(a * b).sigma == sigma(a).sigma * sigma(b).sigma,
                     [&] { return "q1=" + std::to_string(a) + " q2=" + std::to_string(b); });
    }
  }
  return t.done();
}

Check check_euler_overlap() {
  Timed t("euler_overlap", 1e-9);
  const auto a = euler_product(1, 100000), b = euler_product(2, 100000);
  t.check.compare(a.width, [&] { return "theorem 1 width, P=10^5"; });
  t.check.compare(b.width, [&] { return "theorem 2 width, P=10^5"; });
  t.check.expect(overlap(a, b), [&] { return "intervals [" + a.value_lo + ", " + a.value_hi + "] and [" + b.value_lo +
                                             ", " + b.value_hi + "] are disjoint"; });
  return t.done();
}

Check check_euler_nesting() {
  Timed t("euler_nesting", 0.0);
  const auto ref = euler_product(2, 100000);
  for (int theorem : {1, 2}) {
    for (TailMode mode : {TailMode::accelerated, TailMode::crude}) {
      for (i64 P : {5, 100, 10000}) {
        const auto r = euler_product(theorem, P, mode);
        t.check.expect(r.lo <= ref.lo && ref.hi <= r.hi, [&] {
          std::ostringstream os;
          os << "theorem " << theorem << (mode == TailMode::crude ? " crude" : "") << " P=" << P << " ["
             << r.value_lo << ", " << r.value_hi << "] misses " << ref.partial;
          return os.str();
        });
      }
    }
  }
  return t.done();
}

Check check_per_prime_identity(i64 p_max) {
  Timed t("per_prime_identity", 0.0);
  for (i64 p : arith::primes_up_to(p_max)) {
    if (p > 3) t.check.expect(per_prime_identity(p), [&] { return "p=" + std::to_string(p); });
  }
  return t.done();
}

Check check_mu_phi() {
  Timed t("mu_phi_series", 0.0);
  for (i64 h : {1, 5, 7, 35}) {
    const auto r = mu_phi_series(h, 100000, 100000);
    t.check.max_deviation = std::max(t.check.max_deviation, std::abs(r.series - r.product));
    t.check.expect(r.agrees(), [&] { return "h=" + std::to_string(h); });
  }
  return t.done();
}

Check check_balance_preset() {
  Timed t("balance_preset", 0.0);
  const auto r = balance_exponents(paper_preset());
  t.check.expect(r.exponent == Rational(184, 27) && r.exponent == Rational(7) - Rational(5, 27), [&] {
    return "exponent " + r.exponent.str();
  });
  t.check.expect(r.t == Rational(124, 27) && r.kappa == Rational(16, 31),
                 [&] { return "optimum t=" + r.t.str() + " kappa=" + r.kappa.str(); });
  return t.done();
}

Check check_balance_grid() {
  Timed t("balance_grid", 1e-6);
  const auto p = paper_preset();
  const auto exact = balance_exponents(p);
  const auto g = grid_search(p, 1000, 10);
  // Positive deviation means the grid beat the exact optimum.
  t.check.compare((exact.exponent - g.best).to_double(), [&] {
    return "grid " + g.best.str() + " at t=" + g.t.str() + " kappa=" + g.kappa.str();
  });
  t.check.expect(g.best >= exact.exponent, [&] { return "grid below the LP optimum: " + g.best.str(); });
  return t.done();
}

Check check_balance_drop() {
  Timed t("balance_drop", 0.0);
  const auto base = paper_preset();
  const auto full = balance_exponents(base);
  for (std::size_t i = 0; i < base.terms.size(); ++i) {
    BalanceProblem p = base;
    p.terms.erase(p.terms.begin() + static_cast<std::ptrdiff_t>(i));
    Rational v;
    try {
      v = balance_exponents(p).exponent;
    } catch (const DomainError&) {
      continue;  // dropping the only bounded term can make the problem unbounded
    }
    const bool active = std::find(full.active.begin(), full.active.end(), i) != full.active.end();
    t.check.expect(active ? v < full.exponent : v == full.exponent,
                   [&] { return "drop " + base.terms[i].label + " gives " + v.str(); });
  }
  return t.done();
}

SuiteReport density_suite(const Options&) {
  return {"density",
          {check_sigma_values(), check_one_third(), check_sigma_prime_square(500), check_sigma_enumeration(),
           check_sigma_multiplicative(), check_euler_overlap(), check_euler_nesting(), check_per_prime_identity(),
           check_mu_phi(), check_balance_preset(), check_balance_grid(), check_balance_drop()}};
}

}  // namespace deltasieve::verify
