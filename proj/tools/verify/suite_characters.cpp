#include <cmath>
#include <numeric>

#include "deltasieve/characters.hpp"
#include "timing.hpp"

namespace deltasieve::verify {

using namespace characters;

Check check_orthogonality(i64 q_max) {
  Timed t("orthogonality", 1e-10);
  for (i64 q = 1; q <= q_max; ++q) {
    const auto table = character_table(q);
    const double phi = static_cast<double>(arith::euler_phi(q));
    t.check.expect(static_cast<double>(table.size()) == phi, [&] { return "table size q=" + std::to_string(q); });
    // Rows: sum over n of chi_i(n) conj(chi_j(n)) = phi [i = j].
    for (std::size_t i = 0; i < table.size(); ++i) {
      for (std::size_t j = i; j < table.size(); ++j) {
        cplx s = 0;
        for (i64 n = 0; n < q; ++n) s += table[i](n) * std::conj(table[j](n));
        const double want = i == j ? phi : 0.0;
        t.check.compare(std::abs(s - want), [&] {
          return "rows q=" + std::to_string(q) + " i=" + std::to_string(i) + " j=" + std::to_string(j);
        });
      }
    }
    // Columns: sum over chi of chi(a) conj(chi(b)) = phi [a = b] for units.
    for (i64 a = 1; a < q; ++a) {
      if (std::gcd(a, q) != 1) continue;
      for (i64 b = a; b < q; ++b) {
        if (std::gcd(b, q) != 1) continue;
        cplx s = 0;
        for (const auto& chi : table) s += chi(a) * std::conj(chi(b));
        t.check.compare(std::abs(s - (a == b ? phi : 0.0)), [&] {
          return "columns q=" + std::to_string(q) + " a=" + std::to_string(a) + " b=" + std::to_string(b);
        });
      }
    }
  }
  return t.done();
}

Check check_gauss_modulus(i64 q_max) {
  Timed t("gauss_sum_modulus", 1e-8);
  for (i64 q = 1; q <= q_max; ++q) {
    i64 primitive = 0;
    for (const auto& chi : character_table(q)) {
      if (!chi.is_primitive()) continue;
      ++primitive;
      t.check.compare(std::abs(std::abs(tau(chi)) - std::sqrt(static_cast<double>(q))),
                      [&] { return "|tau| q=" + std::to_string(q); });
    }
    // Number of primitive characters is the Dirichlet convolution mu * phi.
    i64 expect = 0;
    for (i64 d : arith::factorize(q).divisors()) expect += arith::mobius(q / d) * arith::euler_phi(d);
    t.check.expect(primitive == expect, [&] { return "primitive count q=" + std::to_string(q); });
  }
  return t.done();
}

Check check_decomposition(const Options& opts) {
  Timed t("decomposition", 1e-8);
  Rng rng(opts.seed ^ 0xDC);
  const std::vector<i64> cs{1, 5, 7, 35};
  for (i64 q1 = 1; q1 <= DecompositionEngine::kMaxQ1; ++q1) {
    for (i64 r = 1; r <= DecompositionEngine::kMaxR; ++r) {
      const double s = static_cast<double>(rng.uniform(2000, DecompositionEngine::kMaxS));
      const double L = static_cast<double>(rng.uniform(0, 1000)) + 0.5 * static_cast<double>(rng.uniform(0, 1));
      const i64 C = rng.pick(cs);
      const DecompositionEngine eng(q1, r, L, s, C);
      for (i64 j = 0; j < q1; ++j) {
        if (std::gcd(j, q1) != 1) continue;
        for (i64 a = 0; a < r; ++a) {
          if (std::gcd(a, r) != 1) continue;
          const auto res = eng.check(j, a);
          t.check.compare(res.delta, [&] {
            return "q1=" + std::to_string(q1) + " r=" + std::to_string(r) + " j=" + std::to_string(j) +
                   " a=" + std::to_string(a) + " L=" + std::to_string(L) + " s=" + std::to_string(s) +
                   " C=" + std::to_string(C);
          });
        }
      }
    }
  }
  return t.done();
}

SuiteReport characters_suite(const Options& opts) {
  return {"characters", {check_orthogonality(), check_gauss_modulus(), check_decomposition(opts)}};
}

}  // namespace deltasieve::verify
