#include <cmath>
#include <numeric>

#include "deltasieve/characters.hpp"
#include "deltasieve/csv.hpp"
#include "deltasieve/mobius_table.hpp"
#include "deltasieve/pairwise_sum.hpp"

namespace deltasieve::characters {

using arith::reduce;

namespace {

// Integer n-range for L < n <= s, clipped to n >= 1.
std::pair<i64, i64> int_range(double lower, double upper) {
  const i64 lo = std::max<i64>(1, static_cast<i64>(std::floor(lower)) + 1);
  const i64 hi = static_cast<i64>(std::floor(upper));
  return {lo, hi};
}

}  // namespace

cplx ap_mobius_sum(const APMobiusSumSpec& spec) {
  if (spec.q1 < 1) throw DomainError("ap_mobius_sum: q1 must be >= 1");
  if (spec.coprime_to < 1) throw DomainError("ap_mobius_sum: coprimality modulus must be >= 1");
  if (spec.upper > static_cast<double>(arith::MobiusSegments::kMaxUpper)) {
    throw LimitExceeded("range", "ap_mobius_sum needs s <= 10^8");
  }
  const auto [lo, hi] = int_range(spec.lower, spec.upper);
  if (lo > hi) return {0.0, 0.0};
  const i64 j = reduce(spec.j, spec.q1);
  PairwiseSum<cplx> acc;
  arith::MobiusSegments(lo, hi).for_each([&](i64 n, int mu) {
    if (mu == 0 || n % spec.q1 != j || std::gcd(n, spec.coprime_to) != 1) return;
    acc.add(static_cast<double>(mu) * spec.twist(n));
  });
  return acc.total();
}

DecompositionEngine::DecompositionEngine(i64 q1, i64 r, double lower, double upper, i64 coprime_to)
    : q1_(q1), r_(r), C_(coprime_to), L_(lower), s_(upper) {
  if (q1 < 1 || q1 > kMaxQ1) throw LimitExceeded("q1", "decomposition needs 1 <= q1 <= 20");
  if (r < 1 || r > kMaxR) throw LimitExceeded("r", "decomposition needs 1 <= r <= 12");
  if (upper > static_cast<double>(kMaxS)) throw LimitExceeded("s", "decomposition needs s <= 10^4");
  if (!(lower < upper)) throw DomainError("decomposition: need L < s");
  if (coprime_to < 1) throw DomainError("decomposition: coprimality modulus must be >= 1");
  chis_ = character_table(q1);
  const i64 s_int = static_cast<i64>(std::floor(upper));
  const i64 l_int = static_cast<i64>(std::floor(std::max(lower, 0.0)));
  mu_ = arith::mobius_table(std::max<i64>(s_int, 1));

  for (i64 f = 1; f <= r; ++f) {
    if (r % f != 0 || arith::mobius(f) == 0 || std::gcd(f, C_) != 1) continue;
    Block b;
    b.f = f;
    b.r1 = r / f;
    b.chis1 = character_table(b.r1);
    for (const auto& c1 : b.chis1) b.taus.push_back(tau(c1));
    // Mobius mass per (n1 mod q1, n1 mod r1) over L/f < n1 <= s/f with (n1, C f) = 1.
    std::vector<std::vector<PairwiseSum<double>>> mass(static_cast<std::size_t>(q1),
                                                       std::vector<PairwiseSum<double>>(static_cast<std::size_t>(b.r1)));
    const i64 lo = (l_int + 1 + f - 1) / f, hi = s_int / f;
    for (i64 n1 = std::max<i64>(lo, 1); n1 <= hi; ++n1) {
      if (mu_[n1] == 0 || std::gcd(n1, C_ * f) != 1) continue;
      mass[n1 % q1][n1 % b.r1].add(mu_[n1]);
    }
    b.T.assign(chis_.size(), std::vector<cplx>(b.chis1.size()));
    for (std::size_t ci = 0; ci < chis_.size(); ++ci) {
      for (std::size_t k = 0; k < b.chis1.size(); ++k) {
        PairwiseSum<cplx> acc;
        for (i64 x = 0; x < q1; ++x) {
          const cplx cx = chis_[ci](x);
          if (cx == cplx{}) continue;
          for (i64 y = 0; y < b.r1; ++y) {
            const double m = mass[x][y].total();
            if (m == 0.0) continue;
            acc.add(cx * std::conj(b.chis1[k](y)) * m);
          }
        }
        b.T[ci][k] = acc.total();
      }
    }
    blocks_.push_back(std::move(b));
  }
}

cplx DecompositionEngine::direct(i64 j, i64 a) const {
  APMobiusSumSpec spec;
  spec.lower = L_;
  spec.upper = s_;
  spec.twist = Twist::rational(a, r_);
  spec.q1 = q1_;
  spec.j = j;
  spec.coprime_to = C_;
  return ap_mobius_sum(spec);
}

cplx DecompositionEngine::reconstructed(i64 j, i64 a) const {
  if (std::gcd(reduce(j, q1_), q1_) != 1) throw DomainError("decomposition: need (j, q1)=1");
  if (std::gcd(reduce(a, r_), r_) != 1) throw DomainError("decomposition: need (a, r)=1");
  PairwiseSum<cplx> outer;
  for (std::size_t ci = 0; ci < chis_.size(); ++ci) {
    const cplx cj = std::conj(chis_[ci](j));
    PairwiseSum<cplx> over_f;
    for (const auto& b : blocks_) {
      PairwiseSum<cplx> over_chi1;
      for (std::size_t k = 0; k < b.chis1.size(); ++k) {
        over_chi1.add(std::conj(b.chis1[k](a)) * b.taus[k] * b.T[ci][k]);
      }
      const double phi_r1 = static_cast<double>(b.chis1.size());
      over_f.add(static_cast<double>(arith::mobius(b.f)) * chis_[ci](b.f) * over_chi1.total() / phi_r1);
    }
    outer.add(cj * over_f.total());
  }
  return outer.total() / static_cast<double>(chis_.size());
}

DecompositionResult DecompositionEngine::check(i64 j, i64 a) const {
  DecompositionResult r;
  r.direct = direct(j, a);
  r.reconstructed = reconstructed(j, a);
  r.delta = std::abs(r.direct - r.reconstructed);
  return r;
}

DecompositionResult decomposition_check(const APMobiusSumSpec& spec) {
  if (!spec.twist.is_rational()) throw DomainError("decomposition_check: needs a rational twist a/r");
  const i64 r = spec.twist.denominator();
  i64 a = spec.twist.numerator();
  const i64 g = std::gcd(a, r);
  // Reduce a/r to lowest terms so (a, r) = 1.
  const i64 rr = g == 0 ? 1 : r / g;
  a = g == 0 ? 0 : a / g;
  DecompositionEngine engine(spec.q1, rr, spec.lower, spec.upper, spec.coprime_to);
  return engine.check(spec.j, rr == 1 ? 0 : a);
}

std::vector<SjRow> sj_cancellation_scan(i64 q1, const std::vector<double>& s_grid, const std::vector<double>& w_grid,
                                        double lower, i64 coprime_to) {
  if (q1 < 1 || q1 > 50) throw LimitExceeded("q1", "sj scan needs 1 <= q1 <= 50");
  std::vector<SjRow> rows;
  for (double s : s_grid) {
    if (s > 1e7) throw LimitExceeded("s", "sj scan needs s <= 10^7");
    std::vector<Twist> twists;
    for (double w : w_grid) twists.push_back(Twist::real(w));
    std::vector<std::vector<PairwiseSum<cplx>>> acc(w_grid.size(), std::vector<PairwiseSum<cplx>>(static_cast<std::size_t>(q1)));
    const auto [lo, hi] = int_range(lower, s);
    if (lo <= hi) {
      arith::MobiusSegments(lo, hi).for_each([&](i64 n, int mu) {
        if (mu == 0 || std::gcd(n, q1) != 1 || std::gcd(n, coprime_to) != 1) return;
        for (std::size_t wi = 0; wi < twists.size(); ++wi) acc[wi][n % q1].add(static_cast<double>(mu) * twists[wi](n));
      });
    }
    for (std::size_t wi = 0; wi < w_grid.size(); ++wi) {
      double total = 0.0;
      for (i64 j = 0; j < q1; ++j) {
        if (std::gcd(j, q1) == 1) total += std::abs(acc[wi][j].total());
      }
      const double denom = std::sqrt(static_cast<double>(q1)) * std::pow(s, 5.0 / 6.0);
      rows.push_back({q1, s, w_grid[wi], total, denom > 0 ? total / denom : 0.0});
    }
  }
  return rows;
}

void write_sj_csv(std::ostream& os, const std::vector<SjRow>& rows) {
  csv::write_row(os, {"q1", "s", "w", "sum_abs", "ratio"});
  for (const auto& r : rows) {
    csv::write_row(os, {csv::num(static_cast<long long>(r.q1)), csv::num(r.s), csv::num(r.w), csv::num(r.sum_abs),
                        csv::num(r.ratio)});
  }
}

}  // namespace deltasieve::characters
