#include <chrono>
#include <cmath>

#include "deltasieve/csv.hpp"
#include "deltasieve/density.hpp"
#include "deltasieve/sieve.hpp"

namespace deltasieve::sieve {

using arith::reduce;

namespace {

inline constexpr i64 kMaxBrutePrimePower = i64{1} << 16;

i64 floor_div(i64 a, i64 b) {
  i64 q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

// #{B in [-B_max, B_max] : B = r mod m}.
i64 count_in_range(i64 r, i64 m, i64 B_max) { return floor_div(B_max - r, m) - floor_div(-B_max - 1 - r, m); }

// b mod pe with 27 b^2 + 4 a^3 = 0 mod pe.
std::vector<i64> local_roots(i64 A, i64 p, int two_e, i64 pe) {
  const i64 a = reduce(A, pe);
  const i64 a3 = static_cast<i64>(static_cast<i128>(4) * a % pe * a % pe * a % pe);
  std::vector<i64> out;
  if (p == 2 || p == 3) {
    // 27 is not a unit here; scan all residues.
    if (pe > kMaxBrutePrimePower) throw LimitExceeded("modulus", "S_term needs the 2- and 3-parts of k^2 <= 2^16");
    for (i64 b = 0; b < pe; ++b) {
      if ((a3 + static_cast<i64>(static_cast<i128>(27) * b % pe * b % pe)) % pe == 0) out.push_back(b);
    }
    return out;
  }
  const i64 c = static_cast<i64>(static_cast<i128>(pe - a3) % pe * arith::inv(27, pe) % pe);
  for (const auto& r : arith::sqrt_mod_prime_power(c, p, two_e)) out.push_back(r.value());
  return out;
}

i64 zero_delta_pairs(const Box& b) {
  // (0, 0) and (-3t^2, +-2t^3), t >= 1.
  i64 n = 1;
  for (i64 t = 1; 3 * t * t <= b.A_max && 2 * t * t * t <= b.B_max; ++t) n += 2;
  return n;
}

Box exact_box(double X) {
  CountConfig cfg;
  cfg.X = X;
  return box_for(cfg);
}

}  // namespace

i64 k_limit(double X) {
  const Box b = exact_box(X);
  return arith::isqrt(4 * b.A_max * b.A_max * b.A_max + 27 * b.B_max * b.B_max);
}

i64 S_term(double X, i64 k) {
  if (k < 1) throw DomainError("S_term: k must be >= 1");
  const Box b = exact_box(X);
  if (k > k_limit(X)) return 0;  // k^2 exceeds every nonzero |Delta|
  const i64 m = k * k;
  const auto fk = arith::factorize(k);
  struct Part {
    i64 p;
    int two_e;
    i64 pe;
  };
  std::vector<Part> parts;
  for (const auto& [p, e] : fk.factors()) parts.push_back({p, 2 * e, arith::ipow(p, 2 * e)});

  i64 total = 0;
  for (i64 A = -b.A_max; A <= b.A_max; ++A) {
    std::vector<arith::Residue> acc{arith::Residue(0, 1)};
    for (const auto& part : parts) {
      const auto roots = local_roots(A, part.p, part.two_e, part.pe);
      std::vector<arith::Residue> next;
      next.reserve(acc.size() * roots.size());
      for (const auto& r1 : acc) {
        for (i64 r : roots) next.push_back(arith::crt(r1, arith::Residue(r, part.pe)));
      }
      acc = std::move(next);
      if (acc.empty()) break;
    }
    for (const auto& r : acc) total += count_in_range(r.value(), m, b.B_max);
  }
  return total - zero_delta_pairs(b);
}

i64 S_term_brute(double X, i64 k) {
  if (k < 1) throw DomainError("S_term: k must be >= 1");
  const Box b = exact_box(X);
  const i64 m = k * k;
  i64 total = 0;
  for (i64 A = -b.A_max; A <= b.A_max; ++A) {
    for (i64 B = -b.B_max; B <= b.B_max; ++B) {
      const i64 d = delta_value(A, B);
      if (d != 0 && d % m == 0) ++total;
    }
  }
  return total;
}

SieveIdentity mobius_sieve_identity(double X) {
  if (X > 3.0) throw LimitExceeded("X", "mobius_sieve_identity needs X <= 3");
  CountConfig cfg;
  cfg.X = X;
  SieveIdentity out{exact_count(cfg).count, 0};
  const i64 K = k_limit(X);
  for (i64 k = 1; k <= K; ++k) {
    const int mu = arith::mobius(k);
    if (mu != 0) out.mobius_sum += mu * S_term(X, k);
  }
  return out;
}

TailReport tail_S2(double X, double xi) {
  if (X > 3.0) throw LimitExceeded("X", "tail_S2 needs X <= 3");
  if (!(xi >= 0.0)) throw DomainError("tail_S2: xi must be non-negative");
  const i64 K = k_limit(X);
  TailReport out{0, std::pow(X, 16) / (xi * xi)};
  for (i64 k = static_cast<i64>(std::floor(xi)) + 1; k <= K; ++k) {
    const int mu = arith::mobius(k);
    if (mu != 0) out.value += mu * S_term(X, k);
  }
  return out;
}

std::vector<MainTermRow> compare_main_term(const std::vector<double>& xs, Mode mode, unsigned workers) {
  const auto C = density::euler_product(2, 100000);
  std::vector<MainTermRow> rows;
  for (double X : xs) {
    CountConfig cfg;
    cfg.X = X;
    cfg.mode = mode;
    cfg.workers = workers;
    const CountResult r = count(cfg);
    const double scale = (mode == Mode::exact ? 4.0 : 1.0) * std::pow(X, 10);
    MainTermRow row{};
    row.X = X;
    row.mode = mode;
    row.value = r.value();
    row.main_lo = C.lo * scale;
    row.main_hi = C.hi * scale;
    const double mid = 0.5 * (row.main_lo + row.main_hi);
    row.residual = row.value - mid;
    row.residual_over_X7 = row.residual / std::pow(X, 7);
    row.relative_deviation = std::abs(row.value / mid - 1.0);
    row.seconds = r.seconds;
    rows.push_back(row);
  }
  return rows;
}

void write_main_term_csv(std::ostream& os, const std::vector<MainTermRow>& rows) {
  csv::write_row(os, {"X", "mode", "count_or_sum", "main_lo", "main_hi", "residual", "residual_over_X7", "seconds"});
  for (const auto& r : rows) {
    csv::write_row(os, {csv::num(r.X), mode_name(r.mode), csv::num(r.value), csv::num(r.main_lo), csv::num(r.main_hi),
                        csv::num(r.residual), csv::num(r.residual_over_X7), csv::num(r.seconds)});
  }
}

}  // namespace deltasieve::sieve
