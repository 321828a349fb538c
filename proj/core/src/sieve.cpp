#include "deltasieve/sieve.hpp"

#include <algorithm>
#include <atomic>
#include <bit>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <mutex>

#include "deltasieve/pairwise_sum.hpp"
#include "deltasieve/parallel.hpp"

namespace deltasieve::sieve {

using arith::mulmod;
using arith::powmod;

namespace {

struct SievePrime {
  u64 p;
  u64 p2;
  u64 inv27;  // 27^-1 mod p^2, p >= 5
  u64 z;      // a quadratic non-residue mod p
  u64 odd;    // p - 1 = odd * 2^s
  int s;
};

class PrimeTable {
 public:
  // Primes up to at least `limit`; grows under a lock, read-only afterwards.
  static const std::vector<SievePrime>& get(i64 limit) {
    static std::mutex mu;
    static std::vector<SievePrime> table;
    static i64 built = 0;
    std::lock_guard lock(mu);
    if (limit > built) {
      table.clear();
      for (i64 p : arith::primes_up_to(limit)) {
        SievePrime sp{};
        sp.p = static_cast<u64>(p);
        sp.p2 = sp.p * sp.p;
        if (p >= 5) {
          sp.inv27 = static_cast<u64>(arith::inv(27, p * p));
          sp.odd = sp.p - 1;
          while (sp.odd % 2 == 0) {
            sp.odd /= 2;
            ++sp.s;
          }
          for (u64 z = 2;; ++z) {
            if (powmod(z, (sp.p - 1) / 2, sp.p) == sp.p - 1) {
              sp.z = z;
              break;
            }
          }
        }
        table.push_back(sp);
      }
      built = limit;
    }
    return table;
  }
};

// Square root of a quadratic residue c (unit) mod p.
u64 sqrt_mod_p(u64 c, const SievePrime& sp) {
  const u64 p = sp.p;
  if (p % 4 == 3) return powmod(c, (p + 1) / 4, p);
  u64 m = static_cast<u64>(sp.s);
  u64 cc = powmod(sp.z, sp.odd, p);
  u64 t = powmod(c, sp.odd, p);
  u64 r = powmod(c, (sp.odd + 1) / 2, p);
  while (t != 1) {
    u64 i = 0, tt = t;
    while (tt != 1) {
      tt = mulmod(tt, tt, p);
      ++i;
    }
    u64 b = cc;
    for (u64 j = 0; j + i + 1 < m; ++j) b = mulmod(b, b, p);
    m = i;
    cc = mulmod(b, b, p);
    t = mulmod(t, cc, p);
    r = mulmod(r, b, p);
  }
  return r;
}

i64 stripe_prime_bound(i64 A, i64 B_max) {
  const i64 a = A < 0 ? -A : A;
  return arith::isqrt(4 * a * a * a + 27 * B_max * B_max);
}

void mark_progression(std::vector<std::uint32_t>& marks, i64 B_max, u64 r, u64 m, u64 p) {
  // First B >= -B_max with B = r mod m.
  const i64 mm = static_cast<i64>(m);
  i64 start = -B_max + arith::reduce(static_cast<i64>(r) + B_max, mm);
  for (i64 B = start; B <= B_max; B += mm) {
    auto& slot = marks[static_cast<std::size_t>(B + B_max)];
    if (slot == 0) slot = static_cast<std::uint32_t>(p);
  }
}

void mark_into(i64 A, i64 B_max, std::vector<std::uint32_t>& marks) {
  marks.assign(static_cast<std::size_t>(2 * B_max + 1), 0);
  const i64 bound = stripe_prime_bound(A, B_max);
  const auto& primes = PrimeTable::get(bound);
  for (const auto& sp : primes) {
    if (static_cast<i64>(sp.p) > bound) break;
    const u64 p = sp.p;
    if (p == 2) {
      // 4A^3 = 0 mod 4, so 4 | Delta iff B is even.
      mark_progression(marks, B_max, 0, 2, 2);
      continue;
    }
    if (p == 3) {
      // 27B^2 = 0 mod 9, so 9 | Delta iff 3 | A.
      if (A % 3 == 0) mark_progression(marks, B_max, 0, 1, 3);
      continue;
    }
    const i64 ip = static_cast<i64>(p);
    if (A % ip == 0) {
      // p | A: p^2 | Delta iff p | B.
      mark_progression(marks, B_max, 0, p, p);
      continue;
    }
    const u64 p2 = sp.p2;
    const u64 a = static_cast<u64>(arith::reduce(A, static_cast<i64>(p2)));
    // B^2 = -4 A^3 / 27 mod p^2, a unit.
    u64 c = mulmod(mulmod(mulmod(a, a, p2), a, p2), 4, p2);
    c = mulmod(p2 - c, sp.inv27, p2);
    const u64 cp = c % p;
    if (powmod(cp, (p - 1) / 2, p) != 1) continue;
    const u64 r = sqrt_mod_p(cp, sp);
    // Lift r to mod p^2: r - (r^2 - c)/(2r).
    const u64 r2 = mulmod(r, r, p2);
    const u64 diff = (r2 + p2 - c) % p2;  // divisible by p
    const u64 k = mulmod(diff / p, static_cast<u64>(arith::inv(static_cast<i64>(2 * r % p), ip)), p);
    const u64 root = (r + p2 - (k * p) % p2) % p2;
    mark_progression(marks, B_max, root, p2, p);
    mark_progression(marks, B_max, p2 - root, p2, p);
  }
}

double resolve_max_seconds(double v) {
  if (v != 0.0) return v;
  if (const char* env = std::getenv("DELTASIEVE_MAX_SECONDS")) {
    char* end = nullptr;
    const double s = std::strtod(env, &end);
    if (end != env && s > 0.0) return s;
  }
  return -1.0;
}

u64 fnv1a(u64 h, u64 v) {
  for (int i = 0; i < 8; ++i) {
    h ^= (v >> (8 * i)) & 0xff;
    h *= 1099511628211ULL;
  }
  return h;
}

bool is_zero_delta(i64 A, i64 B) { return delta_value(A, B) == 0; }

i64 floor_pow(double X, int e) {
  return static_cast<i64>(std::floor(std::pow(static_cast<long double>(X), e)));
}

CountResult run_count(CountConfig cfg) {
  if (!(cfg.X > 0.0) || !std::isfinite(cfg.X)) throw DomainError("count: X must be positive");
  if (cfg.chunk < 1) throw DomainError("count: chunk must be >= 1");
  const double limit = resolve_max_seconds(cfg.max_seconds);
  const Box box = box_for(cfg);
  const unsigned workers = cfg.workers == 0 ? default_workers() : cfg.workers;
  const auto t0 = std::chrono::steady_clock::now();
  const std::size_t stripes = static_cast<std::size_t>(2 * box.A_max + 1);

  // Warm the shared prime table before the workers read it.
  PrimeTable::get(stripe_prime_bound(box.A_max, box.B_max));

  CountResult out;
  out.X = cfg.X;
  out.mode = cfg.mode;
  out.box = box;
  if (cfg.mode == Mode::exact) out.stripe_counts.assign(stripes, 0);
  else out.stripe_sums.assign(stripes, 0.0);
  const double xa = std::pow(cfg.X, 4), xb = std::pow(cfg.X, 6);
  std::vector<double> b_weights;
  if (cfg.mode == Mode::smoothed) {
    for (i64 B = -box.B_max; B <= box.B_max; ++B) b_weights.push_back(cfg.weight.value(static_cast<double>(B) / xb));
  }

  const std::size_t chunks = (stripes + static_cast<std::size_t>(cfg.chunk) - 1) / static_cast<std::size_t>(cfg.chunk);
  parallel_for(chunks, workers, [&](std::size_t ci) {
    std::vector<std::uint32_t> marks;
    const std::size_t lo = ci * static_cast<std::size_t>(cfg.chunk);
    const std::size_t hi = std::min(stripes, lo + static_cast<std::size_t>(cfg.chunk));
    for (std::size_t idx = lo; idx < hi; ++idx) {
      if (limit > 0.0 && std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count() > limit) {
        throw LimitExceeded("time", "count exceeded DELTASIEVE_MAX_SECONDS");
      }
      const i64 A = static_cast<i64>(idx) - box.A_max;
      mark_into(A, box.B_max, marks);
      if (cfg.mode == Mode::exact) {
        i64 c = 0;
        for (std::size_t j = 0; j < marks.size(); ++j) {
          if (marks[j] == 0 && !is_zero_delta(A, static_cast<i64>(j) - box.B_max)) ++c;
        }
        out.stripe_counts[idx] = c;
      } else {
        PairwiseSum<double> acc;
        for (std::size_t j = 0; j < marks.size(); ++j) {
          if (marks[j] == 0 && !is_zero_delta(A, static_cast<i64>(j) - box.B_max)) acc.add(b_weights[j]);
        }
        out.stripe_sums[idx] = cfg.weight.value(static_cast<double>(A) / xa) * acc.total();
      }
    }
  });

  u64 h = 1469598103934665603ULL;
  if (cfg.mode == Mode::exact) {
    for (i64 c : out.stripe_counts) {
      out.count += c;
      h = fnv1a(h, static_cast<u64>(c));
    }
  } else {
    out.weighted_sum = tree_reduce(out.stripe_sums);
    for (double s : out.stripe_sums) h = fnv1a(h, std::bit_cast<u64>(s));
  }
  out.checksum = h;
  out.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return out;
}

}  // namespace

i64 delta_value(i64 A, i64 B) {
  if (A > kMaxDeltaA || -A > kMaxDeltaA || B > kMaxDeltaB || -B > kMaxDeltaB) {
    throw LimitExceeded("delta", "delta_value needs |A| <= 2^20 and |B| <= 2^21");
  }
  return 4 * A * A * A + 27 * B * B;
}

const char* mode_name(Mode m) { return m == Mode::exact ? "exact" : "smoothed"; }

Box box_for(const CountConfig& cfg) {
  if (!(cfg.X > 0.0) || !std::isfinite(cfg.X)) throw DomainError("count: X must be positive");
  Box b{};
  if (cfg.mode == Mode::exact) {
    if (cfg.X > kMaxExactX) throw LimitExceeded("X", "exact mode needs X <= 8");
    b = {floor_pow(cfg.X, 4), floor_pow(cfg.X, 6)};
  } else {
    if (!(cfg.truncation > 0.0) || cfg.truncation >= 1.0) throw DomainError("smoothed: truncation must lie in (0,1)");
    const double Z = cfg.weight.value_radius(cfg.truncation);
    b = {static_cast<i64>(std::floor(std::pow(cfg.X, 4) * Z)), static_cast<i64>(std::floor(std::pow(cfg.X, 6) * Z))};
  }
  if (b.A_max > kMaxDeltaA || b.B_max > kMaxDeltaB) throw LimitExceeded("box", "box exceeds |A| <= 2^20, |B| <= 2^21");
  return b;
}

CountResult exact_count(CountConfig cfg) {
  cfg.mode = Mode::exact;
  return run_count(cfg);
}

CountResult smoothed_count(CountConfig cfg) {
  cfg.mode = Mode::smoothed;
  return run_count(cfg);
}

CountResult count(const CountConfig& cfg) { return run_count(cfg); }

std::vector<std::uint32_t> mark_stripe(i64 A, i64 B_max) {
  if (B_max < 0 || B_max > kMaxDeltaB || A > kMaxDeltaA || -A > kMaxDeltaA) {
    throw LimitExceeded("box", "mark_stripe needs |A| <= 2^20, 0 <= B_max <= 2^21");
  }
  std::vector<std::uint32_t> marks;
  mark_into(A, B_max, marks);
  return marks;
}

bool squarefree_trial(i64 n) {
  if (n == 0) throw DomainError("squarefree_trial: n must be nonzero");
  // Covers the cube root of every |Delta| that delta_value admits.
  static const std::vector<i64> small = arith::primes_up_to(1'700'000);
  u64 m = n < 0 ? static_cast<u64>(-n) : static_cast<u64>(n);
  for (i64 ip : small) {
    const u64 p = static_cast<u64>(ip);
    if (p * p * p > m) break;
    if (m % p) continue;
    m /= p;
    if (m % p == 0) return false;
  }
  // m is 1, a prime, a product of two primes, or a prime square.
  const u64 r = static_cast<u64>(arith::isqrt(static_cast<i64>(m)));
  return m == 1 || r * r != m;
}

i64 naive_count(double X) {
  CountConfig cfg;
  cfg.X = X;
  const Box b = box_for(cfg);
  i64 c = 0;
  for (i64 A = -b.A_max; A <= b.A_max; ++A) {
    for (i64 B = -b.B_max; B <= b.B_max; ++B) {
      const i64 d = delta_value(A, B);
      if (d != 0 && squarefree_trial(d)) ++c;
    }
  }
  return c;
}

double naive_smoothed(const CountConfig& cfg_in) {
  CountConfig cfg = cfg_in;
  cfg.mode = Mode::smoothed;
  const Box b = box_for(cfg);
  const double xa = std::pow(cfg.X, 4), xb = std::pow(cfg.X, 6);
  long double acc = 0.0L;
  for (i64 A = -b.A_max; A <= b.A_max; ++A) {
    long double row = 0.0L;
    for (i64 B = -b.B_max; B <= b.B_max; ++B) {
      const i64 d = delta_value(A, B);
      if (d != 0 && squarefree_trial(d)) row += cfg.weight.value(static_cast<double>(B) / xb);
    }
    acc += row * cfg.weight.value(static_cast<double>(A) / xa);
  }
  return static_cast<double>(acc);
}

}  // namespace deltasieve::sieve
