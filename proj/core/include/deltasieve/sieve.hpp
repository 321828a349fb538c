#pragma once

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "deltasieve/arith.hpp"
#include "deltasieve/weight.hpp"

namespace deltasieve::sieve {

inline constexpr double kMaxExactX = 8.0;
inline constexpr i64 kMaxDeltaA = i64{1} << 20;
inline constexpr i64 kMaxDeltaB = i64{1} << 21;

// 4A^3 + 27B^2.
i64 delta_value(i64 A, i64 B);

enum class Mode { exact, smoothed };
const char* mode_name(Mode m);

struct CountConfig {
  double X = 1.0;
  Mode mode = Mode::exact;
  SchwartzWeight weight = SchwartzWeight::gaussian();
  unsigned workers = 0;   // 0: hardware concurrency
  i64 chunk = 8;          // A-stripes per work item
  double truncation = 1e-14;  // smoothed: drop pairs with weight below this
  // Wall-clock guard in seconds; 0 reads DELTASIEVE_MAX_SECONDS, negative disables.
  double max_seconds = 0.0;
};

struct Box {
  i64 A_max;
  i64 B_max;
};
// |A| <= X^4, |B| <= X^6 (exact) or the truncated smoothed box.
Box box_for(const CountConfig& cfg);

struct CountResult {
  double X;
  Mode mode;
  i64 count = 0;              // exact mode
  double weighted_sum = 0.0;  // smoothed mode
  Box box{};
  double seconds = 0.0;
  std::vector<i64> stripe_counts;  // per A, ascending
  std::vector<double> stripe_sums;   // smoothed, per A
  u64 checksum = 0;  // FNV-1a over the per-stripe results

  double value() const { return mode == Mode::exact ? static_cast<double>(count) : weighted_sum; }
};

// Square-free Delta count over the box with the per-A stripe sieve.
CountResult exact_count(CountConfig cfg);
// Weighted sum of Gamma(A/X^4) Gamma(B/X^6) over square-free Delta.
CountResult smoothed_count(CountConfig cfg);
CountResult count(const CountConfig& cfg);

// For one A: entry B + B_max holds the smallest prime p with p^2 | Delta found
// by the sieve, or 0. Primes run up to sqrt(max |Delta| on the stripe).
std::vector<std::uint32_t> mark_stripe(i64 A, i64 B_max);

// Trial division square-free test (|n| > 0).
bool squarefree_trial(i64 n);
// Per-pair oracles over the same boxes.
i64 naive_count(double X);
double naive_smoothed(const CountConfig& cfg);

// Pairs in the exact box with k^2 | Delta and Delta != 0.
i64 S_term(double X, i64 k);
i64 S_term_brute(double X, i64 k);
// Largest k that can divide a nonzero Delta in the exact box: isqrt(max |Delta|).
i64 k_limit(double X);

struct SieveIdentity {
  i64 count;
  i64 mobius_sum;
  bool ok() const { return count == mobius_sum; }
};
SieveIdentity mobius_sieve_identity(double X);

struct TailReport {
  i64 value;
  double bound_shape;  // X^16 / xi^2
};
TailReport tail_S2(double X, double xi);

struct MainTermRow {
  double X;
  Mode mode;
  double value;
  double main_lo;
  double main_hi;
  double residual;  // value - midpoint of the main-term interval
  double residual_over_X7;
  double relative_deviation;  // |value / main - 1|
  double seconds;
};

// Main terms 4 C X^10 (exact box) and C X^10 (smoothed), C from the density module.
std::vector<MainTermRow> compare_main_term(const std::vector<double>& xs, Mode mode, unsigned workers = 0);
void write_main_term_csv(std::ostream& os, const std::vector<MainTermRow>& rows);

}  // namespace deltasieve::sieve
