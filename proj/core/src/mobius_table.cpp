#include "deltasieve/mobius_table.hpp"

#include <algorithm>

namespace deltasieve::arith {

std::vector<std::int8_t> mobius_table(i64 limit) {
  if (limit < 0) throw DomainError("mobius_table: negative limit");
  std::vector<std::int8_t> mu(static_cast<std::size_t>(limit) + 1, 1);
  std::vector<bool> composite(static_cast<std::size_t>(limit) + 1, false);
  mu[0] = 0;
  for (i64 p = 2; p <= limit; ++p) {
    if (composite[p]) continue;
    for (i64 j = p; j <= limit; j += p) {
      if (j > p) composite[j] = true;
      mu[j] = static_cast<std::int8_t>(-mu[j]);
    }
    if (p <= limit / p) {
      for (i64 j = p * p; j <= limit; j += p * p) mu[j] = 0;
    }
  }
  return mu;
}

MobiusSegments::MobiusSegments(i64 lo, i64 hi) : lo_(std::max<i64>(lo, 1)), hi_(hi) {
  if (hi_ > kMaxUpper) {
    throw LimitExceeded("mobius range", "upper end exceeds 10^8");
  }
  primes_ = primes_up_to(isqrt(std::max<i64>(hi_, 1)));
}

void MobiusSegments::fill(i64 start, i64 end, std::vector<std::int8_t>& out) const {
  const std::size_t len = static_cast<std::size_t>(end - start + 1);
  out.assign(len, 1);
  std::vector<i64> prod(len, 1);
  for (i64 p : primes_) {
    if (p * p > end) break;
    i64 first = (start + p - 1) / p * p;
    for (i64 j = first; j <= end; j += p) {
      out[j - start] = static_cast<std::int8_t>(-out[j - start]);
      prod[j - start] *= p;
    }
    i64 pp = p * p;
    i64 first2 = (start + pp - 1) / pp * pp;
    for (i64 j = first2; j <= end; j += pp) out[j - start] = 0;
  }
  // One prime factor above sqrt(end) may remain.
  for (std::size_t i = 0; i < len; ++i) {
    if (out[i] != 0 && prod[i] != start + static_cast<i64>(i)) out[i] = static_cast<std::int8_t>(-out[i]);
  }
}

}  // namespace deltasieve::arith
