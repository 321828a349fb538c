#pragma once

#include <cstdint>
#include <vector>

#include "deltasieve/arith.hpp"

namespace deltasieve::arith {

// mu(n) for 0 <= n <= limit, mu(0) = 0.
std::vector<std::int8_t> mobius_table(i64 limit);

// Segmented Mobius sieve over [lo, hi] (lo >= 1). Each segment is sieved by
// primes up to sqrt(hi) using a running product of found prime factors.
class MobiusSegments {
 public:
  static constexpr i64 kMaxUpper = 100000000;
  static constexpr i64 kSegment = 1 << 18;

  MobiusSegments(i64 lo, i64 hi);

  // Calls visit(n, mu(n)) for every n in [lo, hi] in increasing order.
  template <class Visit>
  void for_each(Visit&& visit) const {
    std::vector<std::int8_t> seg;
    for (i64 start = lo_; start <= hi_; start += kSegment) {
      i64 end = std::min(hi_, start + kSegment - 1);
      fill(start, end, seg);
      for (i64 n = start; n <= end; ++n) visit(n, static_cast<int>(seg[n - start]));
    }
  }

 private:
  void fill(i64 start, i64 end, std::vector<std::int8_t>& out) const;
  i64 lo_, hi_;
  std::vector<i64> primes_;
};

}  // namespace deltasieve::arith
