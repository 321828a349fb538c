#include <gtest/gtest.h>

#include <cmath>
#include <cstdlib>
#include <sstream>

#include "deltasieve/sieve.hpp"

using namespace deltasieve;
using namespace deltasieve::sieve;

namespace {
CountConfig exact(double X, unsigned workers = 0) {
  CountConfig c;
  c.X = X;
  c.workers = workers;
  return c;
}
}  // namespace

TEST(Delta, Values) {
  EXPECT_EQ(delta_value(1, 1), 31);
  EXPECT_EQ(delta_value(-3, 2), 0);
  EXPECT_EQ(delta_value(0, 1), 27);
  EXPECT_THROW(delta_value(i64{1} << 21, 0), LimitExceeded);
}

TEST(ExactCount, XOne) {
  const auto r = exact_count(exact(1));
  EXPECT_EQ(r.count, 4);
  EXPECT_EQ(r.box.A_max, 1);
  EXPECT_EQ(r.box.B_max, 1);
  EXPECT_EQ(naive_count(1), 4);
}

TEST(ExactCount, MatchesNaive) {
  for (double X : {2.0, 2.5, 3.0}) EXPECT_EQ(exact_count(exact(X)).count, naive_count(X)) << X;
}

TEST(ExactCount, Guards) {
  EXPECT_THROW(exact_count(exact(9)), LimitExceeded);
  CountConfig c = exact(3);
  c.max_seconds = 1e-9;
  EXPECT_THROW(exact_count(c), LimitExceeded);
}

TEST(ExactCount, EnvGuard) {
  ::setenv("DELTASIEVE_MAX_SECONDS", "0.000000001", 1);
  EXPECT_THROW(exact_count(exact(3)), LimitExceeded);
  CountConfig off = exact(2);
  off.max_seconds = -1;
  EXPECT_NO_THROW(exact_count(off));
  ::unsetenv("DELTASIEVE_MAX_SECONDS");
}

TEST(ExactCount, WorkerInvariance) {
  const auto a = exact_count(exact(3, 1)), b = exact_count(exact(3, 16));
  EXPECT_EQ(a.count, b.count);
  EXPECT_EQ(a.checksum, b.checksum);
  EXPECT_EQ(a.stripe_counts, b.stripe_counts);
}

TEST(SmoothedCount, MatchesOracle) {
  CountConfig c;
  c.X = 2;
  c.mode = Mode::smoothed;
  const double s = smoothed_count(c).weighted_sum;
  EXPECT_NEAR(s / naive_smoothed(c), 1.0, 1e-10);
  c.workers = 16;
  EXPECT_EQ(smoothed_count(c).weighted_sum, s);
}

TEST(SmoothedCount, SmallXBounded) {
  CountConfig c;
  c.X = 0.5;
  c.mode = Mode::smoothed;
  const auto r = smoothed_count(c);
  EXPECT_GE(r.weighted_sum, 0.0);
  EXPECT_LE(r.weighted_sum, static_cast<double>((2 * r.box.A_max + 1) * (2 * r.box.B_max + 1)));
}

TEST(MarkStripe, MarksAreSound) {
  for (i64 A : {-300, -27, -12, 0, 7, 45, 256}) {
    const i64 B_max = 4096;
    const auto m = mark_stripe(A, B_max);
    for (i64 B = -B_max; B <= B_max; ++B) {
      const auto p = static_cast<i64>(m[static_cast<std::size_t>(B + B_max)]);
      const i64 d = delta_value(A, B);
      if (p != 0) {
        ASSERT_EQ(d % (p * p), 0) << A << " " << B;
      } else if (d != 0) {
        ASSERT_TRUE(squarefree_trial(d)) << A << " " << B;
      }
    }
  }
}

TEST(STerm, Examples) {
  EXPECT_EQ(S_term(1, 2), 2);
  EXPECT_EQ(S_term(1, 5), 0);
  EXPECT_EQ(S_term(2, 1), S_term_brute(2, 1));
  // k = 1 counts every pair with nonzero Delta.
  EXPECT_EQ(S_term(1, 1), 9 - 1);
  for (i64 k : {6, 9, 10, 25, 36}) EXPECT_EQ(S_term(2, k), S_term_brute(2, k)) << k;
  EXPECT_THROW(S_term(1, 0), DomainError);
}

TEST(MobiusIdentity, Exact) {
  for (double X : {1.0, 2.0, 3.0}) {
    const auto r = mobius_sieve_identity(X);
    EXPECT_TRUE(r.ok()) << X << ": " << r.count << " vs " << r.mobius_sum;
  }
  EXPECT_EQ(mobius_sieve_identity(1).count, 4);
  EXPECT_THROW(mobius_sieve_identity(4), LimitExceeded);
}

TEST(Tail, Examples) {
  EXPECT_EQ(tail_S2(1, 3).value, 0);
  EXPECT_EQ(tail_S2(2, static_cast<double>(k_limit(2))).value, 0);
  const auto t = tail_S2(2, 2);
  EXPECT_EQ(t.value, -924);
  EXPECT_DOUBLE_EQ(t.bound_shape, std::pow(2.0, 16) / 4.0);
}

TEST(MainTerm, XOneAndCsv) {
  const auto rows = compare_main_term({1.0}, Mode::exact);
  ASSERT_EQ(rows.size(), 1u);
  EXPECT_EQ(rows[0].value, 4.0);
  EXPECT_NEAR(rows[0].residual, 4.0 - 4.0 * 0.2803087673522800, 1e-12);
  std::ostringstream os;
  write_main_term_csv(os, rows);
  EXPECT_EQ(os.str().substr(0, os.str().find('\n')),
            "X,mode,count_or_sum,main_lo,main_hi,residual,residual_over_X7,seconds\r");
}
