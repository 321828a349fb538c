#include <gtest/gtest.h>

#include <cmath>

#include "deltasieve/balance.hpp"
#include "deltasieve/density.hpp"

using namespace deltasieve;
using namespace deltasieve::density;

TEST(Sigma, SmallPrimeSquares) {
  EXPECT_EQ(sigma(4).sigma, 8);
  EXPECT_EQ(sigma(9).sigma, 27);
  EXPECT_EQ(sigma(25).sigma, 45);
  EXPECT_EQ(sigma_enumerate(25), 45);
  EXPECT_EQ(sigma(25).density, Rational(45, 625));
}

TEST(Sigma, LeadingFactorIsOneThird) {
  const Rational f = (Rational(1) - Rational(sigma(4).sigma, 16)) * (Rational(1) - Rational(sigma(9).sigma, 81));
  EXPECT_EQ(f, Rational(1, 3));
}

TEST(Sigma, PrimeSquareFormula) {
  for (i64 p : {5, 7, 11, 97, 499}) EXPECT_EQ(sigma(p * p).sigma, 2 * p * p - p) << p;
}

TEST(Sigma, Guards) {
  EXPECT_THROW(sigma(0), DomainError);
  EXPECT_THROW(sigma(10007), LimitExceeded);
  EXPECT_NO_THROW(sigma(499 * 499));
  EXPECT_THROW(sigma_enumerate(1001), LimitExceeded);
}

TEST(PerPrime, Identity) {
  EXPECT_TRUE(per_prime_identity(5));
  EXPECT_TRUE(per_prime_identity(7));
  EXPECT_EQ((Rational(116, 121) * Rational(121, 125)), Rational(1) - Rational(9, 125));
  EXPECT_THROW(per_prime_identity(3), DomainError);
}

TEST(MuPhi, Agreement) {
  const auto r = mu_phi_series(1, 100000, 100000);
  EXPECT_LT(std::abs(r.series - r.product), 2e-5);
  EXPECT_TRUE(r.agrees());
  const auto h5 = mu_phi_series(5, 7, 7);  // only p = 7 survives below 7
  EXPECT_NEAR(h5.product, 1.0 - 6.0 / 343.0, 1e-15);
  const auto empty = mu_phi_series(5, 5, 1);
  EXPECT_EQ(empty.product, 1.0);
  EXPECT_EQ(empty.series, 1.0);
}

TEST(EulerProduct, BothSeriesOverlap) {
  const auto a = euler_product(1, 100000), b = euler_product(2, 100000);
  EXPECT_TRUE(overlap(a, b));
  EXPECT_LT(a.width, 1e-9);
  EXPECT_LT(b.width, 1e-9);
  EXPECT_NEAR(b.lo, 0.28030876735228, 1e-13);
}

TEST(EulerProduct, NestedIntervals) {
  const auto ref = euler_product(2, 100000);
  for (auto mode : {TailMode::accelerated, TailMode::crude}) {
    const auto wide = euler_product(1, 5, mode);
    EXPECT_LE(wide.lo, ref.lo);
    EXPECT_GE(wide.hi, ref.hi);
  }
  EXPECT_GT(euler_product(2, 100000, TailMode::crude).width, 1e-9);  // the plain bound is too weak
}

TEST(EulerProduct, Guards) {
  EXPECT_THROW(euler_product(3, 100), DomainError);
  EXPECT_THROW(euler_product(2, 4), DomainError);
}

TEST(Balance, BuiltinPreset) {
  const auto r = balance_exponents(paper_preset());
  EXPECT_EQ(r.exponent, Rational(184, 27));
  EXPECT_EQ(r.t, Rational(124, 27));
  EXPECT_EQ(r.kappa, Rational(16, 31));
  EXPECT_EQ(paper_preset().max_at(Rational(124, 27), Rational(16, 31)), Rational(7) - Rational(5, 27));
  EXPECT_EQ(r.active.size(), 3u);
}

TEST(Balance, SingleTerm) {
  BalanceProblem p;
  p.terms = {{Rational(6), Rational(0), Rational(0), "6"}};
  EXPECT_EQ(balance_exponents(p).exponent, Rational(6));
  EXPECT_EQ(p.max_at(Rational(3), Rational(1, 2)), Rational(6));
}

TEST(Balance, UnboundedAndEmpty) {
  BalanceProblem p;
  p.terms = {{Rational(10), Rational(-1), Rational(0), "10-t"}};
  EXPECT_THROW(balance_exponents(p), DomainError);
  p.t_max = Rational(4);
  EXPECT_EQ(balance_exponents(p).exponent, Rational(6));
  EXPECT_THROW(balance_exponents(BalanceProblem{}), DomainError);
}

TEST(Balance, GridNeverBeatsExact) {
  const auto g = grid_search(paper_preset(), 200, 10);
  EXPECT_GE(g.best, Rational(184, 27));
  EXPECT_LT((g.best - Rational(184, 27)).to_double(), 0.05);
}
