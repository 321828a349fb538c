#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "deltasieve/characters.hpp"

using namespace deltasieve;
using namespace deltasieve::characters;

TEST(CharacterTable, Sizes) {
  EXPECT_EQ(character_table(1).size(), 1u);
  EXPECT_EQ(character_table(5).size(), 4u);
  EXPECT_EQ(character_table(8).size(), 4u);
  EXPECT_EQ(character_table(60).size(), 16u);
}

TEST(CharacterTable, ValuesAtTwoModFive) {
  std::vector<cplx> vals;
  for (const auto& chi : character_table(5)) vals.push_back(chi(2));
  for (const cplx want : {cplx(1, 0), cplx(0, 1), cplx(-1, 0), cplx(0, -1)}) {
    EXPECT_TRUE(std::any_of(vals.begin(), vals.end(), [&](cplx v) { return std::abs(v - want) < 1e-12; }));
  }
}

TEST(CharacterTable, ModEightIsReal) {
  for (const auto& chi : character_table(8)) {
    for (i64 n = 0; n < 8; ++n) EXPECT_NEAR(chi(n).imag(), 0.0, 1e-15);
  }
}

TEST(Character, MultiplicativeAndPeriodic) {
  for (const auto& chi : character_table(45)) {
    for (i64 a = 1; a < 45; ++a) {
      EXPECT_NEAR(std::abs(chi(a + 45) - chi(a)), 0.0, 1e-14);
      for (i64 b = 1; b < 45; b += 7) EXPECT_NEAR(std::abs(chi(a * b) - chi(a) * chi(b)), 0.0, 1e-12);
    }
    EXPECT_EQ(chi(3), cplx(0, 0));
  }
}

TEST(GaussSum, Examples) {
  EXPECT_NEAR(std::abs(tau(character_table(1)[0]) - cplx(1, 0)), 0.0, 1e-14);
  for (const auto& chi : character_table(5)) {
    if (chi.is_primitive()) EXPECT_NEAR(std::abs(tau(chi)), std::sqrt(5.0), 1e-12);
  }
  EXPECT_NEAR(std::abs(tau(principal_character(6)) - cplx(1, 0)), 0.0, 1e-12);
  EXPECT_NEAR(std::abs(tau(principal_character(12)) - cplx(0, 0)), 0.0, 1e-12);  // mu(12) = 0
}

TEST(ApMobiusSum, Examples) {
  APMobiusSumSpec s;
  s.upper = 10;
  EXPECT_NEAR(std::abs(ap_mobius_sum(s) - cplx(-1, 0)), 0.0, 1e-12);
  s.lower = 10;
  EXPECT_EQ(ap_mobius_sum(s), cplx(0, 0));
  s.lower = 0;
  s.upper = 4;
  s.twist = Twist::rational(1, 2);
  EXPECT_NEAR(std::abs(ap_mobius_sum(s) - cplx(-1, 0)), 0.0, 1e-12);
  s.twist = Twist::real(0.5);
  EXPECT_NEAR(std::abs(ap_mobius_sum(s) - cplx(-1, 0)), 0.0, 1e-12);
}

TEST(ApMobiusSum, ProgressionAndCoprimality) {
  APMobiusSumSpec s;
  s.upper = 100;
  s.q1 = 4;
  s.j = 1;
  s.coprime_to = 3;
  int want = 0;
  for (i64 n = 1; n <= 100; ++n) {
    if (n % 4 == 1 && n % 3 != 0) want += arith::mobius(n);
  }
  EXPECT_NEAR(std::abs(ap_mobius_sum(s) - cplx(want, 0)), 0.0, 1e-12);
}

TEST(Decomposition, Examples) {
  APMobiusSumSpec s;
  s.upper = 3000;
  s.q1 = 4;
  s.j = 3;
  s.twist = Twist::rational(0, 1);
  EXPECT_LT(decomposition_check(s).delta, 1e-10);

  s.q1 = 5;
  s.j = 2;
  s.upper = 2000;
  s.twist = Twist::rational(1, 3);
  EXPECT_LT(decomposition_check(s).delta, 1e-8);

  s.q1 = 7;
  s.j = 3;
  s.upper = 5000;
  s.twist = Twist::rational(2, 5);
  s.coprime_to = 11;
  EXPECT_LT(decomposition_check(s).delta, 1e-8);
}

TEST(Decomposition, Guards) {
  EXPECT_THROW(DecompositionEngine(21, 1, 0, 100, 1), LimitExceeded);
  EXPECT_THROW(DecompositionEngine(5, 13, 0, 100, 1), LimitExceeded);
  EXPECT_THROW(DecompositionEngine(5, 3, 0, 20000, 1), LimitExceeded);
  EXPECT_THROW(DecompositionEngine(5, 3, 0, 100, 1).check(5, 1), DomainError);
}

TEST(DirichletApproximation, NearRational) {
  const auto a = dirichlet_approximation(1.0 / 3.0 + 1e-9, 100);
  EXPECT_EQ(a.a, 1);
  EXPECT_EQ(a.r, 3);
  EXPECT_NEAR(a.beta, 1e-9, 1e-15);
}

TEST(SjScan, MertensAtTen) {
  const auto rows = sj_cancellation_scan(1, {10.0}, {0.0});
  ASSERT_EQ(rows.size(), 1u);
  EXPECT_NEAR(rows[0].sum_abs, 1.0, 1e-12);
  EXPECT_NEAR(rows[0].ratio, std::pow(10.0, -5.0 / 6.0), 1e-12);
  std::ostringstream os;
  write_sj_csv(os, rows);
  EXPECT_EQ(os.str().substr(0, os.str().find('\n')), "q1,s,w,sum_abs,ratio\r");
}
