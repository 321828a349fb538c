#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "deltasieve/expsum.hpp"

using namespace deltasieve;
using namespace deltasieve::expsum;

namespace {
constexpr double kPi = std::numbers::pi;
}

TEST(RawPhaseSum, Examples) {
  EXPECT_NEAR(std::abs(raw_phase_sum(PhasePolynomial({}, 5, true)).value - cplx(4, 0)), 0.0, 1e-12);
  EXPECT_NEAR(std::abs(raw_phase_sum(PhasePolynomial({1}, 7)).value), 0.0, 1e-12);
  const cplx cube = raw_phase_sum(PhasePolynomial::cubic(1, 0, 0, 9)).value;
  EXPECT_NEAR(cube.real(), 3.0 * (1.0 + 2.0 * std::cos(2 * kPi / 9)), 1e-12);
  EXPECT_NEAR(cube.imag(), 0.0, 1e-12);
}

TEST(RawPhaseSum, ModulusGuard) { EXPECT_THROW(raw_phase_sum(PhasePolynomial({1}, 20000000)), LimitExceeded); }

TEST(ESum, Examples) {
  EXPECT_NEAR(std::abs(E_sum(0, 0, 5).value - cplx(4, 0)), 0.0, 1e-12);
  EXPECT_NEAR(std::abs(E_sum(17, -3, 1).value - cplx(1, 0)), 0.0, 1e-12);
  EXPECT_NEAR(std::abs(E_sum(0, 1, 5).value - cplx(std::sqrt(5.0) - 1.0, 0)), 0.0, 1e-12);
}

TEST(CalE, Examples) {
  EXPECT_NEAR(std::abs(cal_E({{1, 1, 1, 5}, 0, 0}).value - cplx(20, 0)), 0.0, 1e-9);
  EXPECT_NEAR(std::abs(cal_E({{1, 1, 1, 1}, 3, -2}).value - cplx(1, 0)), 0.0, 1e-12);
  const CongruenceFrame f{1, 1, 1, 5};
  EXPECT_NEAR(std::abs(cal_E({f, 1, 0}).value - exptrans_rhs(f, 1, 0).value), 0.0, 1e-9);
}

TEST(Frame, Validation) {
  EXPECT_THROW((CongruenceFrame{1, 1, 1, 9}.validate()), DomainError);   // not square-free
  EXPECT_THROW((CongruenceFrame{1, 1, 5, 5}.validate()), DomainError);   // (l, 6h) > 1
  EXPECT_THROW((CongruenceFrame{3, 1, 1, 5}.validate()), DomainError);
  EXPECT_NO_THROW((CongruenceFrame{2, 3, 7, 55}.validate()));
}

TEST(EExplicit, Examples) {
  const CongruenceFrame f{1, 1, 1, 5};
  EXPECT_EQ(evaluate_E_explicit(f, 5, 1).value, cplx(0, 0));
  EXPECT_NEAR(std::abs(evaluate_E_explicit(f, 0, 0).value - cplx(20, 0)), 0.0, 1e-9);
  EXPECT_NEAR(std::abs(evaluate_E_explicit(f, 1, 1).value - exptrans_rhs(f, 1, 1).value), 0.0, 1e-9);
}

TEST(EExplicit, SharedFactorWithModulus) {
  // m and n both divisible by l: only the d-part survives, scaled by d.
  for (const CongruenceFrame f : {CongruenceFrame{2, 3, 1, 5}, CongruenceFrame{1, 1, 1, 35}}) {
    const DoubleSumSolutions sols(f);
    for (i64 m : {f.l, 3 * f.l, -f.l * f.l, i64{7}}) {
      for (i64 n : {f.l, 2 * f.l, i64{0}}) {
        EXPECT_NEAR(std::abs(evaluate_E_explicit(f, m, n).value - sols.evaluate(m, n).value), 0.0, 1e-8)
            << f.describe() << " m=" << m << " n=" << n;
      }
    }
  }
}

TEST(EExplicit, L1FactorRoutesAgree) {
  const CongruenceFrame f{2, 1, 7, 55};
  for (i64 m : {1, 2, 5, 11, 13}) {
    for (i64 n : {1, 3, 4, 10}) {
      const FrameSplit s = split_frame(f, m, n);
      if (!s.divisible || std::gcd(s.n1, s.l1) != 1) continue;
      const cplx h = l1_factor_hensel(f, s), c = l1_factor_closed(f, s), k = l1_factor_flipped(f, s);
      EXPECT_NEAR(std::abs(h - c), 0.0, 1e-9) << "m=" << m << " n=" << n;
      EXPECT_NEAR(std::abs(c - k), 0.0, 1e-9) << "m=" << m << " n=" << n;
    }
  }
}

TEST(GaussF, Examples) {
  EXPECT_NEAR(std::abs(gauss_f(3, 1) - cplx(1, 0)), 0.0, 1e-15);
  EXPECT_NEAR(std::abs(gauss_f(1, 5) - cplx(std::sqrt(5.0) - 1.0, 0)), 0.0, 1e-12);
  EXPECT_LE(std::abs(gauss_f(2, 35)), (std::sqrt(5.0) + 1) * (std::sqrt(7.0) + 1) + 1e-12);
  EXPECT_NEAR(std::abs(gauss_f(2, 35) - E_sum(0, 2, 35).value), 0.0, 1e-10);
  EXPECT_THROW(gauss_f(1, 9), DomainError);
}

TEST(KloostermanFlip, Examples) {
  EXPECT_TRUE(kloosterman_flip_check(1, 3, 5));
  EXPECT_TRUE(kloosterman_flip_check(2, 2, 3));
  EXPECT_TRUE(kloosterman_flip_check(4, 1, 11));
  EXPECT_LT(kloosterman_flip_deviation(2, 2, 3), 1e-12);
  EXPECT_THROW(kloosterman_flip_check(1, 4, 6), DomainError);
}

TEST(Lemma3Reduce, Examples) {
  const auto p = PhasePolynomial::cubic(2, 0, 2, 4);
  const auto r = lemma3_reduce(p, 2);
  ASSERT_FALSE(r.zero);
  EXPECT_EQ(r.factor, 2);
  EXPECT_EQ(r.reduced->modulus(), 2);
  EXPECT_EQ(r.reduced->coefficient(3), 1);
  EXPECT_EQ(r.reduced->coefficient(1), 1);
  EXPECT_NEAR(std::abs(raw_phase_sum(p).value - cplx(4, 0)), 0.0, 1e-12);
  EXPECT_NEAR(std::abs(2.0 * raw_phase_sum(*r.reduced).value - cplx(4, 0)), 0.0, 1e-12);

  const auto z = PhasePolynomial::cubic(2, 0, 1, 4);
  EXPECT_TRUE(lemma3_reduce(z, 2).zero);
  EXPECT_NEAR(std::abs(raw_phase_sum(z).value), 0.0, 1e-12);

  const auto id = lemma3_reduce(z, 1);
  ASSERT_FALSE(id.zero);
  EXPECT_EQ(id.reduced->modulus(), 4);
  EXPECT_THROW(lemma3_reduce(PhasePolynomial::cubic(1, 0, 0, 4), 2), DomainError);
}

TEST(LoxtonSchmidt, CubeModNine) {
  const auto b = loxton_schmidt(PhasePolynomial::cubic(1, 0, 0, 9));
  EXPECT_EQ(b.eta, 2);
  EXPECT_EQ(b.semi_disc, 9);
  EXPECT_NEAR(b.bound, 18.0, 1e-9);
  EXPECT_NEAR(b.observed, 3.0 * (1.0 + 2.0 * std::cos(2 * kPi / 9)), 1e-9);
  EXPECT_TRUE(b.holds);
}

TEST(LoxtonSchmidt, SquarefreeDerivative) {
  const auto b = loxton_schmidt(PhasePolynomial::cubic(1, 0, 1, 101));
  EXPECT_EQ(b.eta, 1);
  EXPECT_TRUE(b.holds);
}

TEST(CrtSplit, Examples) {
  CrtSplitParams p;
  p.d = 5;
  p.m_tilde = 7;
  p.u = 1;
  p.l1 = 2;
  EXPECT_TRUE(crt_split_check(p).ok());
  p.u = 0;
  EXPECT_TRUE(crt_split_check(p).ok());
  p.m_tilde = 1;
  const auto r = crt_split_check(p);
  EXPECT_TRUE(r.ok());
}

TEST(FExplicit, Examples) {
  FevParams p;
  p.m_tilde = 7;
  p.u = 0;
  EXPECT_NEAR(std::abs(F_explicit(p).value - cplx(7, 0)), 0.0, 1e-9);
  for (i64 u = -10; u <= 10; ++u) {
    p.u = u;
    p.m_tilde = 5;
    EXPECT_NEAR(std::abs(F_explicit(p).value - F_explicit_brute(p).value), 0.0, 1e-9) << "u=" << u;
  }
}

TEST(Poisson, PlainAndFrames) {
  const auto w = SchwartzWeight::gaussian();
  EXPECT_LT(poisson_check_plain(1.0, w).delta, 1e-10);
  const auto a = poisson_check({1, 1, 1, 5}, 2.0, w);
  EXPECT_LT(a.delta, 1e-8 * std::abs(a.lhs));
  const auto b = poisson_check({1, 1, 1, 7}, 3.0, w);
  EXPECT_LT(b.delta, 1e-8 * std::abs(b.lhs));
  EXPECT_THROW(poisson_check({1, 1, 1, 5}, 5.0, w), LimitExceeded);
}
