#include <gtest/gtest.h>

#include "deltasieve/arith.hpp"
#include "deltasieve/mobius_table.hpp"
#include "deltasieve/rational.hpp"

using namespace deltasieve;
using namespace deltasieve::arith;

TEST(Factorize, SmallAndUnit) {
  EXPECT_EQ(factorize(12).factors(), (std::vector<PrimePower>{{2, 2}, {3, 1}}));
  EXPECT_TRUE(factorize(-1).factors().empty());
  EXPECT_TRUE(factorize(1).factors().empty());
  EXPECT_THROW(factorize(0), DomainError);
}

TEST(Factorize, MersennePrime) {
  const i64 m = (i64{1} << 61) - 1;
  EXPECT_EQ(factorize(m).factors(), (std::vector<PrimePower>{{m, 1}}));
  EXPECT_TRUE(is_prime(static_cast<u64>(m)));
}

TEST(Factorize, LargeSemiprime) {
  const i64 p = 1000000007, q = 998244353;
  const auto f = factorize(p * q);
  ASSERT_EQ(f.omega(), 2);
  EXPECT_EQ(f.factors()[0].prime, q);
  EXPECT_EQ(f.factors()[1].prime, p);
}

TEST(Mobius, Examples) {
  EXPECT_EQ(mobius(10), 1);
  EXPECT_EQ(mobius(-12), 0);
  EXPECT_EQ(mobius(0), 0);
  EXPECT_EQ(mobius(-7), -1);
}

TEST(Mobius, TableMatchesSegments) {
  const auto t = mobius_table(3000);
  MobiusSegments(1, 3000).for_each([&](i64 n, int mu) { ASSERT_EQ(mu, t[n]) << n; });
  EXPECT_EQ(t[0], 0);
}

TEST(EulerPhi, Values) {
  EXPECT_EQ(euler_phi(1), 1);
  EXPECT_EQ(euler_phi(36), 12);
  EXPECT_EQ(euler_phi(97), 96);
}

TEST(ModInverse, Examples) {
  EXPECT_EQ(mod_inverse(9, 25).value(), 14);
  EXPECT_EQ(mod_inverse(25, 9).value(), 4);
  EXPECT_EQ(mod_inverse(1, 13).value(), 1);
  EXPECT_EQ(mod_inverse(-9, 25).value(), 11);
  EXPECT_THROW(mod_inverse(6, 9), NotInvertible);
}

TEST(Legendre, SymbolAndEps) {
  EXPECT_EQ(legendre_eps(2, 7).symbol, 1);
  EXPECT_EQ(legendre_eps(0, 5).symbol, 0);
  EXPECT_EQ(legendre_eps(3, 7).symbol, -1);
  EXPECT_EQ(legendre_eps(1, 5).eps, std::complex<double>(1, 0));
  EXPECT_EQ(legendre_eps(1, 7).eps, std::complex<double>(0, 1));
}

TEST(SqrtModPrimePower, Examples) {
  auto values = [](const std::vector<Residue>& rs) {
    std::vector<i64> v;
    for (const auto& r : rs) v.push_back(r.value());
    return v;
  };
  EXPECT_EQ(values(sqrt_mod_prime_power(2, 7, 1)), (std::vector<i64>{3, 4}));
  EXPECT_EQ(values(sqrt_mod_prime_power(0, 5, 2)), (std::vector<i64>{0, 5, 10, 15, 20}));
  EXPECT_EQ(values(sqrt_mod_prime_power(6, 5, 2)), (std::vector<i64>{9, 16}));
  EXPECT_TRUE(sqrt_mod_prime_power(3, 7, 1).empty());
}

TEST(SqrtMod, CompositeByCrt) {
  const auto r = sqrt_mod(4, 35);
  EXPECT_EQ(r, (std::vector<i64>{2, 12, 23, 33}));
}

TEST(HenselLift, Examples) {
  EXPECT_EQ(hensel_lift_unique(Residue(2, 5), IntPolynomial{{-2, 1}}).value(), 2);
  const auto r = hensel_lift_unique(Residue(1, 3), IntPolynomial{{-4, 0, 1}});
  EXPECT_EQ(r.modulus(), 9);
  EXPECT_EQ(r.value(), 7);
  EXPECT_ANY_THROW(hensel_lift_unique(Residue(0, 3), IntPolynomial{{0, 0, 1}}));
}

TEST(RadSquare, Examples) {
  EXPECT_EQ(rad_and_square_part(72).rad, 6);
  EXPECT_EQ(rad_and_square_part(72).square, 36);
  EXPECT_EQ(rad_and_square_part(1).rad, 1);
  EXPECT_EQ(rad_and_square_part(1).square, 1);
  EXPECT_EQ(rad_and_square_part(-50).rad, 10);
  EXPECT_EQ(rad_and_square_part(-50).square, 25);
}

TEST(Crt, Combines) {
  const auto x = crt(Residue(2, 5), Residue(3, 7));
  EXPECT_EQ(x.modulus(), 35);
  EXPECT_EQ(x.value(), 17);
  EXPECT_THROW(crt(Residue(1, 4), Residue(1, 6)), DomainError);
}

TEST(Rational, ArithmeticAndParse) {
  EXPECT_EQ(Rational(2, 4), Rational(1, 2));
  EXPECT_EQ(Rational(1, -3), Rational(-1, 3));
  EXPECT_EQ(Rational(7) - Rational(5, 27), Rational(184, 27));
  EXPECT_EQ(Rational::parse("-3/6"), Rational(-1, 2));
  EXPECT_EQ(Rational::parse("2.5"), Rational(5, 2));
  EXPECT_LT(Rational(1, 3), Rational(1, 2));
  EXPECT_EQ(Rational(184, 27).decimal(4), "6.8148");
  EXPECT_THROW(Rational(1, 0), DomainError);
}
