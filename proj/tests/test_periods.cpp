#include <gtest/gtest.h>

#include "sp4/monodromy.hpp"
#include "sp4/periods.hpp"

using namespace sp4;

namespace {

Exponents quintic_exponents() { return {make_rat(1, 5), make_rat(2, 5), make_rat(3, 5), make_rat(4, 5)}; }

// (5n)! / (n!)^5 with plain integer arithmetic.
Int quintic_integer(unsigned long n) {
  Int num = 1, den = 1;
  for (unsigned long k = 1; k <= 5 * n; ++k) num *= k;
  for (unsigned long k = 1; k <= n; ++k) den *= k;
  return num / (den * den * den * den * den);
}

}  // namespace

TEST(Hypergeom, FirstCoefficients) {
  auto s = hypergeom_series(quintic_exponents(), 3);
  EXPECT_EQ(s[0], Rat(1));
  EXPECT_EQ(s[1], make_rat(24, 625));
  EXPECT_EQ(s.order(), 3U);
  auto h = hypergeom_series(restriction_exponents(), 1);
  EXPECT_EQ(h[1], make_rat(1 * 5 * 7 * 11, 12 * 12 * 12 * 12));
}

TEST(Quintic, Coefficients) {
  auto q = quintic_series(3);
  EXPECT_EQ(q[0], Rat(1));
  EXPECT_EQ(q[1], make_rat(120, 3125));
  EXPECT_EQ(q[2], make_rat(4536, 390625));
  for (unsigned long n = 0; n <= 12; ++n)
    EXPECT_EQ(quintic_series(12)[n], Rat(quintic_integer(n)) / Rat(pow(Int(5), 5 * n))) << n;
  EXPECT_EQ(quintic_integer(2), 113400);
}

TEST(Quintic, EqualsHypergeometricThroughFifty) {
  EXPECT_EQ(quintic_series(50), hypergeom_series(quintic_exponents(), 50));
}

TEST(PicardFuchs, ResidualVanishes) {
  auto a = quintic_exponents();
  auto r = pf_residual(a, hypergeom_series(a, 26));
  EXPECT_EQ(r.order(), 25U);
  EXPECT_TRUE(r.is_zero());
  auto r2 = pf_residual(restriction_exponents(), hypergeom_series(restriction_exponents(), 10));
  EXPECT_TRUE(r2.is_zero());
}

TEST(PicardFuchs, EveryRealClass) {
  for (const auto& c : enumerate_real_classes()) {
    auto e = exponents(c);
    Exponents a{e[0], e[1], e[2], e[3]};
    auto s = hypergeom_series(a, 26);
    EXPECT_TRUE(pf_residual(a, s).is_zero()) << c.m() << "," << c.a();
    for (const auto& x : s.coeffs()) EXPECT_GT(x, 0);
  }
}

TEST(PicardFuchs, WrongSeriesLeavesResidual) {
  auto a = quintic_exponents();
  auto s = hypergeom_series(restriction_exponents(), 6);
  EXPECT_FALSE(pf_residual(a, s).is_zero());
  std::vector<Rat> c = hypergeom_series(a, 6).coeffs();
  c[4] += 1;
  auto r = pf_residual(a, RationalSeries(c));
  EXPECT_EQ(r[4], Rat(256));
  EXPECT_TRUE(r[3] == 0);
}

TEST(PicardFuchs, Preconditions) {
  EXPECT_THROW(pf_residual(quintic_exponents(), RationalSeries()), precondition_error);
  EXPECT_THROW(RationalSeries(std::vector<Rat>{}), dimension_error);
}

TEST(Hypergeom, PositiveAndRatioIncreasing) {
  auto q = quintic_series(200);
  for (std::size_t n = 0; n <= 200; ++n) EXPECT_GT(q[n], 0);
  // c_{n+1}/c_n = prod (n + k/5) / (n+1)^4 increases towards 1.
  Rat prev = q[1] / q[0];
  for (std::size_t n = 1; n < 200; ++n) {
    Rat ratio = q[n + 1] / q[n];
    EXPECT_GT(ratio, prev) << n;
    EXPECT_LT(ratio, 1) << n;
    prev = ratio;
  }
}

TEST(TwoParameter, Coefficients) {
  EXPECT_EQ(two_param_coeff(0, 0), Rat(1));
  EXPECT_EQ(two_param_coeff(1, 0), Rat(60));
  EXPECT_EQ(two_param_coeff(0, 1), Rat(55440));
  auto s = two_param_series(3);
  EXPECT_EQ(s.coeffs.size(), 10U);
  for (const auto& [km, c] : s.coeffs) {
    EXPECT_LE(km.first + km.second, 3U);
    EXPECT_TRUE(is_integer(c));
  }
}

TEST(Restriction, MatchesWithKappa) {
  auto r = restriction_matches(8);
  EXPECT_TRUE(r.match);
  EXPECT_EQ(r.kappa, Rat(2985984));
  EXPECT_EQ(r.kappa, Rat(pow(Int(12), 6)));
  auto one = restriction_matches(1);
  EXPECT_TRUE(one.match);
  EXPECT_EQ(one.kappa, Rat(2985984));
}

TEST(Restriction, TamperedSliceFails) {
  std::vector<Rat> slice;
  for (std::size_t m = 0; m <= 6; ++m) slice.push_back(two_param_coeff(0, m));
  EXPECT_TRUE(restriction_matches(slice).match);
  slice[5] += 1;
  EXPECT_FALSE(restriction_matches(slice).match);
  slice = {1, 0, 3};
  EXPECT_THROW(restriction_matches(slice), domain_error);
  EXPECT_THROW(restriction_matches(std::vector<Rat>{1}), precondition_error);
}
