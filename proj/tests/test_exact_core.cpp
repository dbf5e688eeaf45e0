#include <gtest/gtest.h>

#include "sp4/cyclotomic.hpp"
#include "sp4/hnf.hpp"
#include "sp4/monodromy.hpp"

using namespace sp4;

TEST(Rat, ReducedWithPositiveDenominator) {
  Rat q = make_rat(6, -4);
  EXPECT_EQ(q.get_num(), -3);
  EXPECT_EQ(q.get_den(), 2);
  EXPECT_THROW(make_rat(1, 0), domain_error);
  EXPECT_EQ(parse_rat("-10/4"), make_rat(-5, 2));
  EXPECT_EQ(parse_rat("7"), Rat(7));
  EXPECT_THROW(parse_rat("1/x"), domain_error);
  EXPECT_THROW(parse_rat(""), domain_error);
}

TEST(QuadElem, SquareRadicandCollapses) {
  QuadElem x = QuadElem::sqrt_of(4);
  EXPECT_TRUE(x.is_rational());
  EXPECT_EQ(x.to_rational(), Rat(2));
  QuadElem y = QuadElem::sqrt_of(12);  // 2 sqrt 3
  EXPECT_EQ(y.radicand(), 3);
  EXPECT_EQ(y.radical_part(), Rat(2));
}

TEST(QuadElem, Arithmetic) {
  QuadElem s5 = QuadElem::sqrt_of(5);
  EXPECT_EQ(s5 * s5, QuadElem(5));
  QuadElem a(make_rat(1, 2), Rat(3), 5);
  QuadElem inv = QuadElem(1) / a;
  EXPECT_EQ(a * inv, QuadElem(1));
  EXPECT_EQ(a.norm(), make_rat(1, 4) - Rat(45));
  EXPECT_EQ(a - a, QuadElem(0));
  EXPECT_THROW(a.to_rational(), domain_error);
  EXPECT_THROW(QuadElem(1) / QuadElem(0), domain_error);
}

TEST(QuadElem, MixedRadicandsRejected) {
  QuadElem s2 = QuadElem::sqrt_of(2), s3 = QuadElem::sqrt_of(3);
  EXPECT_THROW(s2 + s3, domain_error);
  EXPECT_THROW(s2 * s3, domain_error);
  // Rational values mix with anything.
  EXPECT_EQ(s2 + QuadElem(1) - QuadElem(1), s2);
  EXPECT_THROW(QuadElem(Rat(0), Rat(1), 0), domain_error);
}

TEST(Matrix, DeterminantInverse) {
  RatMatrix m{{2, 1, 0}, {1, 3, 1}, {0, 1, 4}};
  EXPECT_EQ(m.determinant(), Rat(18));
  EXPECT_EQ(m * m.inverse(), RatMatrix::identity(3));
  IntMatrix z{{1, 2}, {2, 4}};
  EXPECT_EQ(z.determinant(), 0);
  EXPECT_THROW(to_rat(z).inverse(), rank_error);
  IntMatrix swap{{0, 1}, {1, 0}};
  EXPECT_EQ(swap.determinant(), -1);
  EXPECT_THROW(RatMatrix(2, 3).determinant(), dimension_error);
  EXPECT_THROW(RatMatrix(2, 3) * RatMatrix(2, 3), dimension_error);
}

TEST(CharPoly, Identity) {
  EXPECT_EQ(to_int(char_poly(RatMatrix::identity(4))), (IntPoly{1, -4, 6, -4, 1}));
}

TEST(CharPoly, ProductOfMonodromies) {
  auto p = build_pair({5, 5, 1});
  EXPECT_EQ(to_int(char_poly(p.T0 * p.T1)), (IntPoly{1, 1, 1, 1, 1}));
  auto q = build_pair({1, 4, 1});
  EXPECT_EQ(to_int(char_poly(q.T0 * q.T1)), (IntPoly{1, 0, -1, 0, 1}));
}

TEST(CharPoly, NonSquareRejected) { EXPECT_THROW(char_poly(RatMatrix(3, 4)), dimension_error); }

TEST(Poly, Basics) {
  IntPoly p{1, 0, -1, 0, 1};
  EXPECT_EQ(p.str(), "x^4-x^2+1");
  EXPECT_EQ(p.degree(), 4);
  EXPECT_EQ(IntPoly().degree(), -1);
  EXPECT_THROW((p.divmod_monic(IntPoly{1, 2})), domain_error);
  auto [q, r] = p.divmod_monic(IntPoly{1, 0, 1});
  EXPECT_EQ((q * IntPoly{1, 0, 1} + r), p);
}

TEST(Cyclotomic, Examples) {
  EXPECT_EQ(cyclotomic(1), (IntPoly{-1, 1}));
  EXPECT_EQ(cyclotomic(5), (IntPoly{1, 1, 1, 1, 1}));
  // (x^12-1)(x^2-1) / ((x^6-1)(x^4-1)), with the division done by hand here.
  auto xn1 = [](std::size_t n) { return IntPoly::monomial(n) - IntPoly{1}; };
  auto [q, r] = (xn1(12) * xn1(2)).divmod_monic(xn1(6) * xn1(4));
  EXPECT_TRUE(r.is_zero());
  EXPECT_EQ(cyclotomic(12), q);
  EXPECT_EQ(cyclotomic(12), (IntPoly{1, 0, -1, 0, 1}));
  EXPECT_THROW(cyclotomic(0), domain_error);
}

TEST(Cyclotomic, Degrees) {
  for (int n : kSmallCyclotomicIndices) EXPECT_EQ(cyclotomic(n).degree(), euler_phi(n)) << n;
}

TEST(CyclotomicFactorization, Examples) {
  EXPECT_EQ(cyclotomic_factorization(IntPoly{1, 2, 2, 2, 1}), (std::vector<int>{2, 2, 4}));
  EXPECT_EQ(cyclotomic_factorization(IntPoly{1, -3, 5, -3, 1}), std::nullopt);
  EXPECT_EQ(cyclotomic_factorization(IntPoly{-1, 1}), (std::vector<int>{1}));
  EXPECT_THROW(cyclotomic_factorization(IntPoly{1, 2}), domain_error);
}

TEST(ColumnHnf, Examples) {
  EXPECT_EQ(column_hnf(IntMatrix::identity(4)), IntMatrix::identity(4));
  IntMatrix m = IntMatrix::identity(4);
  m(0, 0) = 2;
  m(1, 0) = 2;  // second column doubled, added to the first
  IntMatrix h = column_hnf(m);
  EXPECT_EQ(h(0, 0), 2);
  IntMatrix d = IntMatrix::identity(4);
  d(0, 0) = 2;
  EXPECT_EQ(h, d);
  EXPECT_THROW(column_hnf(IntMatrix{{1, 2}, {2, 4}}), rank_error);
  EXPECT_THROW(column_hnf(IntMatrix(2, 3)), dimension_error);
}

TEST(ColumnHnf, Reduction) {
  IntMatrix m{{3, 1}, {5, 7}};
  IntMatrix h = column_hnf(m);
  // det 16; HNF lower triangular with 0 <= h10 < h11.
  EXPECT_EQ(h(0, 1), 0);
  EXPECT_EQ(h(0, 0) * h(1, 1), 16);
  EXPECT_GE(h(1, 0), 0);
  EXPECT_LT(h(1, 0), h(1, 1));
}

TEST(ColumnHnf, RationalScaling) {
  RatMatrix m{{make_rat(1, 2), 0}, {0, make_rat(1, 3)}};
  RatMatrix h = column_hnf(m);
  EXPECT_EQ(h, m);
  RatMatrix m2{{make_rat(1, 2), make_rat(1, 2)}, {0, make_rat(1, 3)}};
  EXPECT_EQ(column_hnf(m2), m);
  EXPECT_THROW(column_hnf(RatMatrix(2, 2)), rank_error);
}

TEST(SpanIndex, Examples) {
  std::vector<std::vector<Int>> basis{{1, 0, 0, 0}, {0, 1, 0, 0}, {0, 0, 1, 0}, {0, 0, 0, 1}};
  EXPECT_EQ(span_index(basis, 4), Int(1));
  EXPECT_EQ(span_index({{2, 0}, {0, 1}}, 2), Int(2));
  EXPECT_EQ(span_index({{2, 0}, {4, 0}}, 2), std::nullopt);
  EXPECT_EQ(span_index({}, 3), std::nullopt);
  EXPECT_EQ(span_index({{2, 0}, {0, 2}, {1, 1}}, 2), Int(2));
  EXPECT_THROW(span_index({{1, 2, 3}}, 2), dimension_error);
}
