#include "vbsneg/sqrt_rational.hpp"

#include <gtest/gtest.h>

using vbsneg::BigRat;
using vbsneg::SignedSqrtRational;
using vbsneg::SqrtRationalSum;

TEST(SignedSqrtRational, Construction) {
  auto v = SignedSqrtRational::sqrt_of(1, BigRat(1, 2));
  EXPECT_EQ(v.sign(), 1);
  EXPECT_EQ(v.radicand(), BigRat(1, 2));
  EXPECT_NEAR(v.to_double(), std::sqrt(0.5), 1e-15);

  auto z = SignedSqrtRational::sqrt_of(1, BigRat(0));
  EXPECT_TRUE(z.is_zero());
  EXPECT_EQ(z.sign(), 0);

  auto r = SignedSqrtRational::from_rational(BigRat(-3, 4));
  EXPECT_EQ(r.sign(), -1);
  EXPECT_EQ(r.radicand(), BigRat(9, 16));
  EXPECT_THROW(SignedSqrtRational::sqrt_of(1, BigRat(-1)), std::domain_error);
}

TEST(SignedSqrtRational, ClosedUnderProductAndQuotient) {
  auto a = SignedSqrtRational::sqrt_of(-1, BigRat(2, 3));
  auto b = SignedSqrtRational::sqrt_of(1, BigRat(3, 2));
  EXPECT_EQ((a * b).sign(), -1);
  EXPECT_EQ((a * b).radicand(), BigRat(1));
  EXPECT_EQ((a / b).radicand(), BigRat(4, 9));
  EXPECT_TRUE((a * SignedSqrtRational::zero()).is_zero());
  EXPECT_THROW(a / SignedSqrtRational::zero(), std::domain_error);
  EXPECT_EQ(a.times_rational(BigRat(-2)).sign(), 1);
  EXPECT_EQ(a.times_rational(BigRat(-2)).radicand(), BigRat(8, 3));
}

TEST(SignedSqrtRational, HugeRadicandToDouble) {
  // ~ (400!) / (399!) = 400; both factors overflow double on their own
  BigRat big = 1;
  for (int i = 1; i <= 400; ++i) big *= i;
  BigRat big2 = big / 400;
  auto v = SignedSqrtRational::sqrt_of(1, big / big2);
  EXPECT_NEAR(v.to_double(), 20.0, 1e-12);
  EXPECT_NEAR(vbsneg::to_double(BigRat(1) / big) * vbsneg::to_double(big), 1.0, 1e-12);
}

TEST(SqrtRationalSum, GroupsBySquareClass) {
  SqrtRationalSum sum;
  // sqrt(2)/3 + sqrt(8)/3 - sqrt(18)/3 = (1 + 2 - 3) sqrt(2)/3 = 0
  sum.add(SignedSqrtRational::sqrt_of(1, BigRat(2, 9)));
  sum.add(SignedSqrtRational::sqrt_of(1, BigRat(8, 9)));
  sum.add(SignedSqrtRational::sqrt_of(-1, BigRat(18, 9)));
  EXPECT_TRUE(sum.is_zero());

  SqrtRationalSum mixed;
  mixed.add(SignedSqrtRational::sqrt_of(1, BigRat(2)));
  mixed.add(SignedSqrtRational::sqrt_of(1, BigRat(3)));
  EXPECT_FALSE(mixed.is_zero());
  EXPECT_NEAR(mixed.to_double(), std::sqrt(2.0) + std::sqrt(3.0), 1e-14);

  SqrtRationalSum one;
  one.add(SignedSqrtRational::sqrt_of(1, BigRat(1, 4)));
  one.add(SignedSqrtRational::sqrt_of(1, BigRat(1, 4)));
  EXPECT_TRUE(one.equals_rational(BigRat(1)));
  EXPECT_FALSE(one.equals_rational(BigRat(2)));
  EXPECT_TRUE(one.equals(SignedSqrtRational::from_rational(BigRat(1))));
}
