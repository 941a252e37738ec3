#include "vbsneg/half_int.hpp"

#include <gtest/gtest.h>

using vbsneg::HalfInt;

TEST(HalfInt, ParseAndPrint) {
  EXPECT_EQ(HalfInt::parse("3/2").twice(), 3);
  EXPECT_EQ(HalfInt::parse("-1/2").twice(), -1);
  EXPECT_EQ(HalfInt::parse("2").twice(), 4);
  EXPECT_EQ(HalfInt::parse("0").twice(), 0);
  EXPECT_EQ(HalfInt::parse("3/2").str(), "3/2");
  EXPECT_EQ(HalfInt(2).str(), "2");
  EXPECT_THROW(HalfInt::parse("3/4"), std::invalid_argument);
  EXPECT_THROW(HalfInt::parse("x"), std::invalid_argument);
  EXPECT_THROW(HalfInt::parse("1.5"), std::invalid_argument);
  EXPECT_THROW(HalfInt::parse(""), std::invalid_argument);
}

TEST(HalfInt, Arithmetic) {
  HalfInt h = HalfInt::from_twice(1);  // 1/2
  EXPECT_EQ((h + h).twice(), 2);
  EXPECT_EQ((HalfInt(1) - h).twice(), 1);
  EXPECT_EQ((-h).twice(), -1);
  EXPECT_TRUE(HalfInt(3).is_integer());
  EXPECT_FALSE(h.is_integer());
  EXPECT_DOUBLE_EQ(HalfInt::from_twice(3).to_double(), 1.5);
  EXPECT_LT(h, HalfInt(1));
}

TEST(HalfInt, ProjectionPairing) {
  HalfInt j = HalfInt::from_twice(3);  // 3/2
  EXPECT_TRUE(j.admits_projection(HalfInt::from_twice(-3)));
  EXPECT_TRUE(j.admits_projection(HalfInt::from_twice(1)));
  EXPECT_FALSE(j.admits_projection(HalfInt(1)));               // j - m not integral
  EXPECT_FALSE(j.admits_projection(HalfInt::from_twice(5)));   // |m| > j
}

TEST(HalfInt, Phase) {
  EXPECT_EQ(vbsneg::phase(HalfInt(2)), 1);
  EXPECT_EQ(vbsneg::phase(HalfInt(3)), -1);
  EXPECT_EQ(vbsneg::phase(HalfInt(-3)), -1);
  EXPECT_THROW(vbsneg::phase(HalfInt::from_twice(1)), std::domain_error);
}
