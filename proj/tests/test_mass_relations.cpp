#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "kerrqle/mass_relations.hpp"

using namespace kerrqle;

TEST(IrreducibleMass, Values) {
  EXPECT_DOUBLE_EQ(mir_from_a(KerrParams(1, 0)), 1.0);
  EXPECT_NEAR(mir_from_a(KerrParams(1, 1)), std::numbers::sqrt2 / 2, 1e-15);
  EXPECT_NEAR(mir_from_a(KerrParams(1, std::sqrt(3.0) / 2)), std::sqrt(3.0) / 2, 1e-15);
}

TEST(IrreducibleMass, SatisfiesQuarticRelation) {
  for (int i = 0; i <= 1000; ++i) {
    const double a = i / 1000.0;
    const double M = mir_from_a(KerrParams(1, a));
    EXPECT_NEAR(2 * M * std::sqrt(1 - M * M), a, 1e-12);
  }
}

TEST(IrreducibleMass, Inverse) {
  EXPECT_DOUBLE_EQ(a_from_mir(1, 1), 0.0);
  EXPECT_NEAR(a_from_mir(1, std::numbers::sqrt2 / 2), 1.0, 1e-15);
  for (int i = 0; i <= 1000; ++i) {
    const double a = i / 1000.0;
    EXPECT_NEAR(a_from_mir(1, mir_from_a(KerrParams(1, a))), a, 1e-7);
    // Away from the extremal end the round trip is tight.
    if (a < 0.99) {
      EXPECT_NEAR(a_from_mir(1, mir_from_a(KerrParams(1, a))), a, 1e-12);
    }
  }
  EXPECT_NEAR(a_from_mir(3, 3 * 0.8), 3 * a_from_mir(1, 0.8), 1e-14);
}

TEST(IrreducibleMass, RejectsOutOfRange) {
  EXPECT_THROW(a_from_mir(1, 0.7), DomainError);
  EXPECT_THROW(a_from_mir(1, 1.01), DomainError);
  EXPECT_THROW(a_from_mir(0, 0.5), DomainError);
}

TEST(HorizonArea, ValuesAndIdentities) {
  EXPECT_NEAR(horizon_area(KerrParams(1, 0)), 16 * std::numbers::pi, 1e-13);
  EXPECT_NEAR(horizon_area(KerrParams(1, 1)), 8 * std::numbers::pi, 1e-13);
  double prevA = 1e300, prevM = 1e300;
  for (int i = 0; i <= 1000; ++i) {
    const KerrParams p(1, i / 1000.0);
    const double A = horizon_area(p), rp = r_plus(p), M = mir_from_a(p);
    EXPECT_NEAR(A, 4 * std::numbers::pi * (rp * rp + p.a() * p.a()), 1e-12 * A);
    EXPECT_NEAR(A, 16 * std::numbers::pi * M * M, 1e-12 * A);
    EXPECT_LT(A, prevA);
    EXPECT_LT(M, prevM);
    prevA = A;
    prevM = M;
  }
}

TEST(HorizonArea, RegionRanges) {
  for (int i = 0; i <= 100; ++i) {
    const double a = i / 100.0;
    const double M = mir_from_a(KerrParams(1, a));
    if (a <= std::sqrt(3.0) / 2) {
      EXPECT_GE(M, std::sqrt(3.0) / 2 - 1e-15);
    } else {
      EXPECT_LE(M, std::sqrt(3.0) / 2 + 1e-15);
      EXPECT_GE(M, std::numbers::sqrt2 / 2 - 1e-15);
    }
  }
}

TEST(MassPointRecord, Fields) {
  const auto mp = mass_point(KerrParams(2, 1));
  EXPECT_EQ(mp.m, 2.0);
  EXPECT_EQ(mp.a, 1.0);
  EXPECT_NEAR(mp.area, 16 * std::numbers::pi * mp.M_ir * mp.M_ir, 1e-12);
}
