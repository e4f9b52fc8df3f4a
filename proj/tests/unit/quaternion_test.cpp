#include <gtest/gtest.h>

#include <numbers>

#include "quatdmd/error.hpp"
#include "quatdmd/quaternion.hpp"
#include "test_support.hpp"

namespace quatdmd {
namespace {

constexpr double kPi = std::numbers::pi;

void expect_near(const Quaternion& a, const Quaternion& b, double tol) {
  EXPECT_NEAR(a.w, b.w, tol);
  EXPECT_NEAR(a.x, b.x, tol);
  EXPECT_NEAR(a.y, b.y, tol);
  EXPECT_NEAR(a.z, b.z, tol);
}

TEST(Quaternion, UnitProducts) {
  EXPECT_EQ(kQuatI * kQuatJ, kQuatK);
  EXPECT_EQ(kQuatJ * kQuatI, -kQuatK);
  EXPECT_EQ(kQuatJ * kQuatK, kQuatI);
  EXPECT_EQ(kQuatK * kQuatJ, -kQuatI);
  EXPECT_EQ(kQuatK * kQuatI, kQuatJ);
  EXPECT_EQ(kQuatI * kQuatK, -kQuatJ);
  EXPECT_EQ(kQuatI * kQuatI, Quaternion(-1.0));
  EXPECT_EQ(kQuatI * kQuatJ * kQuatK, Quaternion(-1.0));
}

TEST(Quaternion, IdentityElement) {
  std::mt19937_64 rng(7);
  for (int i = 0; i < 20; ++i) {
    const Quaternion q = testing::random_quaternion(rng);
    EXPECT_EQ(Quaternion(1.0) * q, q);
    EXPECT_EQ(q * Quaternion(1.0), q);
  }
}

TEST(Quaternion, Conjugate) {
  EXPECT_EQ(conjugate(Quaternion(1, 2, 3, 4)), Quaternion(1, -2, -3, -4));
  std::mt19937_64 rng(8);
  for (int i = 0; i < 20; ++i) {
    const Quaternion q = testing::random_quaternion(rng);
    EXPECT_EQ(conjugate(conjugate(q)), q);
    const Quaternion p = q * conjugate(q);
    EXPECT_NEAR(p.w, norm_squared(q), 1e-12);
    EXPECT_NEAR(vector_norm(p), 0.0, 1e-12);
  }
}

TEST(Quaternion, Norm) {
  EXPECT_DOUBLE_EQ(norm(Quaternion(1, 1, 1, 1)), 2.0);
  EXPECT_DOUBLE_EQ(norm(Quaternion()), 0.0);
  EXPECT_DOUBLE_EQ(norm(kQuatI), 1.0);
  EXPECT_TRUE(is_pure_unit(kQuatJ));
  EXPECT_FALSE(is_pure_unit(Quaternion(1e-3, 0, 1, 0)));
}

TEST(Quaternion, NormIsMultiplicative) {
  std::mt19937_64 rng(9);
  for (int i = 0; i < 1000; ++i) {
    const Quaternion p = testing::random_quaternion(rng, 3.0);
    const Quaternion q = testing::random_quaternion(rng, 3.0);
    const double expected = norm(p) * norm(q);
    EXPECT_NEAR(norm(p * q), expected, 1e-12 * expected);
  }
}

TEST(Quaternion, Inverse) {
  EXPECT_EQ(inverse(kQuatI), -kQuatI);
  EXPECT_EQ(inverse(Quaternion(2.0)), Quaternion(0.5));
  std::mt19937_64 rng(10);
  for (int i = 0; i < 50; ++i) {
    const Quaternion u = testing::random_unit_quaternion(rng);
    expect_near(inverse(u), conjugate(u), 1e-15);
    const Quaternion q = testing::random_quaternion(rng);
    expect_near(q * inverse(q), Quaternion(1.0), 1e-12);
  }
}

TEST(Quaternion, InverseOfZeroIsDomainError) {
  try {
    (void)inverse(Quaternion());
    FAIL() << "expected an error";
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::domain);
  }
}

TEST(Quaternion, Exp) {
  expect_near(exp(Quaternion()), Quaternion(1.0), 0.0);
  expect_near(exp(kPi * kQuatI), Quaternion(-1.0), 1e-15);
  expect_near(exp((kPi / 2) * kQuatJ), kQuatJ, 1e-15);
  // Real argument: no axis needed.
  EXPECT_EQ(exp(Quaternion(2.0)), Quaternion(std::exp(2.0)));
}

TEST(Quaternion, Log) {
  expect_near(log(Quaternion(1.0)), Quaternion(), 0.0);
  expect_near(log(kQuatJ), (kPi / 2) * kQuatJ, 1e-15);
  expect_near(log(Quaternion(std::numbers::e)), Quaternion(1.0), 1e-15);
}

TEST(Quaternion, LogBranchForNegativeScalarPart) {
  // atan2 branch: angle lands in (pi/2, pi) for w < 0.
  const Quaternion q(-1.0, 0.0, 1.0, 0.0);
  const Quaternion l = log(q);
  EXPECT_NEAR(l.y, 3.0 * kPi / 4.0, 1e-15);
  expect_near(exp(l), q, 1e-14);
}

TEST(Quaternion, LogErrors) {
  for (const Quaternion bad : {Quaternion(), Quaternion(-2.0)}) {
    try {
      (void)log(bad);
      FAIL() << "expected an error for " << bad;
    } catch (const Error& e) {
      EXPECT_EQ(e.kind(), ErrorKind::domain);
    }
  }
}

TEST(Quaternion, LogExpRoundTrip) {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> angle(0.0, 0.999 * kPi);
  for (int i = 0; i < 2000; ++i) {
    const Quaternion axis = testing::random_unit_quaternion(rng).vector();
    Quaternion q = axis / vector_norm(axis) * angle(rng);
    q.w = std::normal_distribution<double>(0.0, 2.0)(rng);
    expect_near(log(exp(q)), q, 1e-10);
  }
}

TEST(Quaternion, ExpLogRoundTrip) {
  std::mt19937_64 rng(12);
  for (int i = 0; i < 2000; ++i) {
    const Quaternion q = testing::random_quaternion(rng, 5.0);
    const Quaternion back = exp(log(q));
    EXPECT_LE(norm(back - q), 1e-10 * norm(q));
  }
}

TEST(Quaternion, NonCommutativityWitnesses) {
  EXPECT_EQ(kQuatI * kQuatJ - kQuatJ * kQuatI, 2.0 * kQuatK);
  const Quaternion p = (kPi / 2) * kQuatI;
  const Quaternion q = (kPi / 2) * kQuatJ;
  EXPECT_GT(norm(exp(p) * exp(q) - exp(p + q)), 0.1);
}

}  // namespace
}  // namespace quatdmd
