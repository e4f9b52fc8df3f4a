#include <gtest/gtest.h>

#include <Eigen/Eigenvalues>

#include "quatdmd/decompositions.hpp"
#include "quatdmd/error.hpp"
#include "test_support.hpp"

namespace quatdmd {
namespace {

using testing::distance;
using testing::max_eigen_residual;
using testing::random_matrix;

std::vector<double> sorted_real_parts(const QEigen& e) {
  std::vector<double> v;
  for (const auto& l : e.values) v.push_back(l.w);
  std::sort(v.begin(), v.end());
  return v;
}

QuaternionMatrix diag(std::vector<Quaternion> v) { return QuaternionMatrix::diagonal(v); }

void expect_standard_form(const QEigen& e) {
  for (const auto& l : e.values) {
    EXPECT_GE(l.x, 0.0);
    EXPECT_EQ(l.y, 0.0);
    EXPECT_EQ(l.z, 0.0);
  }
}

TEST(StandardEigen, RealDiagonal) {
  QuaternionMatrix q(2, 2);
  q(0, 0) = 2.0;
  q(1, 1) = 3.0;
  const QEigen e = standard_eigen(q);
  ASSERT_EQ(e.values.size(), 2u);
  const auto re = sorted_real_parts(e);
  EXPECT_NEAR(re[0], 2.0, 1e-14);
  EXPECT_NEAR(re[1], 3.0, 1e-14);
  for (const auto& l : e.values) EXPECT_NEAR(l.x, 0.0, 1e-14);
  EXPECT_LE(max_eigen_residual(q, e), 1e-12);
}

TEST(StandardEigen, UnitJHasStandardValueI) {
  const QuaternionMatrix q(1, 1, {kQuatJ});
  const QEigen e = standard_eigen(q);
  ASSERT_EQ(e.values.size(), 1u);
  EXPECT_LE(norm(e.values[0] - kQuatI), 1e-14);
  EXPECT_LE(max_eigen_residual(q, e), 1e-14);
}

TEST(StandardEigen, RepeatedRealEigenvalue) {
  const auto q = diag({2.0, 2.0});
  const QEigen e = standard_eigen(q);
  EXPECT_LE(max_eigen_residual(q, e), 1e-14);
  // Eigenvectors must stay right-independent.
  EXPECT_NO_THROW((void)spectral_decomposition(q));
}

TEST(StandardEigen, HermitianHasRealSpectrum) {
  std::mt19937_64 rng(41);
  for (int trial = 0; trial < 5; ++trial) {
    const auto b = random_matrix(rng, 6, 6);
    const auto a = b + conj_transpose(b);
    const QEigen e = standard_eigen(a);
    for (const auto& l : e.values) EXPECT_NEAR(l.x, 0.0, 1e-10);
    EXPECT_LE(max_eigen_residual(a, e), 1e-8 * frobenius_norm(a));

    // Oracle: chi(A) is Hermitian; each eigenvalue appears twice.
    const Eigen::VectorXd ref =
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd>(complex_adjoint(a)).eigenvalues();
    const auto re = sorted_real_parts(e);
    for (std::size_t k = 0; k < re.size(); ++k) {
      EXPECT_NEAR(re[k], ref(static_cast<Eigen::Index>(2 * k)), 1e-10 * frobenius_norm(a));
    }
  }
}

TEST(StandardEigen, RandomResidualAndForm) {
  std::mt19937_64 rng(42);
  for (std::size_t m : {1u, 2u, 5u, 12u}) {
    const auto q = random_matrix(rng, m, m);
    const QEigen e = standard_eigen(q);
    ASSERT_EQ(e.values.size(), m);
    expect_standard_form(e);
    EXPECT_LE(max_eigen_residual(q, e), 1e-8 * frobenius_norm(q));
    for (std::size_t k = 0; k < m; ++k) {
      double s = 0.0;
      for (std::size_t i = 0; i < m; ++i) s += norm_squared(e.vectors(i, k));
      EXPECT_NEAR(s, 1.0, 1e-12);
    }
  }
}

TEST(StandardEigen, EigenvalueClassInvariance) {
  std::mt19937_64 rng(43);
  for (int trial = 0; trial < 200; ++trial) {
    const Quaternion q = testing::random_quaternion(rng);
    const Quaternion u = testing::random_unit_quaternion(rng);
    const Quaternion standard(q.w, vector_norm(q), 0.0, 0.0);
    const auto a = standard_eigen(QuaternionMatrix(1, 1, {q})).values[0];
    const auto b = standard_eigen(QuaternionMatrix(1, 1, {u * q * inverse(u)})).values[0];
    EXPECT_LE(norm(a - standard), 1e-10);
    EXPECT_LE(norm(a - b), 1e-10);
  }
}

TEST(StandardEigen, NonSquareIsShapeError) {
  try {
    (void)standard_eigen(QuaternionMatrix(2, 3));
    FAIL() << "expected shape error";
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::shape);
  }
}

TEST(SpectralDecomposition, RealDiagonalIsExact) {
  const auto q = diag({1.5, -2.0, 4.0});
  const auto d = spectral_decomposition(q);
  EXPECT_EQ(distance(spectral_reconstruct(d.phi, d.lambda), q), 0.0);
  // Each eigenvector is a signed unit coordinate vector.
  for (std::size_t k = 0; k < 3; ++k) {
    int nonzero = 0;
    for (std::size_t i = 0; i < 3; ++i) nonzero += norm(d.phi(i, k)) != 0.0;
    EXPECT_EQ(nonzero, 1);
  }
}

TEST(SpectralDecomposition, RandomReconstruction) {
  std::mt19937_64 rng(44);
  for (std::size_t m : {5u, 10u}) {
    const auto q = random_matrix(rng, m, m);
    const auto d = spectral_decomposition(q);
    EXPECT_GT(d.inverse_condition, 1e-10);
    EXPECT_LE(distance(spectral_reconstruct(d.phi, d.lambda), q), 1e-8 * frobenius_norm(q));
  }
}

TEST(SpectralDecomposition, JordanBlockIsRejected) {
  QuaternionMatrix q(2, 2);
  q(0, 0) = 1.0;
  q(0, 1) = 1.0;
  q(1, 1) = 1.0;
  try {
    (void)spectral_decomposition(q);
    FAIL() << "expected non-diagonalizable error";
  } catch (const NonDiagonalizableError& e) {
    EXPECT_EQ(e.kind(), ErrorKind::non_diagonalizable);
    EXPECT_LE(e.inverse_condition(), 1e-10);
  }
}

}  // namespace
}  // namespace quatdmd
