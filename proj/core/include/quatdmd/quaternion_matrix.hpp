#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "quatdmd/quaternion.hpp"

namespace quatdmd {

/// The (2M)x(2N) complex representation of an MxN quaternion matrix
/// Q = Qa + Qb j:
///
///     [  Qa    Qb  ]
///     [ -Qb*   Qa* ]
///
/// It is a ring homomorphism: chi(A B) = chi(A) chi(B), chi(A^H) = chi(A)^H.
using ComplexAdjoint = Eigen::MatrixXcd;

/// Dense row-major quaternion matrix.
class QuaternionMatrix {
 public:
  QuaternionMatrix() = default;
  QuaternionMatrix(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), data_(rows * cols) {}
  QuaternionMatrix(std::size_t rows, std::size_t cols, std::vector<Quaternion> data);

  static QuaternionMatrix identity(std::size_t n);
  static QuaternionMatrix diagonal(std::span<const Quaternion> values);
  /// Q0 + Q1 i + Q2 j + Q3 k from four equally sized real matrices.
  static QuaternionMatrix from_components(const Eigen::MatrixXd& q0, const Eigen::MatrixXd& q1,
                                          const Eigen::MatrixXd& q2, const Eigen::MatrixXd& q3);
  /// Embeds a complex matrix as Qa (Qb = 0).
  static QuaternionMatrix from_complex(const Eigen::MatrixXcd& a);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  std::size_t size() const noexcept { return data_.size(); }
  bool empty() const noexcept { return data_.empty(); }

  Quaternion& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const Quaternion& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  std::span<Quaternion> data() noexcept { return data_; }
  std::span<const Quaternion> data() const noexcept { return data_; }

  std::vector<Quaternion> column(std::size_t c) const;
  void set_column(std::size_t c, std::span<const Quaternion> values);
  /// Columns [first, first + count).
  QuaternionMatrix columns(std::size_t first, std::size_t count) const;

  /// Real coefficient plane: 0 = scalar, 1 = i, 2 = j, 3 = k.
  Eigen::MatrixXd component(int which) const;

  bool operator==(const QuaternionMatrix&) const = default;

  QuaternionMatrix& operator+=(const QuaternionMatrix& other);
  QuaternionMatrix& operator-=(const QuaternionMatrix& other);
  QuaternionMatrix& operator*=(double s);

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Quaternion> data_;
};

QuaternionMatrix operator+(QuaternionMatrix a, const QuaternionMatrix& b);
QuaternionMatrix operator-(QuaternionMatrix a, const QuaternionMatrix& b);
QuaternionMatrix operator*(QuaternionMatrix a, double s);

/// Hamilton matrix product. Throws Error(shape) when a.cols() != b.rows().
QuaternionMatrix matmul(const QuaternionMatrix& a, const QuaternionMatrix& b);
inline QuaternionMatrix operator*(const QuaternionMatrix& a, const QuaternionMatrix& b) {
  return matmul(a, b);
}

/// A * diag(d): column c is right-multiplied by d[c].
QuaternionMatrix scale_columns_right(const QuaternionMatrix& a, std::span<const Quaternion> d);
/// A * diag(d) for real d.
QuaternionMatrix scale_columns(const QuaternionMatrix& a, std::span<const double> d);

QuaternionMatrix conj_transpose(const QuaternionMatrix& a);
double frobenius_norm(const QuaternionMatrix& a);

ComplexAdjoint complex_adjoint(const QuaternionMatrix& q);

/// Inverse of complex_adjoint. The block structure must hold to within
/// `tol` (absolute, per entry) or Error(malformed_adjoint) is thrown.
QuaternionMatrix from_adjoint(const ComplexAdjoint& chi, double tol = 1e-10);

/// Quaternion vector x1 - conj(x2) j for a stacked complex vector (x1; x2).
/// This is the column of Q corresponding to the first column of chi(Q).
std::vector<Quaternion> quaternion_vector_from_adjoint(const Eigen::Ref<const Eigen::VectorXcd>& stacked);

}  // namespace quatdmd
