#include "quatdmd/quaternion_matrix.hpp"

#include <cmath>
#include <string>

#include "quatdmd/error.hpp"

namespace quatdmd {

namespace {

void require_same_shape(const QuaternionMatrix& a, const QuaternionMatrix& b, const char* op) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw Error(ErrorKind::shape, std::string(op) + ": operands are " + std::to_string(a.rows()) +
                                      "x" + std::to_string(a.cols()) + " and " +
                                      std::to_string(b.rows()) + "x" + std::to_string(b.cols()));
  }
}

}  // namespace

QuaternionMatrix::QuaternionMatrix(std::size_t rows, std::size_t cols, std::vector<Quaternion> data)
    : rows_(rows), cols_(cols), data_(std::move(data)) {
  if (data_.size() != rows_ * cols_) {
    throw Error(ErrorKind::shape, "QuaternionMatrix: data length does not match rows*cols");
  }
}

QuaternionMatrix QuaternionMatrix::identity(std::size_t n) {
  QuaternionMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = Quaternion(1.0);
  return m;
}

QuaternionMatrix QuaternionMatrix::diagonal(std::span<const Quaternion> values) {
  QuaternionMatrix m(values.size(), values.size());
  for (std::size_t i = 0; i < values.size(); ++i) m(i, i) = values[i];
  return m;
}

QuaternionMatrix QuaternionMatrix::from_components(const Eigen::MatrixXd& q0,
                                                   const Eigen::MatrixXd& q1,
                                                   const Eigen::MatrixXd& q2,
                                                   const Eigen::MatrixXd& q3) {
  const auto rows = q0.rows();
  const auto cols = q0.cols();
  for (const auto* part : {&q1, &q2, &q3}) {
    if (part->rows() != rows || part->cols() != cols) {
      throw Error(ErrorKind::shape, "from_components: component planes differ in shape");
    }
  }
  QuaternionMatrix m(static_cast<std::size_t>(rows), static_cast<std::size_t>(cols));
  for (Eigen::Index r = 0; r < rows; ++r) {
    for (Eigen::Index c = 0; c < cols; ++c) {
      m(r, c) = {q0(r, c), q1(r, c), q2(r, c), q3(r, c)};
    }
  }
  return m;
}

QuaternionMatrix QuaternionMatrix::from_complex(const Eigen::MatrixXcd& a) {
  QuaternionMatrix m(static_cast<std::size_t>(a.rows()), static_cast<std::size_t>(a.cols()));
  for (Eigen::Index r = 0; r < a.rows(); ++r) {
    for (Eigen::Index c = 0; c < a.cols(); ++c) m(r, c) = Quaternion::from_complex(a(r, c));
  }
  return m;
}

std::vector<Quaternion> QuaternionMatrix::column(std::size_t c) const {
  std::vector<Quaternion> out(rows_);
  for (std::size_t r = 0; r < rows_; ++r) out[r] = (*this)(r, c);
  return out;
}

void QuaternionMatrix::set_column(std::size_t c, std::span<const Quaternion> values) {
  if (values.size() != rows_ || c >= cols_) {
    throw Error(ErrorKind::shape, "set_column: column index or length out of range");
  }
  for (std::size_t r = 0; r < rows_; ++r) (*this)(r, c) = values[r];
}

QuaternionMatrix QuaternionMatrix::columns(std::size_t first, std::size_t count) const {
  if (first + count > cols_) {
    throw Error(ErrorKind::shape, "columns: range exceeds matrix width");
  }
  QuaternionMatrix out(rows_, count);
  for (std::size_t r = 0; r < rows_; ++r) {
    for (std::size_t c = 0; c < count; ++c) out(r, c) = (*this)(r, first + c);
  }
  return out;
}

Eigen::MatrixXd QuaternionMatrix::component(int which) const {
  Eigen::MatrixXd out(rows_, cols_);
  for (std::size_t r = 0; r < rows_; ++r) {
    for (std::size_t c = 0; c < cols_; ++c) {
      const auto& q = (*this)(r, c);
      switch (which) {
        case 0: out(r, c) = q.w; break;
        case 1: out(r, c) = q.x; break;
        case 2: out(r, c) = q.y; break;
        case 3: out(r, c) = q.z; break;
        default: throw Error(ErrorKind::invalid_argument, "component index must be 0..3");
      }
    }
  }
  return out;
}

QuaternionMatrix& QuaternionMatrix::operator+=(const QuaternionMatrix& other) {
  require_same_shape(*this, other, "operator+");
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += other.data_[i];
  return *this;
}

QuaternionMatrix& QuaternionMatrix::operator-=(const QuaternionMatrix& other) {
  require_same_shape(*this, other, "operator-");
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] -= other.data_[i];
  return *this;
}

QuaternionMatrix& QuaternionMatrix::operator*=(double s) {
  for (auto& q : data_) q *= s;
  return *this;
}

QuaternionMatrix operator+(QuaternionMatrix a, const QuaternionMatrix& b) { return a += b; }
QuaternionMatrix operator-(QuaternionMatrix a, const QuaternionMatrix& b) { return a -= b; }
QuaternionMatrix operator*(QuaternionMatrix a, double s) { return a *= s; }

QuaternionMatrix matmul(const QuaternionMatrix& a, const QuaternionMatrix& b) {
  if (a.cols() != b.rows()) {
    throw Error(ErrorKind::shape, "matmul: inner dimensions " + std::to_string(a.cols()) +
                                      " and " + std::to_string(b.rows()) + " differ");
  }
  QuaternionMatrix out(a.rows(), b.cols());
  // i-k-j order keeps the inner loop on contiguous rows of b and out.
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t k = 0; k < a.cols(); ++k) {
      const Quaternion lhs = a(i, k);
      if (lhs == Quaternion{}) continue;
      for (std::size_t j = 0; j < b.cols(); ++j) out(i, j) += lhs * b(k, j);
    }
  }
  return out;
}

QuaternionMatrix scale_columns_right(const QuaternionMatrix& a, std::span<const Quaternion> d) {
  if (d.size() != a.cols()) {
    throw Error(ErrorKind::shape, "scale_columns_right: diagonal length differs from column count");
  }
  QuaternionMatrix out(a);
  for (std::size_t r = 0; r < a.rows(); ++r) {
    for (std::size_t c = 0; c < a.cols(); ++c) out(r, c) = a(r, c) * d[c];
  }
  return out;
}

QuaternionMatrix scale_columns(const QuaternionMatrix& a, std::span<const double> d) {
  if (d.size() != a.cols()) {
    throw Error(ErrorKind::shape, "scale_columns: diagonal length differs from column count");
  }
  QuaternionMatrix out(a);
  for (std::size_t r = 0; r < a.rows(); ++r) {
    for (std::size_t c = 0; c < a.cols(); ++c) out(r, c) *= d[c];
  }
  return out;
}

QuaternionMatrix conj_transpose(const QuaternionMatrix& a) {
  QuaternionMatrix out(a.cols(), a.rows());
  for (std::size_t r = 0; r < a.rows(); ++r) {
    for (std::size_t c = 0; c < a.cols(); ++c) out(c, r) = conjugate(a(r, c));
  }
  return out;
}

double frobenius_norm(const QuaternionMatrix& a) {
  double sum = 0.0;
  for (const auto& q : a.data()) sum += norm_squared(q);
  return std::sqrt(sum);
}

ComplexAdjoint complex_adjoint(const QuaternionMatrix& q) {
  const auto m = static_cast<Eigen::Index>(q.rows());
  const auto n = static_cast<Eigen::Index>(q.cols());
  ComplexAdjoint chi(2 * m, 2 * n);
  for (Eigen::Index r = 0; r < m; ++r) {
    for (Eigen::Index c = 0; c < n; ++c) {
      const auto& e = q(r, c);
      const std::complex<double> a = e.complex_a();
      const std::complex<double> b = e.complex_b();
      chi(r, c) = a;
      chi(r, n + c) = b;
      chi(m + r, c) = -std::conj(b);
      chi(m + r, n + c) = std::conj(a);
    }
  }
  return chi;
}

QuaternionMatrix from_adjoint(const ComplexAdjoint& chi, double tol) {
  if (chi.rows() % 2 != 0 || chi.cols() % 2 != 0) {
    throw Error(ErrorKind::malformed_adjoint, "from_adjoint: dimensions must be even");
  }
  const Eigen::Index m = chi.rows() / 2;
  const Eigen::Index n = chi.cols() / 2;
  QuaternionMatrix q(static_cast<std::size_t>(m), static_cast<std::size_t>(n));
  for (Eigen::Index r = 0; r < m; ++r) {
    for (Eigen::Index c = 0; c < n; ++c) {
      const std::complex<double> a = chi(r, c);
      const std::complex<double> b = chi(r, n + c);
      if (std::abs(chi(m + r, c) + std::conj(b)) > tol ||
          std::abs(chi(m + r, n + c) - std::conj(a)) > tol) {
        throw Error(ErrorKind::malformed_adjoint,
                    "from_adjoint: block symmetry violated at (" + std::to_string(r) + ", " +
                        std::to_string(c) + ")");
      }
      q(r, c) = Quaternion::from_complex_pair(a, b);
    }
  }
  return q;
}

std::vector<Quaternion> quaternion_vector_from_adjoint(
    const Eigen::Ref<const Eigen::VectorXcd>& stacked) {
  const Eigen::Index n = stacked.size() / 2;
  std::vector<Quaternion> out(static_cast<std::size_t>(n));
  for (Eigen::Index r = 0; r < n; ++r) {
    out[r] = Quaternion::from_complex_pair(stacked(r), -std::conj(stacked(n + r)));
  }
  return out;
}

}  // namespace quatdmd
