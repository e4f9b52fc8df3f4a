#pragma once

/**
 * Quaternion scalar type.
 *
 *   q = w + x i + y j + z k,   i^2 = j^2 = k^2 = ijk = -1
 *
 * Multiplication is the Hamilton product and does not commute: ij = k but
 * ji = -k. Everything downstream (matrix products, eigenvectors, the DMD
 * reconstruction) depends on keeping operand order intact.
 */

#include <cmath>
#include <complex>
#include <iosfwd>

namespace quatdmd {

struct Quaternion {
  double w = 0.0;  // scalar part
  double x = 0.0;  // i
  double y = 0.0;  // j
  double z = 0.0;  // k

  constexpr Quaternion() = default;
  constexpr Quaternion(double w_, double x_, double y_, double z_)
      : w(w_), x(x_), y(y_), z(z_) {}
  // Real scalars embed as w + 0i + 0j + 0k.
  constexpr Quaternion(double real) : w(real) {}  // NOLINT(google-explicit-constructor)

  /// Builds (a + b j) from two complex numbers, a = w + x i, b = y + z i.
  static constexpr Quaternion from_complex_pair(std::complex<double> a,
                                                std::complex<double> b) {
    return {a.real(), a.imag(), b.real(), b.imag()};
  }
  static constexpr Quaternion from_complex(std::complex<double> a) {
    return {a.real(), a.imag(), 0.0, 0.0};
  }
  static constexpr Quaternion pure(double x, double y, double z) {
    return {0.0, x, y, z};
  }

  /// Complex part w + x i of the symplectic split q = a + b j.
  constexpr std::complex<double> complex_a() const { return {w, x}; }
  /// Complex part y + z i of the symplectic split q = a + b j.
  constexpr std::complex<double> complex_b() const { return {y, z}; }

  constexpr double scalar() const { return w; }
  constexpr Quaternion vector() const { return {0.0, x, y, z}; }

  constexpr bool operator==(const Quaternion&) const = default;

  constexpr Quaternion operator-() const { return {-w, -x, -y, -z}; }

  constexpr Quaternion& operator+=(const Quaternion& o) {
    w += o.w;
    x += o.x;
    y += o.y;
    z += o.z;
    return *this;
  }
  constexpr Quaternion& operator-=(const Quaternion& o) {
    w -= o.w;
    x -= o.x;
    y -= o.y;
    z -= o.z;
    return *this;
  }
  constexpr Quaternion& operator*=(double s) {
    w *= s;
    x *= s;
    y *= s;
    z *= s;
    return *this;
  }
  constexpr Quaternion& operator/=(double s) {
    w /= s;
    x /= s;
    y /= s;
    z /= s;
    return *this;
  }
};

constexpr Quaternion operator+(Quaternion a, const Quaternion& b) { return a += b; }
constexpr Quaternion operator-(Quaternion a, const Quaternion& b) { return a -= b; }
constexpr Quaternion operator*(Quaternion a, double s) { return a *= s; }
constexpr Quaternion operator*(double s, Quaternion a) { return a *= s; }
constexpr Quaternion operator/(Quaternion a, double s) { return a /= s; }

// Hamilton product
constexpr Quaternion operator*(const Quaternion& p, const Quaternion& q) {
  return {p.w * q.w - p.x * q.x - p.y * q.y - p.z * q.z,
          p.w * q.x + p.x * q.w + p.y * q.z - p.z * q.y,
          p.w * q.y - p.x * q.z + p.y * q.w + p.z * q.x,
          p.w * q.z + p.x * q.y - p.y * q.x + p.z * q.w};
}

inline constexpr Quaternion kQuatI{0.0, 1.0, 0.0, 0.0};
inline constexpr Quaternion kQuatJ{0.0, 0.0, 1.0, 0.0};
inline constexpr Quaternion kQuatK{0.0, 0.0, 0.0, 1.0};

constexpr Quaternion conjugate(const Quaternion& q) { return {q.w, -q.x, -q.y, -q.z}; }

constexpr double norm_squared(const Quaternion& q) {
  return q.w * q.w + q.x * q.x + q.y * q.y + q.z * q.z;
}

inline double norm(const Quaternion& q) { return std::sqrt(norm_squared(q)); }

/// Length of the vector (imaginary) part.
inline double vector_norm(const Quaternion& q) {
  return std::sqrt(q.x * q.x + q.y * q.y + q.z * q.z);
}

constexpr bool is_pure(const Quaternion& q) { return q.w == 0.0; }

inline bool is_pure_unit(const Quaternion& q, double tol = 1e-12) {
  return q.w == 0.0 && std::abs(norm(q) - 1.0) <= tol;
}

/// conj(q) / |q|^2. Throws Error(domain) for the zero quaternion.
Quaternion inverse(const Quaternion& q);

/// e^w (cos|v| + v/|v| sin|v|); for a zero vector part the result is e^w.
Quaternion exp(const Quaternion& q);

/// Principal logarithm ln|q| + (v/|v|) atan2(|v|, w).
/// Throws Error(domain) for zero and for negative reals, whose logarithm
/// has no unique axis.
Quaternion log(const Quaternion& q);

std::ostream& operator<<(std::ostream& os, const Quaternion& q);

}  // namespace quatdmd
