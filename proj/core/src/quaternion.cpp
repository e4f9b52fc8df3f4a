#include "quatdmd/quaternion.hpp"

#include <ostream>

#include "quatdmd/error.hpp"

namespace quatdmd {

const char* to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::domain: return "domain";
    case ErrorKind::shape: return "shape";
    case ErrorKind::malformed_adjoint: return "malformed-adjoint";
    case ErrorKind::pairing_failure: return "pairing-failure";
    case ErrorKind::non_diagonalizable: return "non-diagonalizable";
    case ErrorKind::rank: return "rank";
    case ErrorKind::insufficient_data: return "insufficient-data";
    case ErrorKind::log_singularity: return "log-singularity";
    case ErrorKind::io: return "io";
    case ErrorKind::dimension_mismatch: return "dimension-mismatch";
    case ErrorKind::invalid_argument: return "invalid-argument";
  }
  return "unknown";
}

Quaternion inverse(const Quaternion& q) {
  const double n2 = norm_squared(q);
  if (n2 == 0.0) {
    throw Error(ErrorKind::domain, "inverse of the zero quaternion");
  }
  return conjugate(q) / n2;
}

Quaternion exp(const Quaternion& q) {
  const double scale = std::exp(q.w);
  const double angle = vector_norm(q);
  if (angle == 0.0) {
    return Quaternion(scale);
  }
  const double s = scale * std::sin(angle) / angle;
  return {scale * std::cos(angle), s * q.x, s * q.y, s * q.z};
}

Quaternion log(const Quaternion& q) {
  const double n = norm(q);
  if (n == 0.0) {
    throw Error(ErrorKind::domain, "logarithm of the zero quaternion");
  }
  const double v = vector_norm(q);
  if (v == 0.0) {
    if (q.w < 0.0) {
      throw Error(ErrorKind::domain,
                  "logarithm of a negative real quaternion has no principal value");
    }
    return Quaternion(std::log(n));
  }
  // atan2 keeps the angle in (pi/2, pi) when w < 0.
  const double s = std::atan2(v, q.w) / v;
  return {std::log(n), s * q.x, s * q.y, s * q.z};
}

std::ostream& operator<<(std::ostream& os, const Quaternion& q) {
  return os << '(' << q.w << (q.x < 0 ? " - " : " + ") << std::abs(q.x) << "i"
            << (q.y < 0 ? " - " : " + ") << std::abs(q.y) << "j"
            << (q.z < 0 ? " - " : " + ") << std::abs(q.z) << "k)";
}

}  // namespace quatdmd
