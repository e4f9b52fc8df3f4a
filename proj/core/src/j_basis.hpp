#pragma once

// Orthonormal basis helper for complex vectors that represent quaternion
// vectors through the adjoint column map (a; b) <-> a - b* j.
//
// Right-multiplying a quaternion vector by j corresponds to the antilinear
// map J(a; b) = (-b*; a*) on its complex representation, so x and J x always
// describe the same quaternion direction. The basis stores every accepted
// vector together with its J-image; the residual of a candidate then measures
// how much new quaternion direction it carries.

#include <vector>

#include <Eigen/Dense>

namespace quatdmd::detail {

/// Applies J independently to each segment of `x`; `segments` lists segment
/// lengths (each even) that sum to x.size().
inline Eigen::VectorXcd apply_j(const Eigen::VectorXcd& x, const std::vector<Eigen::Index>& segments) {
  Eigen::VectorXcd out(x.size());
  Eigen::Index offset = 0;
  for (const Eigen::Index len : segments) {
    const Eigen::Index h = len / 2;
    out.segment(offset, h) = -x.segment(offset + h, h).conjugate();
    out.segment(offset + h, h) = x.segment(offset, h).conjugate();
    offset += len;
  }
  return out;
}

class JOrthoBasis {
 public:
  explicit JOrthoBasis(std::vector<Eigen::Index> segments) : segments_(std::move(segments)) {}

  Eigen::Index size() const noexcept { return static_cast<Eigen::Index>(vectors_.size()); }

  /// x minus its projection onto the basis (modified Gram-Schmidt, two passes).
  Eigen::VectorXcd residual(const Eigen::VectorXcd& x) const {
    Eigen::VectorXcd w = x;
    for (int pass = 0; pass < 2; ++pass) {
      for (const auto& b : vectors_) w -= b * b.dot(w);
    }
    return w;
  }

  /// Adds `w` (normalised here) and its J-image.
  void add_with_partner(Eigen::VectorXcd w) {
    w = residual(w);
    const double n = w.norm();
    if (n == 0.0) return;
    w /= n;
    vectors_.push_back(w);
    Eigen::VectorXcd partner = residual(apply_j(w, segments_));
    const double pn = partner.norm();
    if (pn > 1e-8) vectors_.push_back(partner / pn);
  }

  const std::vector<Eigen::Index>& segments() const noexcept { return segments_; }

 private:
  std::vector<Eigen::Index> segments_;
  std::vector<Eigen::VectorXcd> vectors_;
};

}  // namespace quatdmd::detail
