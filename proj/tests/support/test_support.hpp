#pragma once

// Shared fixtures for unit and acceptance tests: seeded random quaternion
// data and synthetic colour videos with known backgrounds.

#include <cstdint>
#include <random>
#include <vector>

#include "quatdmd/decompositions.hpp"
#include "quatdmd/image.hpp"
#include "quatdmd/quaternion.hpp"
#include "quatdmd/quaternion_matrix.hpp"
#include "quatdmd/video_io.hpp"

namespace quatdmd::testing {

inline Quaternion random_quaternion(std::mt19937_64& rng, double scale = 1.0) {
  std::normal_distribution<double> d(0.0, scale);
  return {d(rng), d(rng), d(rng), d(rng)};
}

inline Quaternion random_unit_quaternion(std::mt19937_64& rng) {
  Quaternion q;
  do {
    q = random_quaternion(rng);
  } while (norm(q) < 1e-3);
  return q / norm(q);
}

inline QuaternionMatrix random_matrix(std::mt19937_64& rng, std::size_t rows, std::size_t cols) {
  QuaternionMatrix m(rows, cols);
  for (auto& q : m.data()) q = random_quaternion(rng);
  return m;
}

/// ||A - B||_F
inline double distance(const QuaternionMatrix& a, const QuaternionMatrix& b) {
  return frobenius_norm(a - b);
}

/// ||A^H A - I||_F
inline double unitarity_residual(const QuaternionMatrix& a) {
  return distance(matmul(conj_transpose(a), a), QuaternionMatrix::identity(a.cols()));
}

inline QuaternionMatrix qsvd_reconstruct(const Qsvd& f) {
  return matmul(scale_columns(f.u, f.sigma), conj_transpose(f.v));
}

/// max_k ||Q v_k - v_k lambda_k||
inline double max_eigen_residual(const QuaternionMatrix& q, const QEigen& e) {
  const QuaternionMatrix lhs = matmul(q, e.vectors);
  const QuaternionMatrix rhs = scale_columns_right(e.vectors, e.values);
  double worst = 0.0;
  for (std::size_t k = 0; k < q.cols(); ++k) {
    double s = 0.0;
    for (std::size_t i = 0; i < q.rows(); ++i) s += norm_squared(lhs(i, k) - rhs(i, k));
    worst = std::max(worst, std::sqrt(s));
  }
  return worst;
}

inline RgbImage gradient_background(std::size_t w, std::size_t h) {
  RgbImage img(w, h);
  for (std::size_t y = 0; y < h; ++y) {
    for (std::size_t x = 0; x < w; ++x) {
      img.at(x, y, 0) = static_cast<std::uint8_t>((x * 255) / (w - 1));
      img.at(x, y, 1) = static_cast<std::uint8_t>((y * 255) / (h - 1));
      img.at(x, y, 2) = static_cast<std::uint8_t>(128);
    }
  }
  return img;
}

struct SyntheticVideo {
  RgbImage background;
  std::vector<RgbImage> frames;
};

/// 64x64 by default, static gradient background, an 8x8 square translating
/// one pixel per frame along a horizontal line.
inline SyntheticVideo moving_square_video(std::size_t size = 64, std::size_t frames = 50,
                                          std::size_t square = 8) {
  SyntheticVideo v{gradient_background(size, size), {}};
  const std::size_t y0 = size / 2 - square / 2;
  for (std::size_t l = 0; l < frames; ++l) {
    RgbImage f = v.background;
    const std::size_t x0 = (2 + l) % (size - square);
    for (std::size_t y = y0; y < y0 + square; ++y) {
      for (std::size_t x = x0; x < x0 + square; ++x) {
        f.at(x, y, 0) = 230;
        f.at(x, y, 1) = 30;
        f.at(x, y, 2) = 40;
      }
    }
    v.frames.push_back(std::move(f));
  }
  return v;
}

inline SyntheticVideo static_video(std::size_t size = 64, std::size_t frames = 50) {
  SyntheticVideo v{gradient_background(size, size), {}};
  v.frames.assign(frames, v.background);
  return v;
}

inline FrameStack to_stack(const SyntheticVideo& v) { return stack_from_images(v.frames); }

}  // namespace quatdmd::testing
