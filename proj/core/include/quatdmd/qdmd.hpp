#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "quatdmd/image.hpp"
#include "quatdmd/quaternion_matrix.hpp"
#include "quatdmd/video_io.hpp"

namespace quatdmd {

/// Quaternion DMD model. Eigenvalues are standard (complex, Im >= 0).
struct QdmdModel {
  QuaternionMatrix modes;             // n x r
  std::vector<Quaternion> eigenvalues;
  std::vector<Quaternion> omegas;     // ln(lambda) / dt
  std::vector<Quaternion> amplitudes; // Phi^+ x_1
  double dt = 1.0;

  std::size_t rank() const noexcept { return eigenvalues.size(); }
};

/// Wall-clock split of a fit, for reporting.
struct FitProfile {
  double svd_seconds = 0.0;
  double eigen_seconds = 0.0;
};

/// Continuous-time exponent for a standard eigenvalue. A negative real
/// eigenvalue maps to ln|lambda| + pi i (the principal branch in C).
/// Throws Error(log_singularity) for |lambda| < 1e-12.
Quaternion continuous_exponent(const Quaternion& lambda, double dt);

/// Fits Y ~ Q X with Q = Phi diag(Lambda) Phi^+ restricted to the leading
/// `rank` quaternion singular directions of X.
///
/// `rank` defaults to the numerical rank of X (never more than m - 1); an
/// explicit rank above it throws Error(rank). Also throws
/// Error(insufficient_data) for an X with no columns,
/// NonDiagonalizableError for a defective reduced operator and
/// Error(log_singularity) for a vanishing eigenvalue.
QdmdModel qdmd_fit(const QuaternionMatrix& x, const QuaternionMatrix& y,
                   std::optional<std::size_t> rank = std::nullopt, double dt = 1.0,
                   FitProfile* profile = nullptr);

/// Column t is sum_s phi_s * (exp(omega_s t) * b_s). The factor order is
/// fixed: quaternion products do not commute. The background term (see
/// background_mode_index) is added last, so the result equals L + S from
/// separate() bit for bit.
QuaternionMatrix qdmd_reconstruct(const QdmdModel& model, std::span<const double> times);

/// The single term phi_s * exp(omega_s t) * b_s over all times.
QuaternionMatrix qdmd_mode_term(const QdmdModel& model, std::size_t s,
                                std::span<const double> times);

/// argmin_s |omega_s|, ties to the larger |b_s|.
std::size_t background_mode_index(const QdmdModel& model);

struct Separation {
  QuaternionMatrix background;  // L
  QuaternionMatrix foreground;  // S: sum of all other terms
  std::size_t background_index = 0;
  std::vector<double> omega_magnitudes;
};

Separation separate(const QdmdModel& model, std::span<const double> times);

struct QdmdBackground {
  RgbImage background;
  QdmdModel model;
  Separation separation;
  double scalar_part_max = 0.0;   // largest |scalar part| dropped when decoding
  double scalar_part_ratio = 0.0; // ||scalar plane||_F / ||reconstruction||_F
};

/// End-to-end background estimate for a frame stack: X = frames 1..m-1,
/// Y = frames 2..m, times l * dt; the background term at t = 0 is decoded.
QdmdBackground qdmd_background(const FrameStack& frames,
                               std::optional<std::size_t> rank = std::nullopt,
                               FitProfile* profile = nullptr);

}  // namespace quatdmd
