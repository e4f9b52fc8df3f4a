#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "quatdmd/image.hpp"
#include "quatdmd/video_io.hpp"

namespace quatdmd {

/// Exact DMD of real snapshot pairs Y ~ A X.
struct RealDmdModel {
  Eigen::MatrixXcd modes;        // n x r
  Eigen::VectorXcd eigenvalues;  // discrete-time lambda
  Eigen::VectorXcd omegas;       // log(lambda) / dt
  Eigen::VectorXcd amplitudes;   // Phi^+ x_1
  double dt = 1.0;

  std::size_t rank() const noexcept { return static_cast<std::size_t>(eigenvalues.size()); }
};

/// Singular values above max(n, m) * sigma_1 * eps.
std::size_t numerical_rank(const Eigen::MatrixXd& x);

/// Fits an exact DMD model. `rank` defaults to the numerical rank of X; an
/// explicit rank above it throws Error(rank). X with no columns throws
/// Error(insufficient_data); an eigenvalue with |lambda| < 1e-12 throws
/// Error(log_singularity).
RealDmdModel exact_dmd(const Eigen::MatrixXd& x, const Eigen::MatrixXd& y,
                       std::optional<std::size_t> rank = std::nullopt, double dt = 1.0);

/// sum_s b_s phi_s exp(omega_s t), real part, one column per time.
Eigen::MatrixXd dmd_reconstruct(const RealDmdModel& model, std::span<const double> times);

/// Single term b_s phi_s exp(omega_s t), real part.
Eigen::MatrixXd dmd_mode_term(const RealDmdModel& model, std::size_t s,
                              std::span<const double> times);

/// argmin_s |omega_s|, ties to the larger |b_s|.
std::size_t dmd_background_index(const RealDmdModel& model);

enum class DmdVideoMode { grayscale, per_channel };

/// BT.601 luma weights used for the grayscale DMD baseline.
inline constexpr double kGrayWeightR = 0.2989;
inline constexpr double kGrayWeightG = 0.5870;
inline constexpr double kGrayWeightB = 0.1140;

struct DmdChannelFit {
  std::string channel;  // "gray", "R", "G" or "B"
  RealDmdModel model;
  std::size_t background_index = 0;
  std::vector<double> omega_magnitudes;
  Eigen::MatrixXd data;  // the n x m real matrix that was decomposed
};

struct DmdVideoResult {
  RgbImage background;
  std::vector<DmdChannelFit> channels;
};

/// Background of a colour sequence from the real-valued DMD baseline, either
/// on grayscale frames (background replicated to RGB) or on R, G and B
/// separately.
DmdVideoResult dmd_on_video(const FrameStack& frames, DmdVideoMode mode,
                            std::optional<std::size_t> rank = std::nullopt);

/// Times 0, dt, 2 dt, ...
std::vector<double> frame_times(std::size_t count, double dt = 1.0);

}  // namespace quatdmd
