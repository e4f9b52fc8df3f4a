#include "quatdmd/dmd.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <Eigen/Eigenvalues>
#include <Eigen/QR>
#include <Eigen/SVD>

#include "quatdmd/error.hpp"

namespace quatdmd {

namespace {

std::size_t count_above_threshold(const Eigen::VectorXd& s, Eigen::Index rows, Eigen::Index cols) {
  if (s.size() == 0 || s(0) == 0.0) return 0;
  const double threshold = static_cast<double>(std::max(rows, cols)) * s(0) *
                           std::numeric_limits<double>::epsilon();
  std::size_t r = 0;
  while (static_cast<Eigen::Index>(r) < s.size() && s(static_cast<Eigen::Index>(r)) > threshold) ++r;
  return r;
}

std::uint8_t to_byte(double v) {
  return static_cast<std::uint8_t>(std::clamp(std::round(v), 0.0, 255.0));
}

}  // namespace

std::vector<double> frame_times(std::size_t count, double dt) {
  std::vector<double> t(count);
  for (std::size_t l = 0; l < count; ++l) t[l] = static_cast<double>(l) * dt;
  return t;
}

std::size_t numerical_rank(const Eigen::MatrixXd& x) {
  if (x.size() == 0) return 0;
  const Eigen::JacobiSVD<Eigen::MatrixXd> svd(x);
  return count_above_threshold(svd.singularValues(), x.rows(), x.cols());
}

RealDmdModel exact_dmd(const Eigen::MatrixXd& x, const Eigen::MatrixXd& y,
                       std::optional<std::size_t> rank, double dt) {
  if (x.cols() == 0) {
    throw Error(ErrorKind::insufficient_data, "exact_dmd: need at least two snapshots");
  }
  if (x.rows() != y.rows() || x.cols() != y.cols()) {
    throw Error(ErrorKind::shape, "exact_dmd: X and Y must have the same shape");
  }
  if (!(dt > 0.0)) throw Error(ErrorKind::invalid_argument, "exact_dmd: dt must be positive");

  const Eigen::JacobiSVD<Eigen::MatrixXd> svd(x, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const std::size_t available = count_above_threshold(svd.singularValues(), x.rows(), x.cols());
  const std::size_t r = rank.value_or(available);
  if (r == 0 || r > available) {
    throw Error(ErrorKind::rank, "exact_dmd: rank " + std::to_string(r) +
                                     " is outside 1.." + std::to_string(available) +
                                     " (numerical rank of X)");
  }
  const auto ri = static_cast<Eigen::Index>(r);
  const Eigen::MatrixXd u = svd.matrixU().leftCols(ri);
  const Eigen::MatrixXd v = svd.matrixV().leftCols(ri);
  const Eigen::VectorXd sigma_inv = svd.singularValues().head(ri).cwiseInverse();

  const Eigen::MatrixXd y_v_sinv = (y * v) * sigma_inv.asDiagonal();
  const Eigen::MatrixXd a_tilde = u.transpose() * y_v_sinv;

  const Eigen::EigenSolver<Eigen::MatrixXd> eig(a_tilde, true);
  if (eig.info() != Eigen::Success) {
    throw Error(ErrorKind::non_diagonalizable, "exact_dmd: eigensolver did not converge");
  }

  RealDmdModel model;
  model.dt = dt;
  model.eigenvalues = eig.eigenvalues();
  model.modes = y_v_sinv.cast<std::complex<double>>() * eig.eigenvectors();
  model.omegas.resize(ri);
  for (Eigen::Index s = 0; s < ri; ++s) {
    const std::complex<double> lambda = model.eigenvalues(s);
    if (std::abs(lambda) < 1e-12) {
      throw Error(ErrorKind::log_singularity,
                  "exact_dmd: eigenvalue with |lambda| < 1e-12 has no usable logarithm");
    }
    model.omegas(s) = std::log(lambda) / dt;
  }
  const Eigen::VectorXcd x1 = x.col(0).cast<std::complex<double>>();
  model.amplitudes = Eigen::CompleteOrthogonalDecomposition<Eigen::MatrixXcd>(model.modes).solve(x1);
  return model;
}

Eigen::MatrixXd dmd_reconstruct(const RealDmdModel& model, std::span<const double> times) {
  Eigen::MatrixXcd dynamics(model.rank(), times.size());
  for (Eigen::Index s = 0; s < dynamics.rows(); ++s) {
    for (Eigen::Index t = 0; t < dynamics.cols(); ++t) {
      dynamics(s, t) = model.amplitudes(s) * std::exp(model.omegas(s) * times[t]);
    }
  }
  return (model.modes * dynamics).real();
}

Eigen::MatrixXd dmd_mode_term(const RealDmdModel& model, std::size_t s,
                              std::span<const double> times) {
  const auto si = static_cast<Eigen::Index>(s);
  Eigen::RowVectorXcd dynamics(static_cast<Eigen::Index>(times.size()));
  for (Eigen::Index t = 0; t < dynamics.size(); ++t) {
    dynamics(t) = model.amplitudes(si) * std::exp(model.omegas(si) * times[t]);
  }
  return (model.modes.col(si) * dynamics).real();
}

std::size_t dmd_background_index(const RealDmdModel& model) {
  std::size_t best = 0;
  for (std::size_t s = 1; s < model.rank(); ++s) {
    const auto si = static_cast<Eigen::Index>(s);
    const auto bi = static_cast<Eigen::Index>(best);
    const double w = std::abs(model.omegas(si));
    const double wb = std::abs(model.omegas(bi));
    if (w < wb || (w == wb && std::abs(model.amplitudes(si)) > std::abs(model.amplitudes(bi)))) {
      best = s;
    }
  }
  return best;
}

DmdVideoResult dmd_on_video(const FrameStack& frames, DmdVideoMode mode,
                            std::optional<std::size_t> rank) {
  const std::size_t m = frames.frame_count();
  if (m < 2) throw Error(ErrorKind::insufficient_data, "dmd_on_video: need at least two frames");

  std::vector<DmdChannelFit> fits;
  if (mode == DmdVideoMode::grayscale) {
    Eigen::MatrixXd gray = kGrayWeightR * frames.data.component(1) +
                           kGrayWeightG * frames.data.component(2) +
                           kGrayWeightB * frames.data.component(3);
    fits.push_back({"gray", {}, 0, {}, std::move(gray)});
  } else {
    fits.push_back({"R", {}, 0, {}, frames.data.component(1)});
    fits.push_back({"G", {}, 0, {}, frames.data.component(2)});
    fits.push_back({"B", {}, 0, {}, frames.data.component(3)});
  }

  const auto mi = static_cast<Eigen::Index>(m);
  for (auto& fit : fits) {
    fit.model = exact_dmd(fit.data.leftCols(mi - 1), fit.data.rightCols(mi - 1), rank, frames.dt);
    fit.background_index = dmd_background_index(fit.model);
    fit.omega_magnitudes.resize(fit.model.rank());
    for (std::size_t s = 0; s < fit.model.rank(); ++s) {
      fit.omega_magnitudes[s] = std::abs(fit.model.omegas(static_cast<Eigen::Index>(s)));
    }
  }

  DmdVideoResult result{RgbImage(frames.width, frames.height), std::move(fits)};
  const std::vector<double> t0{0.0};
  for (std::size_t c = 0; c < result.channels.size(); ++c) {
    const auto& fit = result.channels[c];
    const Eigen::MatrixXd bg = dmd_mode_term(fit.model, fit.background_index, t0);
    for (std::size_t i = 0; i < frames.pixel_count(); ++i) {
      const std::uint8_t v = to_byte(bg(static_cast<Eigen::Index>(i), 0));
      if (mode == DmdVideoMode::grayscale) {
        result.background.pixels[3 * i] = result.background.pixels[3 * i + 1] =
            result.background.pixels[3 * i + 2] = v;
      } else {
        result.background.pixels[3 * i + c] = v;
      }
    }
  }
  return result;
}

}  // namespace quatdmd
