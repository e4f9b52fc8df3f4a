#include "quatdmd/qdmd.hpp"

#include <chrono>
#include <cmath>
#include <numbers>

#include "quatdmd/decompositions.hpp"
#include "quatdmd/dmd.hpp"
#include "quatdmd/error.hpp"

namespace quatdmd {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

}  // namespace

Quaternion continuous_exponent(const Quaternion& lambda, double dt) {
  if (norm(lambda) < 1e-12) {
    throw Error(ErrorKind::log_singularity,
                "eigenvalue with |lambda| < 1e-12 has no usable logarithm");
  }
  if (vector_norm(lambda) == 0.0 && lambda.w < 0.0) {
    return Quaternion(std::log(-lambda.w), std::numbers::pi, 0.0, 0.0) / dt;
  }
  return log(lambda) / dt;
}

QdmdModel qdmd_fit(const QuaternionMatrix& x, const QuaternionMatrix& y,
                   std::optional<std::size_t> rank, double dt, FitProfile* profile) {
  if (x.cols() == 0) {
    throw Error(ErrorKind::insufficient_data, "qdmd_fit: need at least two snapshots");
  }
  if (x.rows() != y.rows() || x.cols() != y.cols()) {
    throw Error(ErrorKind::shape, "qdmd_fit: X and Y must have the same shape");
  }
  if (!(dt > 0.0)) throw Error(ErrorKind::invalid_argument, "qdmd_fit: dt must be positive");

  auto start = Clock::now();
  Qsvd svd = qsvd(x);
  const std::size_t available = svd.rank();
  const std::size_t r = rank.value_or(available);
  if (r == 0 || r > available) {
    throw Error(ErrorKind::rank, "qdmd_fit: rank " + std::to_string(r) + " is outside 1.." +
                                     std::to_string(available) + " (numerical rank of X)");
  }
  const QuaternionMatrix u = svd.u.columns(0, r);
  const QuaternionMatrix v = svd.v.columns(0, r);
  std::vector<double> sigma_inv(r);
  for (std::size_t k = 0; k < r; ++k) sigma_inv[k] = 1.0 / svd.sigma[k];

  const QuaternionMatrix y_v_sinv = scale_columns(matmul(y, v), sigma_inv);
  const QuaternionMatrix reduced = matmul(conj_transpose(u), y_v_sinv);
  if (profile) profile->svd_seconds = seconds_since(start);

  start = Clock::now();
  const SpectralDecomposition spectral = spectral_decomposition(reduced);

  QdmdModel model;
  model.dt = dt;
  model.modes = matmul(y_v_sinv, spectral.phi);
  model.eigenvalues = spectral.lambda;
  model.omegas.reserve(r);
  for (const auto& lambda : model.eigenvalues) model.omegas.push_back(continuous_exponent(lambda, dt));

  const QuaternionMatrix x1 = x.columns(0, 1);
  const QuaternionMatrix b = matmul(pseudoinverse(model.modes), x1);
  model.amplitudes = b.column(0);
  if (profile) profile->eigen_seconds = seconds_since(start);
  return model;
}

QuaternionMatrix qdmd_mode_term(const QdmdModel& model, std::size_t s,
                                std::span<const double> times) {
  const std::size_t n = model.modes.rows();
  QuaternionMatrix out(n, times.size());
  for (std::size_t t = 0; t < times.size(); ++t) {
    const Quaternion coeff = exp(model.omegas[s] * times[t]) * model.amplitudes[s];
    for (std::size_t i = 0; i < n; ++i) out(i, t) = model.modes(i, s) * coeff;
  }
  return out;
}

namespace {

struct TermSplit {
  QuaternionMatrix selected;  // term p alone
  QuaternionMatrix rest;      // sum of the other terms
};

// The reconstruction is evaluated as selected + rest, so splitting it at p
// is exact in floating point.
TermSplit split_terms(const QdmdModel& model, std::size_t p, std::span<const double> times) {
  QuaternionMatrix dynamics(model.rank(), times.size());
  for (std::size_t s = 0; s < model.rank(); ++s) {
    for (std::size_t t = 0; t < times.size(); ++t) {
      dynamics(s, t) = exp(model.omegas[s] * times[t]) * model.amplitudes[s];
    }
  }
  TermSplit out{qdmd_mode_term(model, p, times), QuaternionMatrix(model.modes.rows(), times.size())};
  for (std::size_t i = 0; i < model.modes.rows(); ++i) {
    for (std::size_t s = 0; s < model.rank(); ++s) {
      if (s == p) continue;
      const Quaternion phi = model.modes(i, s);
      for (std::size_t t = 0; t < times.size(); ++t) out.rest(i, t) += phi * dynamics(s, t);
    }
  }
  return out;
}

}  // namespace

QuaternionMatrix qdmd_reconstruct(const QdmdModel& model, std::span<const double> times) {
  if (model.rank() == 0) return QuaternionMatrix(model.modes.rows(), times.size());
  TermSplit split = split_terms(model, background_mode_index(model), times);
  split.selected += split.rest;
  return split.selected;
}

std::size_t background_mode_index(const QdmdModel& model) {
  std::size_t best = 0;
  for (std::size_t s = 1; s < model.rank(); ++s) {
    const double w = norm(model.omegas[s]);
    const double wb = norm(model.omegas[best]);
    if (w < wb || (w == wb && norm(model.amplitudes[s]) > norm(model.amplitudes[best]))) best = s;
  }
  return best;
}

Separation separate(const QdmdModel& model, std::span<const double> times) {
  if (model.rank() == 0) throw Error(ErrorKind::rank, "separate: model has no modes");
  Separation out;
  out.background_index = background_mode_index(model);
  out.omega_magnitudes.reserve(model.rank());
  for (const auto& w : model.omegas) out.omega_magnitudes.push_back(norm(w));
  TermSplit split = split_terms(model, out.background_index, times);
  out.background = std::move(split.selected);
  out.foreground = std::move(split.rest);
  return out;
}

QdmdBackground qdmd_background(const FrameStack& frames, std::optional<std::size_t> rank,
                               FitProfile* profile) {
  const std::size_t m = frames.frame_count();
  if (m < 2) throw Error(ErrorKind::insufficient_data, "qdmd_background: need at least two frames");

  QdmdBackground out;
  out.model = qdmd_fit(frames.data.columns(0, m - 1), frames.data.columns(1, m - 1), rank,
                       frames.dt, profile);
  const std::vector<double> times = frame_times(m, frames.dt);
  out.separation = separate(out.model, times);

  const QuaternionMatrix full = out.separation.background + out.separation.foreground;
  const double total = frobenius_norm(full);
  out.scalar_part_ratio = total > 0.0 ? full.component(0).norm() / total : 0.0;

  const auto decoded =
      decode_column(frames.width, frames.height, out.separation.background.column(0));
  out.background = decoded.image;
  out.scalar_part_max = decoded.scalar_max_abs;
  return out;
}

}  // namespace quatdmd
