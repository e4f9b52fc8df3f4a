#include "quatdmd/metrics.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <string>

#include <Eigen/Dense>

#include "quatdmd/error.hpp"

namespace quatdmd {

namespace {

using Plane = Eigen::MatrixXd;  // rows = image y

constexpr int kWindow = 11;
constexpr double kWindowSigma = 1.5;
constexpr double kPeak = 255.0;
constexpr std::array<double, 5> kScaleWeights{0.0448, 0.2856, 0.3001, 0.2363, 0.1333};

void require_same_size(const ColorImage& a, const ColorImage& b) {
  if (a.width != b.width || a.height != b.height) {
    throw Error(ErrorKind::dimension_mismatch,
                "images differ in size: " + std::to_string(a.width) + "x" +
                    std::to_string(a.height) + " vs " + std::to_string(b.width) + "x" +
                    std::to_string(b.height));
  }
}

Plane luma_plane(const ColorImage& img) {
  Plane p(img.height, img.width);
  for (std::size_t y = 0; y < img.height; ++y) {
    for (std::size_t x = 0; x < img.width; ++x) {
      p(y, x) = luma(img.at(x, y, 0), img.at(x, y, 1), img.at(x, y, 2));
    }
  }
  return p;
}

double psnr_from_mse(double mse) {
  if (mse == 0.0) return kPsnrCap;
  return std::min(kPsnrCap, 10.0 * std::log10(kPeak * kPeak / mse));
}

std::array<double, kWindow> gaussian_kernel() {
  std::array<double, kWindow> g{};
  double sum = 0.0;
  for (int i = 0; i < kWindow; ++i) {
    const double d = i - kWindow / 2;
    g[i] = std::exp(-d * d / (2.0 * kWindowSigma * kWindowSigma));
    sum += g[i];
  }
  for (auto& v : g) v /= sum;
  return g;
}

// 'valid' separable filtering: output is (h - 10) x (w - 10).
Plane filter_valid(const Plane& in) {
  static const auto g = gaussian_kernel();
  const Eigen::Index oh = in.rows() - kWindow + 1;
  const Eigen::Index ow = in.cols() - kWindow + 1;
  Plane rows(in.rows(), ow);
  for (Eigen::Index y = 0; y < in.rows(); ++y) {
    for (Eigen::Index x = 0; x < ow; ++x) {
      double acc = 0.0;
      for (int k = 0; k < kWindow; ++k) acc += g[k] * in(y, x + k);
      rows(y, x) = acc;
    }
  }
  Plane out(oh, ow);
  for (Eigen::Index y = 0; y < oh; ++y) {
    for (Eigen::Index x = 0; x < ow; ++x) {
      double acc = 0.0;
      for (int k = 0; k < kWindow; ++k) acc += g[k] * rows(y + k, x);
      out(y, x) = acc;
    }
  }
  return out;
}

struct ScaleStats {
  double mean_cs;    // contrast * structure
  double mean_ssim;  // luminance * contrast * structure
};

ScaleStats ssim_stats(const Plane& a, const Plane& b) {
  constexpr double c1 = (0.01 * kPeak) * (0.01 * kPeak);
  constexpr double c2 = (0.03 * kPeak) * (0.03 * kPeak);
  const Plane mu_a = filter_valid(a);
  const Plane mu_b = filter_valid(b);
  const Plane aa = filter_valid(a.cwiseProduct(a));
  const Plane bb = filter_valid(b.cwiseProduct(b));
  const Plane ab = filter_valid(a.cwiseProduct(b));

  double cs_sum = 0.0;
  double ssim_sum = 0.0;
  for (Eigen::Index i = 0; i < mu_a.size(); ++i) {
    const double ma = mu_a(i);
    const double mb = mu_b(i);
    const double va = aa(i) - ma * ma;
    const double vb = bb(i) - mb * mb;
    const double cov = ab(i) - ma * mb;
    const double cs = (2.0 * cov + c2) / (va + vb + c2);
    const double l = (2.0 * ma * mb + c1) / (ma * ma + mb * mb + c1);
    cs_sum += cs;
    ssim_sum += l * cs;
  }
  const auto n = static_cast<double>(mu_a.size());
  return {cs_sum / n, ssim_sum / n};
}

Plane halve(const Plane& p) {
  Plane out(p.rows() / 2, p.cols() / 2);
  for (Eigen::Index y = 0; y < out.rows(); ++y) {
    for (Eigen::Index x = 0; x < out.cols(); ++x) {
      out(y, x) = 0.25 * (p(2 * y, 2 * x) + p(2 * y, 2 * x + 1) + p(2 * y + 1, 2 * x) +
                          p(2 * y + 1, 2 * x + 1));
    }
  }
  return out;
}

double signed_pow(double v, double e) { return std::copysign(std::pow(std::abs(v), e), v); }

}  // namespace

double luma(double r, double g, double b) {
  if (r == g && g == b) return r;
  return 0.299 * r + 0.587 * g + 0.114 * b;
}

double age(const ColorImage& gt, const ColorImage& cb) {
  require_same_size(gt, cb);
  if (gt.pixel_count() == 0) return 0.0;
  const Plane d = luma_plane(gt) - luma_plane(cb);
  return d.cwiseAbs().sum() / static_cast<double>(d.size());
}

double peps(const ColorImage& gt, const ColorImage& cb, double tau) {
  require_same_size(gt, cb);
  if (gt.pixel_count() == 0) return 0.0;
  const Plane d = (luma_plane(gt) - luma_plane(cb)).cwiseAbs();
  return static_cast<double>((d.array() > tau).count()) / static_cast<double>(d.size());
}

double pceps(const ColorImage& gt, const ColorImage& cb, double tau) {
  require_same_size(gt, cb);
  if (gt.pixel_count() == 0) return 0.0;
  const Plane d = (luma_plane(gt) - luma_plane(cb)).cwiseAbs();
  const Eigen::Index h = d.rows();
  const Eigen::Index w = d.cols();
  auto err = [&](Eigen::Index y, Eigen::Index x) { return d(y, x) > tau; };
  std::size_t clustered = 0;
  for (Eigen::Index y = 0; y < h; ++y) {
    for (Eigen::Index x = 0; x < w; ++x) {
      if (!err(y, x)) continue;
      if (y > 0 && !err(y - 1, x)) continue;
      if (y + 1 < h && !err(y + 1, x)) continue;
      if (x > 0 && !err(y, x - 1)) continue;
      if (x + 1 < w && !err(y, x + 1)) continue;
      ++clustered;
    }
  }
  return static_cast<double>(clustered) / static_cast<double>(d.size());
}

double psnr(const ColorImage& gt, const ColorImage& cb) {
  require_same_size(gt, cb);
  if (gt.pixel_count() == 0) return kPsnrCap;
  const Plane d = luma_plane(gt) - luma_plane(cb);
  return psnr_from_mse(d.squaredNorm() / static_cast<double>(d.size()));
}

double msssim(const ColorImage& gt, const ColorImage& cb) {
  require_same_size(gt, cb);
  if (gt.width < kWindow || gt.height < kWindow) {
    throw Error(ErrorKind::invalid_argument,
                "msssim: images must be at least 11x11, got " + std::to_string(gt.width) + "x" +
                    std::to_string(gt.height));
  }
  int scales = 1;
  for (std::size_t w = gt.width / 2, h = gt.height / 2;
       scales < 5 && w >= static_cast<std::size_t>(kWindow) && h >= static_cast<std::size_t>(kWindow);
       w /= 2, h /= 2) {
    ++scales;
  }
  double weight_sum = 0.0;
  for (int s = 0; s < scales; ++s) weight_sum += kScaleWeights[s];

  Plane a = luma_plane(gt);
  Plane b = luma_plane(cb);
  double result = 1.0;
  for (int s = 0; s < scales; ++s) {
    const ScaleStats st = ssim_stats(a, b);
    const double weight = kScaleWeights[s] / weight_sum;
    if (s + 1 < scales) {
      result *= signed_pow(st.mean_cs, weight);
      a = halve(a);
      b = halve(b);
    } else {
      result *= signed_pow(st.mean_ssim, weight);
    }
  }
  return result;
}

double cqm(const ColorImage& gt, const ColorImage& cb) {
  require_same_size(gt, cb);
  const std::size_t n = gt.pixel_count();
  if (n == 0) return kPsnrCap;
  double se_y = 0.0, se_u = 0.0, se_v = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double dr = gt.pixels[3 * i] - cb.pixels[3 * i];
    const double dg = gt.pixels[3 * i + 1] - cb.pixels[3 * i + 1];
    const double db = gt.pixels[3 * i + 2] - cb.pixels[3 * i + 2];
    // The transform is linear, so band differences are transforms of differences.
    const double dy = 0.299 * dr + 0.587 * dg + 0.114 * db;
    const double du = -0.14713 * dr - 0.28886 * dg + 0.436 * db;
    const double dv = 0.615 * dr - 0.51499 * dg - 0.10001 * db;
    se_y += dy * dy;
    se_u += du * du;
    se_v += dv * dv;
  }
  const double count = static_cast<double>(n);
  const double py = psnr_from_mse(se_y / count);
  const double pu = psnr_from_mse(se_u / count);
  const double pv = psnr_from_mse(se_v / count);
  // R_w + C_w = 1, so this is py * R_w + pc * C_w with an exact cap on equal bands.
  const double pc = 0.5 * (pu + pv);
  return py + (pc - py) * kCqmChromaWeight;
}

MetricsReport evaluate(const ColorImage& gt, const ColorImage& cb, double tau) {
  MetricsReport r;
  r.threshold_tau = tau;
  r.age = age(gt, cb);
  r.peps = peps(gt, cb, tau);
  r.pceps = pceps(gt, cb, tau);
  r.msssim = msssim(gt, cb);
  r.psnr = psnr(gt, cb);
  r.cqm = cqm(gt, cb);
  return r;
}

}  // namespace quatdmd
