#pragma once

#include "quatdmd/image.hpp"

namespace quatdmd {

/// Background-quality measures comparing a computed background (CB) to
/// ground truth (GT). AGE, pEPs, pCEPs and PSNR work on BT.601 luma.
struct MetricsReport {
  double age = 0.0;     // mean |luma difference|, gray levels
  double peps = 0.0;    // fraction of pixels with |luma difference| > tau
  double pceps = 0.0;   // error pixels whose in-image 4-neighbours are errors too
  double msssim = 0.0;  // multiscale SSIM on luma
  double psnr = 0.0;    // dB, capped
  double cqm = 0.0;     // dB, YUV-band PSNR weighted 0.9449 / 0.0551
  double threshold_tau = 20.0;
};

inline constexpr double kDefaultTau = 20.0;
inline constexpr double kPsnrCap = 100.0;
inline constexpr double kCqmLumaWeight = 0.9449;
inline constexpr double kCqmChromaWeight = 0.0551;

/// 0.299 R + 0.587 G + 0.114 B; gray pixels (R = G = B) map to their value exactly.
double luma(double r, double g, double b);

// All metrics throw Error(dimension_mismatch) when the images differ in size.
double age(const ColorImage& gt, const ColorImage& cb);
double peps(const ColorImage& gt, const ColorImage& cb, double tau = kDefaultTau);
double pceps(const ColorImage& gt, const ColorImage& cb, double tau = kDefaultTau);
double psnr(const ColorImage& gt, const ColorImage& cb);

/// Gaussian 11x11 window (sigma 1.5), K1 = 0.01, K2 = 0.03, L = 255, up to
/// five scales with weights (0.0448, 0.2856, 0.3001, 0.2363, 0.1333)
/// renormalised over the scales that fit (each scale needs >= 11x11 pixels).
/// Negative contrast-structure terms keep their sign under the weighting
/// power, so the result lies in [-1, 1]. Throws Error(invalid_argument) for
/// images smaller than one window.
double msssim(const ColorImage& gt, const ColorImage& cb);

double cqm(const ColorImage& gt, const ColorImage& cb);

MetricsReport evaluate(const ColorImage& gt, const ColorImage& cb, double tau = kDefaultTau);

inline MetricsReport evaluate(const RgbImage& gt, const RgbImage& cb, double tau = kDefaultTau) {
  return evaluate(to_color_image(gt), to_color_image(cb), tau);
}

}  // namespace quatdmd
