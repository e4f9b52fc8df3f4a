#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <vector>

namespace quatdmd {

/// 8-bit RGB raster, row-major, channels interleaved R, G, B.
struct RgbImage {
  std::size_t width = 0;
  std::size_t height = 0;
  std::vector<std::uint8_t> pixels;

  RgbImage() = default;
  RgbImage(std::size_t w, std::size_t h) : width(w), height(h), pixels(w * h * 3, 0) {}

  std::size_t pixel_count() const noexcept { return width * height; }

  std::uint8_t& at(std::size_t x, std::size_t y, int c) { return pixels[(y * width + x) * 3 + c]; }
  std::uint8_t at(std::size_t x, std::size_t y, int c) const { return pixels[(y * width + x) * 3 + c]; }

  bool operator==(const RgbImage&) const = default;
};

/// Floating-point RGB raster with the same layout as RgbImage. The metric
/// suite works on this type so that derived images (e.g. luma-gray versions)
/// need no rounding.
struct ColorImage {
  std::size_t width = 0;
  std::size_t height = 0;
  std::vector<double> pixels;

  ColorImage() = default;
  ColorImage(std::size_t w, std::size_t h) : width(w), height(h), pixels(w * h * 3, 0.0) {}

  std::size_t pixel_count() const noexcept { return width * height; }

  double& at(std::size_t x, std::size_t y, int c) { return pixels[(y * width + x) * 3 + c]; }
  double at(std::size_t x, std::size_t y, int c) const { return pixels[(y * width + x) * 3 + c]; }
};

inline ColorImage to_color_image(const RgbImage& img) {
  ColorImage out(img.width, img.height);
  for (std::size_t i = 0; i < img.pixels.size(); ++i) out.pixels[i] = img.pixels[i];
  return out;
}

}  // namespace quatdmd
