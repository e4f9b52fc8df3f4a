#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "quatdmd/image.hpp"
#include "quatdmd/quaternion_matrix.hpp"

namespace quatdmd {

/// A colour frame sequence as an n x m pure-quaternion matrix: column l is
/// the row-major vectorisation of frame l with pixel (R, G, B) stored as
/// 0 + R i + G j + B k.
struct FrameStack {
  std::size_t width = 0;
  std::size_t height = 0;
  double dt = 1.0;
  QuaternionMatrix data;
  std::vector<std::string> source_ids;

  std::size_t frame_count() const noexcept { return data.cols(); }
  std::size_t pixel_count() const noexcept { return width * height; }
};

/// Inclusive, zero-based window into the sorted file list.
struct FrameRange {
  std::size_t first = 0;
  std::optional<std::size_t> last;
};

/// Natural ordering: digit runs compare numerically ("f2" < "f10").
bool natural_less(const std::string& a, const std::string& b);

/// Files matched by `pattern`: a directory (all .png/.jpg/.jpeg/.bmp inside),
/// a single file, or a path whose file-name part is a shell glob. Sorted
/// with natural_less. Throws Error(io) when nothing matches.
std::vector<std::string> list_frames(const std::string& pattern);

RgbImage load_image(const std::string& path);
void write_png(const RgbImage& image, const std::string& path);

std::vector<Quaternion> encode_image(const RgbImage& image);

/// Builds a FrameStack from decoded frames; all frames must share geometry.
FrameStack stack_from_images(std::span<const RgbImage> frames,
                             std::vector<std::string> source_ids = {}, double dt = 1.0);

/// Loads, windows and strides a frame sequence.
FrameStack load_sequence(const std::string& pattern, FrameRange range = {}, std::size_t stride = 1);

struct DecodedColumn {
  RgbImage image;
  double scalar_max_abs = 0.0;  // largest |scalar part| that was discarded
};

/// i/j/k coefficients -> R/G/B, rounded half away from zero and clamped to
/// [0, 255]. Throws Error(shape) when column.size() != width * height.
DecodedColumn decode_column(std::size_t width, std::size_t height,
                            std::span<const Quaternion> column);

/// Frame l of the stack as an image.
RgbImage frame_image(const FrameStack& stack, std::size_t l);

/// Block-average downsampling by `factor`; edge blocks average what is
/// available and output geometry is ceil(dim / factor). Results are rounded
/// back to whole gray levels. Throws Error(invalid_argument) for factor 0.
FrameStack downsample(const FrameStack& stack, std::size_t factor);

/// Drops trailing, then leading, frames whose largest per-channel difference
/// to the adjacent inner frame is <= tolerance; at least two frames remain.
FrameStack trim_static_margins(const FrameStack& stack, double tolerance = 0.0);

}  // namespace quatdmd
