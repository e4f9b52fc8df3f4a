#include "quatdmd/video_io.hpp"

#include <fnmatch.h>

#include <algorithm>
#include <cctype>
#include <cmath>
#include <filesystem>

#include <opencv2/core.hpp>
#include <opencv2/imgcodecs.hpp>

#include "quatdmd/error.hpp"

namespace quatdmd {

namespace fs = std::filesystem;

namespace {

bool has_image_extension(const fs::path& p) {
  std::string ext = p.extension().string();
  std::transform(ext.begin(), ext.end(), ext.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return ext == ".png" || ext == ".jpg" || ext == ".jpeg" || ext == ".bmp";
}

bool has_glob_chars(const std::string& s) {
  return s.find_first_of("*?[") != std::string::npos;
}

std::uint8_t to_byte(double v) {
  // std::round is half-away-from-zero.
  return static_cast<std::uint8_t>(std::clamp(std::round(v), 0.0, 255.0));
}

double max_frame_difference(const QuaternionMatrix& data, std::size_t a, std::size_t b) {
  double worst = 0.0;
  for (std::size_t r = 0; r < data.rows(); ++r) {
    const Quaternion& p = data(r, a);
    const Quaternion& q = data(r, b);
    worst = std::max({worst, std::abs(p.x - q.x), std::abs(p.y - q.y), std::abs(p.z - q.z)});
  }
  return worst;
}

FrameStack select_frames(const FrameStack& stack, std::size_t first, std::size_t count) {
  FrameStack out{stack.width, stack.height, stack.dt, stack.data.columns(first, count), {}};
  if (!stack.source_ids.empty()) {
    out.source_ids.assign(stack.source_ids.begin() + static_cast<std::ptrdiff_t>(first),
                          stack.source_ids.begin() + static_cast<std::ptrdiff_t>(first + count));
  }
  return out;
}

}  // namespace

bool natural_less(const std::string& a, const std::string& b) {
  std::size_t i = 0;
  std::size_t j = 0;
  while (i < a.size() && j < b.size()) {
    const bool da = std::isdigit(static_cast<unsigned char>(a[i])) != 0;
    const bool db = std::isdigit(static_cast<unsigned char>(b[j])) != 0;
    if (da && db) {
      std::size_t ie = i;
      std::size_t je = j;
      while (ie < a.size() && std::isdigit(static_cast<unsigned char>(a[ie]))) ++ie;
      while (je < b.size() && std::isdigit(static_cast<unsigned char>(b[je]))) ++je;
      std::size_t is = i;
      std::size_t js = j;
      while (is + 1 < ie && a[is] == '0') ++is;
      while (js + 1 < je && b[js] == '0') ++js;
      const std::string_view na(a.data() + is, ie - is);
      const std::string_view nb(b.data() + js, je - js);
      if (na.size() != nb.size()) return na.size() < nb.size();
      if (na != nb) return na < nb;
      i = ie;
      j = je;
    } else {
      if (a[i] != b[j]) return a[i] < b[j];
      ++i;
      ++j;
    }
  }
  if ((a.size() - i) != (b.size() - j)) return (a.size() - i) < (b.size() - j);
  return a < b;  // equal up to leading zeros
}

std::vector<std::string> list_frames(const std::string& pattern) {
  std::vector<std::string> files;
  const fs::path p(pattern);
  std::error_code ec;
  if (fs::is_directory(p, ec)) {
    for (const auto& entry : fs::directory_iterator(p, ec)) {
      if (entry.is_regular_file() && has_image_extension(entry.path())) {
        files.push_back(entry.path().string());
      }
    }
  } else if (has_glob_chars(p.filename().string())) {
    const fs::path dir = p.has_parent_path() ? p.parent_path() : fs::path(".");
    const std::string glob = p.filename().string();
    if (fs::is_directory(dir, ec)) {
      for (const auto& entry : fs::directory_iterator(dir, ec)) {
        if (entry.is_regular_file() &&
            ::fnmatch(glob.c_str(), entry.path().filename().c_str(), 0) == 0) {
          files.push_back(entry.path().string());
        }
      }
    }
  } else if (fs::is_regular_file(p, ec)) {
    files.push_back(p.string());
  }
  if (files.empty()) {
    throw Error(ErrorKind::io, "no image files match '" + pattern + "'");
  }
  std::sort(files.begin(), files.end(), natural_less);
  return files;
}

RgbImage load_image(const std::string& path) {
  const cv::Mat bgr = cv::imread(path, cv::IMREAD_COLOR);
  if (bgr.empty()) {
    throw Error(ErrorKind::io, "cannot decode image '" + path + "'");
  }
  RgbImage img(static_cast<std::size_t>(bgr.cols), static_cast<std::size_t>(bgr.rows));
  for (int y = 0; y < bgr.rows; ++y) {
    const auto* row = bgr.ptr<cv::Vec3b>(y);
    for (int x = 0; x < bgr.cols; ++x) {
      img.at(x, y, 0) = row[x][2];
      img.at(x, y, 1) = row[x][1];
      img.at(x, y, 2) = row[x][0];
    }
  }
  return img;
}

void write_png(const RgbImage& image, const std::string& path) {
  cv::Mat bgr(static_cast<int>(image.height), static_cast<int>(image.width), CV_8UC3);
  for (int y = 0; y < bgr.rows; ++y) {
    auto* row = bgr.ptr<cv::Vec3b>(y);
    for (int x = 0; x < bgr.cols; ++x) {
      row[x] = cv::Vec3b(image.at(x, y, 2), image.at(x, y, 1), image.at(x, y, 0));
    }
  }
  bool ok = false;
  try {
    ok = cv::imwrite(path, bgr);
  } catch (const cv::Exception& e) {
    throw Error(ErrorKind::io, "cannot write '" + path + "': " + e.what());
  }
  if (!ok) throw Error(ErrorKind::io, "cannot write '" + path + "'");
}

std::vector<Quaternion> encode_image(const RgbImage& image) {
  std::vector<Quaternion> column(image.pixel_count());
  for (std::size_t i = 0; i < column.size(); ++i) {
    column[i] = Quaternion::pure(image.pixels[3 * i], image.pixels[3 * i + 1],
                                 image.pixels[3 * i + 2]);
  }
  return column;
}

FrameStack stack_from_images(std::span<const RgbImage> frames, std::vector<std::string> source_ids,
                             double dt) {
  if (frames.empty()) throw Error(ErrorKind::io, "no frames to stack");
  const std::size_t w = frames.front().width;
  const std::size_t h = frames.front().height;
  FrameStack stack{w, h, dt, QuaternionMatrix(w * h, frames.size()), std::move(source_ids)};
  for (std::size_t l = 0; l < frames.size(); ++l) {
    if (frames[l].width != w || frames[l].height != h) {
      const std::string id = l < stack.source_ids.size() ? stack.source_ids[l] : std::to_string(l);
      throw Error(ErrorKind::io, "frame '" + id + "' is " + std::to_string(frames[l].width) + "x" +
                                     std::to_string(frames[l].height) + ", expected " +
                                     std::to_string(w) + "x" + std::to_string(h));
    }
    stack.data.set_column(l, encode_image(frames[l]));
  }
  return stack;
}

FrameStack load_sequence(const std::string& pattern, FrameRange range, std::size_t stride) {
  if (stride == 0) throw Error(ErrorKind::invalid_argument, "stride must be >= 1");
  const auto files = list_frames(pattern);
  const std::size_t last = range.last.value_or(files.size() - 1);
  if (range.first > last || last >= files.size()) {
    throw Error(ErrorKind::invalid_argument,
                "frame range " + std::to_string(range.first) + ".." + std::to_string(last) +
                    " is outside the " + std::to_string(files.size()) + " available frames");
  }
  std::vector<RgbImage> frames;
  std::vector<std::string> ids;
  for (std::size_t i = range.first; i <= last; i += stride) {
    frames.push_back(load_image(files[i]));
    ids.push_back(fs::path(files[i]).filename().string());
  }
  return stack_from_images(frames, std::move(ids));
}

DecodedColumn decode_column(std::size_t width, std::size_t height,
                            std::span<const Quaternion> column) {
  if (column.size() != width * height) {
    throw Error(ErrorKind::shape, "decode_column: column has " + std::to_string(column.size()) +
                                      " entries, geometry needs " + std::to_string(width * height));
  }
  DecodedColumn out{RgbImage(width, height), 0.0};
  for (std::size_t i = 0; i < column.size(); ++i) {
    const Quaternion& q = column[i];
    out.image.pixels[3 * i] = to_byte(q.x);
    out.image.pixels[3 * i + 1] = to_byte(q.y);
    out.image.pixels[3 * i + 2] = to_byte(q.z);
    out.scalar_max_abs = std::max(out.scalar_max_abs, std::abs(q.w));
  }
  return out;
}

RgbImage frame_image(const FrameStack& stack, std::size_t l) {
  return decode_column(stack.width, stack.height, stack.data.column(l)).image;
}

FrameStack downsample(const FrameStack& stack, std::size_t factor) {
  if (factor == 0) throw Error(ErrorKind::invalid_argument, "downsample factor must be >= 1");
  if (factor == 1) return stack;
  const std::size_t w = (stack.width + factor - 1) / factor;
  const std::size_t h = (stack.height + factor - 1) / factor;
  FrameStack out{w, h, stack.dt, QuaternionMatrix(w * h, stack.frame_count()), stack.source_ids};
  for (std::size_t l = 0; l < stack.frame_count(); ++l) {
    for (std::size_t by = 0; by < h; ++by) {
      for (std::size_t bx = 0; bx < w; ++bx) {
        double r = 0.0, g = 0.0, b = 0.0;
        std::size_t count = 0;
        for (std::size_t y = by * factor; y < std::min(stack.height, (by + 1) * factor); ++y) {
          for (std::size_t x = bx * factor; x < std::min(stack.width, (bx + 1) * factor); ++x) {
            const Quaternion& q = stack.data(y * stack.width + x, l);
            r += q.x;
            g += q.y;
            b += q.z;
            ++count;
          }
        }
        const double n = static_cast<double>(count);
        out.data(by * w + bx, l) =
            Quaternion::pure(std::round(r / n), std::round(g / n), std::round(b / n));
      }
    }
  }
  return out;
}

FrameStack trim_static_margins(const FrameStack& stack, double tolerance) {
  const std::size_t m = stack.frame_count();
  if (m <= 2) return stack;
  std::size_t first = 0;
  std::size_t last = m - 1;
  while (last - first + 1 > 2 && max_frame_difference(stack.data, last, last - 1) <= tolerance) {
    --last;
  }
  while (last - first + 1 > 2 && max_frame_difference(stack.data, first, first + 1) <= tolerance) {
    ++first;
  }
  return select_frames(stack, first, last - first + 1);
}

}  // namespace quatdmd
