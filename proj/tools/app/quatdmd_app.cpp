#include "quatdmd_app.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>

#include "quatdmd/dmd.hpp"
#include "quatdmd/qdmd.hpp"

namespace quatdmd::app {

namespace fs = std::filesystem;
using json = nlohmann::json;

namespace {

class Stopwatch {
 public:
  double lap() {
    const auto now = std::chrono::steady_clock::now();
    const double s = std::chrono::duration<double>(now - last_).count();
    last_ = now;
    return s;
  }

 private:
  std::chrono::steady_clock::time_point last_ = std::chrono::steady_clock::now();
};

[[noreturn]] void bad_config(const std::string& what) {
  throw Error(ErrorKind::invalid_argument, what);
}

std::size_t parse_count(const std::string& s, const std::string& what) {
  std::size_t pos = 0;
  unsigned long long v = 0;
  try {
    v = std::stoull(s, &pos);
  } catch (const std::exception&) {
    bad_config("invalid " + what + " '" + s + "'");
  }
  if (pos != s.size() || s.empty() || s.front() == '-') bad_config("invalid " + what + " '" + s + "'");
  return static_cast<std::size_t>(v);
}

std::uint8_t magnitude_byte(double v) {
  return static_cast<std::uint8_t>(std::clamp(std::round(std::abs(v)), 0.0, 255.0));
}

struct Prepared {
  FrameStack stack;
  std::size_t first_frame = 0;
  std::size_t last_frame = 0;
};

Prepared prepare(const RunConfig& config, std::map<std::string, double>& timings) {
  Stopwatch watch;
  Prepared p;
  p.stack = load_sequence(config.input, config.frames, config.stride);
  timings["ingest"] = watch.lap();

  std::size_t offset = 0;
  if (config.trim_tolerance) {
    const FrameStack trimmed = trim_static_margins(p.stack, *config.trim_tolerance);
    const auto it = std::find(p.stack.source_ids.begin(), p.stack.source_ids.end(),
                              trimmed.source_ids.front());
    offset = static_cast<std::size_t>(it - p.stack.source_ids.begin());
    p.stack = trimmed;
  }
  if (config.downsample > 1) p.stack = downsample(p.stack, config.downsample);
  p.stack.dt = config.dt;
  p.first_frame = config.frames.first + offset * config.stride;
  p.last_frame = p.first_frame + (p.stack.frame_count() - 1) * config.stride;
  timings["preprocess"] = watch.lap();
  return p;
}

struct Fitted {
  std::optional<QdmdBackground> qdmd;
  std::optional<DmdVideoResult> dmd;
  RgbImage background;
  std::vector<ChannelSummary> channels;
  std::vector<SpectrumRow> spectrum;
};

Fitted fit(const RunConfig& config, const FrameStack& stack, std::map<std::string, double>& timings) {
  Fitted f;
  Stopwatch watch;
  if (config.method == Method::qdmd) {
    FitProfile profile;
    f.qdmd = qdmd_background(stack, config.rank, &profile);
    const double total = watch.lap();
    timings["qsvd"] = profile.svd_seconds;
    timings["eigen"] = profile.eigen_seconds;
    timings["reconstruct"] = std::max(0.0, total - profile.svd_seconds - profile.eigen_seconds);
    const QdmdModel& m = f.qdmd->model;
    const Separation& s = f.qdmd->separation;
    f.background = f.qdmd->background;
    f.channels.push_back({"q", m.rank(), s.background_index, s.omega_magnitudes});
    for (std::size_t k = 0; k < m.rank(); ++k) {
      f.spectrum.push_back({"q", k, {m.eigenvalues[k].w, m.eigenvalues[k].x}, s.omega_magnitudes[k],
                            norm(m.amplitudes[k]), k == s.background_index});
    }
  } else {
    const auto mode =
        config.method == Method::dmd_gray ? DmdVideoMode::grayscale : DmdVideoMode::per_channel;
    f.dmd = dmd_on_video(stack, mode, config.rank);
    timings["fit"] = watch.lap();
    f.background = f.dmd->background;
    for (const DmdChannelFit& c : f.dmd->channels) {
      f.channels.push_back({c.channel, c.model.rank(), c.background_index, c.omega_magnitudes});
      for (std::size_t k = 0; k < c.model.rank(); ++k) {
        const auto ki = static_cast<Eigen::Index>(k);
        f.spectrum.push_back({c.channel, k, c.model.eigenvalues(ki), c.omega_magnitudes[k],
                              std::abs(c.model.amplitudes(ki)), k == c.background_index});
      }
    }
  }
  // Rows are grouped by channel; order each group by |omega|.
  for (auto it = f.spectrum.begin(); it != f.spectrum.end();) {
    const auto end = std::find_if(it, f.spectrum.end(),
                                  [&](const SpectrumRow& r) { return r.channel != it->channel; });
    std::stable_sort(it, end, [](const auto& a, const auto& b) { return a.omega_abs < b.omega_abs; });
    it = end;
  }
  return f;
}

// |S| per channel for every frame of the window.
std::vector<RgbImage> foreground_images(const Fitted& f, const FrameStack& stack) {
  const std::size_t m = stack.frame_count();
  std::vector<RgbImage> out(m, RgbImage(stack.width, stack.height));
  if (f.qdmd) {
    const QuaternionMatrix& s = f.qdmd->separation.foreground;
    for (std::size_t t = 0; t < m; ++t) {
      for (std::size_t i = 0; i < stack.pixel_count(); ++i) {
        out[t].pixels[3 * i] = magnitude_byte(s(i, t).x);
        out[t].pixels[3 * i + 1] = magnitude_byte(s(i, t).y);
        out[t].pixels[3 * i + 2] = magnitude_byte(s(i, t).z);
      }
    }
    return out;
  }
  const std::vector<double> times = frame_times(m, stack.dt);
  const bool gray = f.dmd->channels.size() == 1;
  for (std::size_t c = 0; c < f.dmd->channels.size(); ++c) {
    const DmdChannelFit& fit = f.dmd->channels[c];
    const Eigen::MatrixXd s =
        dmd_reconstruct(fit.model, times) - dmd_mode_term(fit.model, fit.background_index, times);
    for (std::size_t t = 0; t < m; ++t) {
      for (std::size_t i = 0; i < stack.pixel_count(); ++i) {
        const std::uint8_t v =
            magnitude_byte(s(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(t)));
        if (gray) {
          for (int k = 0; k < 3; ++k) out[t].pixels[3 * i + k] = v;
        } else {
          out[t].pixels[3 * i + c] = v;
        }
      }
    }
  }
  return out;
}

void write_text(const fs::path& path, const std::string& text) {
  std::ofstream os(path, std::ios::binary);
  os << text;
  os.close();
  if (!os) throw Error(ErrorKind::io, "cannot write '" + path.string() + "'");
}

}  // namespace

const char* to_string(Method m) noexcept {
  switch (m) {
    case Method::qdmd: return "qdmd";
    case Method::dmd_gray: return "dmd-gray";
    case Method::dmd_rgb: return "dmd-rgb";
  }
  return "unknown";
}

Method parse_method(const std::string& s) {
  if (s == "qdmd") return Method::qdmd;
  if (s == "dmd-gray") return Method::dmd_gray;
  if (s == "dmd-rgb") return Method::dmd_rgb;
  bad_config("unknown method '" + s + "' (expected qdmd, dmd-gray or dmd-rgb)");
}

FrameRange parse_frame_range(const std::string& s) {
  const auto dots = s.find("..");
  if (dots == std::string::npos) {
    const std::size_t f = parse_count(s, "frame range");
    return {f, f};
  }
  FrameRange r;
  r.first = parse_count(s.substr(0, dots), "frame range start");
  const std::string tail = s.substr(dots + 2);
  if (!tail.empty()) r.last = parse_count(tail, "frame range end");
  if (r.last && *r.last < r.first) bad_config("frame range '" + s + "' is empty");
  return r;
}

std::string format_frame_range(const FrameRange& r) {
  return std::to_string(r.first) + ".." + (r.last ? std::to_string(*r.last) : std::string());
}

void RunConfig::validate() const {
  if (input.empty()) bad_config("no input given");
  if (stride == 0) bad_config("stride must be >= 1");
  if (downsample == 0) bad_config("downsample factor must be >= 1");
  if (rank && *rank == 0) bad_config("rank must be >= 1");
  if (!(dt > 0.0)) bad_config("dt must be positive");
  if (trim_tolerance && *trim_tolerance < 0.0) bad_config("trim tolerance must be >= 0");
  if (tau < 0.0) bad_config("tau must be >= 0");
  if (out.empty()) bad_config("output directory is empty");
}

RunConfig config_from_json(const json& j, RunConfig c) {
  if (!j.is_object()) bad_config("config file must hold a JSON object");
  try {
    for (const auto& [raw_key, v] : j.items()) {
      std::string key = raw_key;
      std::replace(key.begin(), key.end(), '_', '-');
      if (key == "input") c.input = v.get<std::string>();
      else if (key == "frames") c.frames = parse_frame_range(v.get<std::string>());
      else if (key == "stride") c.stride = v.get<std::size_t>();
      else if (key == "downsample") c.downsample = v.get<std::size_t>();
      else if (key == "trim-tol") c.trim_tolerance = v.get<double>();
      else if (key == "rank") c.rank = v.get<std::size_t>();
      else if (key == "method") c.method = parse_method(v.get<std::string>());
      else if (key == "dt") c.dt = v.get<double>();
      else if (key == "out") c.out = v.get<std::string>();
      else if (key == "gt") c.ground_truth = v.get<std::string>();
      else if (key == "tau") c.tau = v.get<double>();
      else if (key == "dump-foreground") c.dump_foreground = v.get<bool>();
      else if (key == "dump-spectrum") c.dump_spectrum = v.get<bool>();
      else if (key == "stable-output") c.stable_output = v.get<bool>();
      else bad_config("unknown config key '" + raw_key + "'");
    }
  } catch (const json::exception& e) {
    bad_config(std::string("config file: ") + e.what());
  }
  return c;
}

RunConfig load_config_file(const std::string& path, RunConfig base) {
  std::ifstream is(path);
  if (!is) throw Error(ErrorKind::io, "cannot read config file '" + path + "'");
  json j;
  try {
    j = json::parse(is);
  } catch (const json::exception& e) {
    bad_config("config file '" + path + "': " + e.what());
  }
  return config_from_json(j, std::move(base));
}

ExtractResult cmd_extract(const RunConfig& config) {
  config.validate();
  ExtractResult result;
  RunReport& r = result.report;
  Prepared p = prepare(config, r.timings);
  const FrameStack& stack = p.stack;
  Fitted f = fit(config, stack, r.timings);

  r.method = config.method;
  r.input = config.input;
  r.first_frame = p.first_frame;
  r.last_frame = p.last_frame;
  r.stride = config.stride;
  r.frame_count = stack.frame_count();
  r.source_ids = stack.source_ids;
  r.width = stack.width;
  r.height = stack.height;
  r.downsample = config.downsample;
  r.trim_tolerance = config.trim_tolerance;
  r.dt = config.dt;
  r.channels = f.channels;
  if (f.qdmd) {
    r.scalar_part_max = f.qdmd->scalar_part_max;
    r.scalar_part_ratio = f.qdmd->scalar_part_ratio;
  }

  Stopwatch watch;
  if (config.ground_truth) {
    RgbImage gt = load_image(*config.ground_truth);
    if (config.downsample > 1) {
      const std::vector<RgbImage> one{gt};
      gt = frame_image(downsample(stack_from_images(one), config.downsample), 0);
    }
    r.metrics = evaluate(gt, f.background, config.tau);
    r.timings["metrics"] = watch.lap();
  }

  std::vector<RgbImage> foreground;
  if (config.dump_foreground) foreground = foreground_images(f, stack);
  watch.lap();

  const fs::path out(config.out);
  std::error_code ec;
  fs::create_directories(out, ec);
  if (ec) throw Error(ErrorKind::io, "cannot create '" + out.string() + "': " + ec.message());

  write_png(f.background, (out / "background.png").string());
  r.outputs.push_back("background.png");
  for (std::size_t t = 0; t < foreground.size(); ++t) {
    char name[48];
    std::snprintf(name, sizeof name, "foreground_%04zu.png", t);
    write_png(foreground[t], (out / name).string());
    r.outputs.push_back(name);
  }
  if (config.dump_spectrum) {
    write_text(out / "spectrum.json", dump(to_json(f.spectrum)));
    r.outputs.push_back("spectrum.json");
  }
  r.outputs.push_back("report.json");
  r.timings["write"] = watch.lap();
  write_text(out / "report.json", dump(to_json(r, !config.stable_output)));

  result.background = std::move(f.background);
  result.spectrum = std::move(f.spectrum);
  return result;
}

MetricsReport cmd_evaluate(const std::string& gt_path, const std::string& cb_path, double tau) {
  if (tau < 0.0) bad_config("tau must be >= 0");
  return evaluate(load_image(gt_path), load_image(cb_path), tau);
}

std::vector<SpectrumRow> cmd_inspect(const RunConfig& config) {
  config.validate();
  std::map<std::string, double> timings;
  const Prepared p = prepare(config, timings);
  return fit(config, p.stack, timings).spectrum;
}

json to_json(const MetricsReport& m) {
  return {{"age", m.age},   {"peps", m.peps}, {"pceps", m.pceps}, {"msssim", m.msssim},
          {"psnr", m.psnr}, {"cqm", m.cqm},   {"tau", m.threshold_tau}};
}

json to_json(const RunReport& r, bool include_timings) {
  json j;
  j["method"] = to_string(r.method);
  j["input"] = r.input;
  j["window"] = {{"first", r.first_frame},
                 {"last", r.last_frame},
                 {"stride", r.stride},
                 {"frames", r.frame_count},
                 {"source_ids", r.source_ids}};
  j["geometry"] = {{"width", r.width}, {"height", r.height}, {"downsample", r.downsample}};
  j["trim_tolerance"] = r.trim_tolerance ? json(*r.trim_tolerance) : json(nullptr);
  j["dt"] = r.dt;

  std::size_t rank = 0;
  json channels = json::array();
  for (const auto& c : r.channels) {
    rank = std::max(rank, c.effective_rank);
    channels.push_back({{"channel", c.channel},
                        {"effective_rank", c.effective_rank},
                        {"background_index", c.background_index},
                        {"omega_abs", c.omega_magnitudes}});
  }
  j["effective_rank"] = rank;
  j["background_index"] = r.channels.empty() ? json(nullptr) : json(r.channels[0].background_index);
  j["channels"] = channels;
  if (r.scalar_part_max) {
    j["scalar_part"] = {{"max_abs", *r.scalar_part_max}, {"ratio", *r.scalar_part_ratio}};
  } else {
    j["scalar_part"] = nullptr;
  }
  j["metrics"] = r.metrics ? to_json(*r.metrics) : json(nullptr);
  if (include_timings) j["timings"] = r.timings;
  j["outputs"] = r.outputs;
  return j;
}

json to_json(const std::vector<SpectrumRow>& rows) {
  json a = json::array();
  for (const auto& row : rows) {
    a.push_back({{"channel", row.channel},
                 {"index", row.index},
                 {"lambda", {{"re", row.lambda.real()}, {"im", row.lambda.imag()}}},
                 {"omega_abs", row.omega_abs},
                 {"amplitude_abs", row.amplitude_abs},
                 {"selected", row.selected}});
  }
  return a;
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

int exit_code(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::io: return 3;
    case ErrorKind::invalid_argument: return 4;
    case ErrorKind::dimension_mismatch: return 5;
    case ErrorKind::insufficient_data: return 6;
    case ErrorKind::rank: return 7;
    case ErrorKind::non_diagonalizable: return 8;
    case ErrorKind::pairing_failure: return 9;
    case ErrorKind::log_singularity: return 10;
    case ErrorKind::domain: return 11;
    case ErrorKind::shape: return 12;
    case ErrorKind::malformed_adjoint: return 13;
  }
  return kExitUnexpected;
}

}  // namespace quatdmd::app
