#pragma once

// Command implementations behind the quatdmd executable. Kept in a library so
// the tests can drive them without spawning processes.

#include <complex>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "quatdmd/error.hpp"
#include "quatdmd/metrics.hpp"
#include "quatdmd/video_io.hpp"

namespace quatdmd::app {

enum class Method { qdmd, dmd_gray, dmd_rgb };

const char* to_string(Method m) noexcept;
/// "qdmd", "dmd-gray" or "dmd-rgb"; anything else is Error(invalid_argument).
Method parse_method(const std::string& s);
/// "A..B", "A.." or "A" (single frame), zero-based and inclusive.
FrameRange parse_frame_range(const std::string& s);
std::string format_frame_range(const FrameRange& r);

struct RunConfig {
  std::string input;
  FrameRange frames;
  std::size_t stride = 1;
  std::size_t downsample = 1;
  std::optional<double> trim_tolerance;
  std::optional<std::size_t> rank;  // default m - 1, capped at the numerical rank
  Method method = Method::qdmd;
  double dt = 1.0;
  std::string out = ".";
  std::optional<std::string> ground_truth;
  double tau = kDefaultTau;
  bool dump_foreground = false;
  bool dump_spectrum = false;
  bool stable_output = false;

  /// Throws Error(invalid_argument) on out-of-range settings.
  void validate() const;
};

/// Reads a JSON object whose keys mirror the long flag names (with '-' or
/// '_'), e.g. {"input": "frames/", "frames": "0..199", "method": "qdmd"}.
RunConfig config_from_json(const nlohmann::json& j, RunConfig base = {});
RunConfig load_config_file(const std::string& path, RunConfig base = {});

struct SpectrumRow {
  std::string channel;  // "q" for Q-DMD, "gray"/"R"/"G"/"B" for the baseline
  std::size_t index = 0;
  std::complex<double> lambda;
  double omega_abs = 0.0;
  double amplitude_abs = 0.0;
  bool selected = false;
};

struct ChannelSummary {
  std::string channel;
  std::size_t effective_rank = 0;
  std::size_t background_index = 0;
  std::vector<double> omega_magnitudes;
};

struct RunReport {
  Method method = Method::qdmd;
  std::string input;
  std::size_t first_frame = 0;
  std::size_t last_frame = 0;
  std::size_t stride = 1;
  std::size_t frame_count = 0;
  std::vector<std::string> source_ids;
  std::size_t width = 0;
  std::size_t height = 0;
  std::size_t downsample = 1;
  std::optional<double> trim_tolerance;
  double dt = 1.0;
  std::vector<ChannelSummary> channels;
  std::optional<double> scalar_part_max;
  std::optional<double> scalar_part_ratio;
  std::optional<MetricsReport> metrics;
  std::map<std::string, double> timings;  // seconds per stage
  std::vector<std::string> outputs;       // files written, relative to out
};

struct ExtractResult {
  RunReport report;
  RgbImage background;
  std::vector<SpectrumRow> spectrum;
};

/// load -> (trim) -> (downsample) -> fit -> separate -> decode, then writes
/// background.png, report.json and the optional dumps into config.out. No
/// file is written unless every stage before output succeeded.
ExtractResult cmd_extract(const RunConfig& config);

/// All six measures for two image files.
MetricsReport cmd_evaluate(const std::string& gt_path, const std::string& cb_path, double tau);

/// Fits the configured model and returns its spectrum sorted by |omega|.
std::vector<SpectrumRow> cmd_inspect(const RunConfig& config);

nlohmann::json to_json(const MetricsReport& m);
nlohmann::json to_json(const RunReport& r, bool include_timings);
nlohmann::json to_json(const std::vector<SpectrumRow>& rows);

/// Serialised form used for report.json / spectrum.json / stdout.
std::string dump(const nlohmann::json& j);

/// Process exit status for each failure class; 0 is success.
int exit_code(ErrorKind kind) noexcept;
inline constexpr int kExitUnexpected = 1;
inline constexpr int kExitUsage = 2;

}  // namespace quatdmd::app
