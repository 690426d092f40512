#include "svgscatter/config.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <functional>
#include <sstream>

#include "svgscatter/error.hpp"

namespace svgscatter {

namespace {

struct NumericKey {
  std::string_view name;
  double& (*field)(PipelineConfig&);
};

// clang-format off
constexpr NumericKey kNumericKeys[] = {
  {"ellipse_tolerance",         [](PipelineConfig& c) -> double& { return c.svg.ellipse_tolerance; }},
  {"curve_tolerance",           [](PipelineConfig& c) -> double& { return c.svg.curve_tolerance; }},
  {"canvas_extent_factor",      [](PipelineConfig& c) -> double& { return c.svg.canvas_extent_factor; }},
  {"text_baseline_tolerance",   [](PipelineConfig& c) -> double& { return c.svg.text_baseline_tolerance; }},
  {"text_gap_tolerance",        [](PipelineConfig& c) -> double& { return c.svg.text_gap_tolerance; }},
  {"angle_tolerance_deg",       [](PipelineConfig& c) -> double& { return c.axis.angle_tolerance_deg; }},
  {"min_axis_length",           [](PipelineConfig& c) -> double& { return c.axis.min_axis_length; }},
  {"corner_tolerance",          [](PipelineConfig& c) -> double& { return c.axis.corner_tolerance; }},
  {"tick_touch_tolerance",      [](PipelineConfig& c) -> double& { return c.axis.tick_touch_tolerance; }},
  {"tick_min_length",           [](PipelineConfig& c) -> double& { return c.axis.tick_min_length; }},
  {"tick_max_fraction",         [](PipelineConfig& c) -> double& { return c.axis.tick_max_fraction; }},
  {"tick_merge_distance",       [](PipelineConfig& c) -> double& { return c.axis.tick_merge_distance; }},
  {"label_window_tick_factor",  [](PipelineConfig& c) -> double& { return c.axis.label_window_tick_factor; }},
  {"label_window_glyph_factor", [](PipelineConfig& c) -> double& { return c.axis.label_window_glyph_factor; }},
  {"label_spacing_fraction",    [](PipelineConfig& c) -> double& { return c.axis.label_spacing_fraction; }},
  {"residual_fraction",         [](PipelineConfig& c) -> double& { return c.axis.residual_fraction; }},
  {"radius_tolerance",          [](PipelineConfig& c) -> double& { return c.extraction.radius_tolerance; }},
  {"raster_overlap_fraction",   [](PipelineConfig& c) -> double& { return c.extraction.raster_overlap_fraction; }},
};
// clang-format on

constexpr std::string_view kColumns[] = {"x", "y", "device_radius", "source_id"};

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

[[noreturn]] void bad(int line, const std::string& what) {
  throw Error(Errc::BadConfig, "config line " + std::to_string(line) + ": " + what);
}

}  // namespace

std::vector<std::string_view> tolerance_keys() {
  std::vector<std::string_view> out;
  for (const auto& k : kNumericKeys) out.push_back(k.name);
  return out;
}

PipelineConfig parse_config(std::string_view text) {
  PipelineConfig config;
  std::istringstream in{std::string(text)};
  std::string raw;
  int line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    const std::string_view line = trim(raw);
    if (line.empty() || line.front() == '#') continue;
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) bad(line_no, "expected key = value");
    const std::string_view key = trim(line.substr(0, eq));
    const std::string_view value = trim(line.substr(eq + 1));

    if (key == "columns") {
      config.columns.clear();
      std::string_view rest = value;
      while (true) {
        const auto comma = rest.find(',');
        const std::string_view col = trim(rest.substr(0, comma));
        if (std::find(std::begin(kColumns), std::end(kColumns), col) == std::end(kColumns))
          bad(line_no, "unknown column '" + std::string(col) + "'");
        config.columns.emplace_back(col);
        if (comma == std::string_view::npos) break;
        rest.remove_prefix(comma + 1);
      }
      continue;
    }
    if (key == "seed") {
      std::uint64_t seed = 0;
      auto [end, ec] = std::from_chars(value.data(), value.data() + value.size(), seed);
      if (ec != std::errc() || end != value.data() + value.size())
        bad(line_no, "seed must be an unsigned integer");
      config.seed = seed;
      continue;
    }
    if (key == "box_color") { config.box_color = value; continue; }
    if (key == "tick_color") { config.tick_color = value; continue; }
    if (key == "label_color") { config.label_color = value; continue; }
    if (key == "glyph_color") { config.glyph_color = value; continue; }

    auto it = std::find_if(std::begin(kNumericKeys), std::end(kNumericKeys),
                           [&](const NumericKey& k) { return k.name == key; });
    if (it == std::end(kNumericKeys)) bad(line_no, "unknown key '" + std::string(key) + "'");
    double v = 0.0;
    auto [end, ec] = std::from_chars(value.data(), value.data() + value.size(), v);
    if (ec != std::errc() || end != value.data() + value.size())
      bad(line_no, "'" + std::string(key) + "' needs a number");
    it->field(config) = v;
  }
  validate(config);
  return config;
}

PipelineConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(Errc::IoFailure, "cannot read config " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str());
}

void validate(const PipelineConfig& config) {
  PipelineConfig copy = config;
  for (const auto& k : kNumericKeys) {
    const double v = k.field(copy);
    if (!(v > 0.0) || !std::isfinite(v))
      throw Error(Errc::BadConfig, "'" + std::string(k.name) + "' must be strictly positive");
  }
  if (config.columns.empty()) throw Error(Errc::BadConfig, "columns must not be empty");
}

}  // namespace svgscatter
