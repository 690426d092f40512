#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "svgscatter/axis_detection.hpp"
#include "svgscatter/point_extraction.hpp"
#include "svgscatter/svg_model.hpp"

namespace svgscatter {

/// Everything tunable about one extraction run.
///
/// Config files are flat `key = value` text; lines starting with `#` are
/// comments and every key is optional. Numeric keys carry the names of the
/// option fields (e.g. `residual_fraction`, `radius_tolerance`); `columns` is a
/// comma-separated subset of x, y, device_radius, source_id; `seed` is an
/// unsigned integer; `*_color` keys set the overlay stroke colors.
struct PipelineConfig {
  SvgOptions svg;
  AxisOptions axis;
  ExtractionOptions extraction;
  std::vector<std::string> columns{"x", "y", "device_radius"};
  std::uint64_t seed = 1;

  std::string box_color = "#1f77b4";
  std::string tick_color = "#2ca02c";
  std::string label_color = "#ff7f0e";
  std::string glyph_color = "#d62728";
};

/// Throws Error(BadConfig) on unknown keys, unparsable values, or any
/// tolerance that is not strictly positive.
PipelineConfig parse_config(std::string_view text);

/// Throws Error(IoFailure) when unreadable, Error(BadConfig) otherwise.
PipelineConfig load_config(const std::filesystem::path& path);

/// Throws Error(BadConfig) if an invariant fails.
void validate(const PipelineConfig& config);

/// Names of every numeric tolerance key, in documentation order.
std::vector<std::string_view> tolerance_keys();

}  // namespace svgscatter
