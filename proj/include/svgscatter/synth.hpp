#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "svgscatter/geometry.hpp"

namespace svgscatter {

enum class AxisStyle { Standard, ReversedX, ReversedY, LogX, RasterBody };

std::string_view to_string(AxisStyle style) noexcept;
std::optional<AxisStyle> parse_axis_style(std::string_view name) noexcept;

/// Recipe for one synthetic scatter figure with known ground truth.
struct SyntheticSpec {
  int n_points = 20;
  double x_min = 0.0;
  double x_max = 1.0;
  double y_min = 0.0;
  double y_max = 1.0;
  int n_ticks_x = 5;
  int n_ticks_y = 5;
  double marker_radius = 2.0;
  double width = 600.0;
  double height = 450.0;
  AxisStyle axis_style = AxisStyle::Standard;
  std::uint64_t seed = 1;
};

/// Data-space point of the ground truth.
using DataXY = Eigen::Vector2d;

struct SyntheticFigure {
  std::string svg;
  std::vector<DataXY> truth;
};

/// Throws Error(BadConfig) when the invariants do not hold.
void validate(const SyntheticSpec& spec);

/// Deterministic in `spec.seed`: the same spec always gives identical bytes.
SyntheticFigure generate_scatter_svg(const SyntheticSpec& spec);

/// A standard-style spec with "nice" tick ranges, 4-50 points and 3-8
/// ticks per axis, drawn deterministically from `seed`.
SyntheticSpec random_spec(std::uint64_t seed, AxisStyle style = AxisStyle::Standard);

/// Reads `key = value` lines named after the spec fields (plus
/// `axis_style` = standard | reversed_x | reversed_y | log_x | raster_body).
/// Throws Error(BadConfig).
SyntheticSpec parse_synthetic_spec(std::string_view text);

/// CSV with header `x,y`, shortest round-trip numbers.
std::string format_truth_csv(const std::vector<DataXY>& truth);

}  // namespace svgscatter
