#pragma once

#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "svgscatter/geometry.hpp"
#include "svgscatter/svg_model.hpp"

namespace svgscatter {

enum class AxisSide { X, Y };

std::string_view to_string(AxisSide side) noexcept;

/// The mandatory left and bottom axes and the plot interior they span.
struct PlotBox {
  SegmentGlyph left_axis;
  SegmentGlyph bottom_axis;
  Box interior;
  double score = 0.0;

  Point corner() const { return Point(interior.min().x(), interior.max().y()); }
};

struct TickMark {
  double position = 0.0;  // device coordinate along the axis
  AxisSide side = AxisSide::X;
  double length = 0.0;
};

struct TickLabel {
  double value = 0.0;
  Point anchor = Point::Zero();
  std::string raw;
  double glyph_height = 0.0;

  /// Estimated centre of the label's ink box.
  Point center() const;
  /// Estimated ink width.
  double width() const;
};

using TickPair = std::pair<TickMark, TickLabel>;

/// Linear device-to-data map: value = intercept + slope * position.
struct AxisCalibration {
  AxisSide side = AxisSide::X;
  double slope = 0.0;
  double intercept = 0.0;
  double rms_residual = 0.0;
  int n_ticks = 0;
  bool reversed = false;
  double value_span = 0.0;  // max - min of the matched tick values

  double operator()(double position) const { return intercept + slope * position; }
};

/// Geometric tolerances for axis finding. Defaults are the documented ones.
struct AxisOptions {
  double angle_tolerance_deg = 2.0;
  double min_axis_length = 10.0;
  double corner_tolerance = 3.0;
  double tick_touch_tolerance = 1.0;
  double tick_min_length = 0.5;
  double tick_max_fraction = 0.15;
  /// Ticks on one axis closer than this are the same mark drawn twice.
  double tick_merge_distance = 0.5;
  double label_window_tick_factor = 3.0;
  double label_window_glyph_factor = 2.0;
  double label_spacing_fraction = 0.5;
  double residual_fraction = 0.01;
};

/// Finds the (left, bottom) axis pair. Throws Error(NoAxesFound).
PlotBox detect_plot_box(const FigureDocument& doc, const AxisOptions& options = {});

/// Tick marks on both axes, each sorted by position.
std::vector<TickMark> detect_ticks(const FigureDocument& doc, const PlotBox& box,
                                   const AxisOptions& options = {});

/// Reads a text run as a number: optional sign (ASCII or Unicode minus),
/// decimal digits, optional exponent and trailing percent.
std::optional<TickLabel> parse_numeric_label(const TextRun& run);

/// Pairs ticks of one axis with labels. Greedy by ascending along-axis
/// distance, injective, ties going to the leftward (x) or upward (y) label.
/// Throws Error(InsufficientMatches) when fewer than two pairs survive.
std::vector<TickPair> match_ticks_to_labels(std::span<const TickMark> ticks,
                                            std::span<const TickLabel> labels,
                                            const PlotBox& box,
                                            const AxisOptions& options = {});

/// Least-squares line through (position, value) with intercept and slope.
template <typename Scalar>
struct LineFit {
  Scalar intercept{};
  Scalar slope{};
  Scalar rms_residual{};
};

/// Fits value = intercept + slope * position by Householder QR on the
/// centred design matrix.
template <typename Scalar>
LineFit<Scalar> fit_line(std::span<const Scalar> positions, std::span<const Scalar> values);

/// Throws Error with TooFewTicks, CollocatedTicks or NonlinearScale.
AxisCalibration calibrate_axis(std::span<const TickPair> pairs, AxisSide side,
                               const AxisOptions& options = {});

}  // namespace svgscatter
