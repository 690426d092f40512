#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "svgscatter/geometry.hpp"

namespace svgscatter {

struct CircleGlyph {
  std::string id;
  Point center = Point::Zero();
  double radius = 0.0;
  std::string stroke_style;  // raw attribute text, informational only
};

struct SegmentGlyph {
  std::string id;
  Point p1 = Point::Zero();
  Point p2 = Point::Zero();

  double length() const { return (p2 - p1).norm(); }
};

struct RasterGlyph {
  std::string id;
  Box bounds;
};

/// A run of text. The anchor is the baseline-left corner in device units.
struct TextRun {
  std::string id;
  Point anchor = Point::Zero();
  std::string content;
  double glyph_height = 0.0;
};

/// Flattened device-space view of one SVG figure.
struct FigureDocument {
  std::vector<CircleGlyph> circles;
  std::vector<SegmentGlyph> segments;
  std::vector<RasterGlyph> rasters;
  std::vector<TextRun> texts;
  Box canvas;
  std::vector<std::string> warnings;
};

/// Tunables used while reading SVG. Defaults are the documented ones.
struct SvgOptions {
  /// |rx - ry| / max(rx, ry) at or below this is read as a circle.
  double ellipse_tolerance = 0.05;
  /// Curves whose control polygon stays within this distance of the chord
  /// are read as a straight segment.
  double curve_tolerance = 0.25;
  /// Primitives outside canvas-center +/- (factor / 2) * canvas-size are
  /// discarded.
  double canvas_extent_factor = 10.0;
  /// Baseline tolerance for joining glyph runs, in glyph heights.
  double text_baseline_tolerance = 0.2;
  /// Maximum horizontal gap for joining glyph runs, in glyph heights.
  double text_gap_tolerance = 0.6;
};

/// Estimated advance of one glyph, as a fraction of the glyph height. Used
/// wherever a text extent must be guessed without font metrics.
inline constexpr double kGlyphAdvance = 0.5;

/// Number of Unicode code points in a UTF-8 string.
std::size_t utf8_length(std::string_view s);

/// Parses an SVG `transform` attribute value (a list of matrix, translate,
/// scale, rotate, skewX, skewY). Throws Error(DegenerateTransform) for a
/// singular result and Error(MalformedXml) for unparseable text.
Affine parse_transform(std::string_view text);

/// Reads an SVG document into a flat device-space model. All ancestor
/// transforms are applied; unsupported elements are skipped with a warning.
/// Throws Error with MalformedXml, NotSvg or DegenerateTransform.
FigureDocument parse_svg(std::string_view bytes, const SvgOptions& options = {});

/// Straight-segment decomposition of SVG path data under `transform`.
/// Nearly straight curves become one segment; other curves are skipped and
/// reported through `warnings` when provided. Throws Error(PathSyntax).
std::vector<SegmentGlyph> flatten_path(std::string_view path_data,
                                       const Affine& transform,
                                       const SvgOptions& options = {},
                                       std::vector<std::string>* warnings = nullptr,
                                       std::string_view id_prefix = "path");

/// Joins per-glyph text runs sharing a baseline into words, then sorts the
/// result by (y, x).
std::vector<TextRun> compose_text_runs(std::vector<TextRun> runs,
                                       const SvgOptions& options = {});

/// Serializes a model back to plain SVG (circles, lines, images, text), in
/// device coordinates with round-trip precision.
std::string write_svg(const FigureDocument& doc);

}  // namespace svgscatter
