#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "svgscatter/axis_detection.hpp"
#include "svgscatter/config.hpp"
#include "svgscatter/point_extraction.hpp"
#include "svgscatter/project.hpp"

namespace svgscatter {

enum class Status {
  Ok,
  NoAxes,
  NonlinearScale,
  TooFewTicks,
  RasterBody,
  NoDataGlyphs,
  ParseError,
};

std::string_view to_string(Status status) noexcept;

struct ExtractionReport {
  std::string tree_id;
  int figure_index = 0;
  std::string source;  // svg path relative to the project root
  Status status = Status::ParseError;
  int n_points = 0;
  bool x_reversed = false;
  bool y_reversed = false;
  std::optional<AxisCalibration> x_calibration;
  std::optional<AxisCalibration> y_calibration;
  std::string message;  // diagnostic for non-ok statuses
  std::vector<std::string> warnings;

  double x_residual() const { return x_calibration ? x_calibration->rms_residual : 0.0; }
  double y_residual() const { return y_calibration ? y_calibration->rms_residual : 0.0; }
};

/// Detected structure drawn on top of the source figure.
struct Overlay {
  std::optional<PlotBox> box;
  std::vector<TickMark> ticks;
  std::vector<TickLabel> labels;
  std::vector<CircleGlyph> glyphs;
};

/// Inserts overlay markup before the root's closing tag, leaving every
/// original byte untouched. Returns the input unchanged if it has no
/// closing `</svg>`.
std::string annotate_svg(std::string_view original, const Overlay& overlay,
                         const PipelineConfig& config);

struct FigureResult {
  std::vector<DataPoint> points;
  std::string annotated_svg;
  ExtractionReport report;
};

/// Runs the whole chain on SVG text. Stage failures are reported through
/// `report.status`; this never throws for bad content.
FigureResult extract_figure_svg(std::string_view svg, const PipelineConfig& config = {});

/// Reads and extracts one file. Throws Error(IoFailure) if unreadable.
FigureResult extract_figure(const std::filesystem::path& svg, const PipelineConfig& config = {});

/// Numbers rounded to 9 significant digits in shortest round-trip form.
std::string format_number(double v);

std::string format_csv(const std::vector<DataPoint>& points,
                       const std::vector<std::string>& columns = {"x", "y", "device_radius"});

/// Throws Error(IoFailure).
void write_csv(const std::vector<DataPoint>& points, const std::filesystem::path& destination,
               const std::vector<std::string>& columns = {"x", "y", "device_radius"});

std::string report_json(const ExtractionReport& report);

/// Output file names for a source svg: figure.svg maps to figure.csv,
/// figure_annotated.svg and report.json; figure_2.svg to figure_2.csv,
/// figure_2_annotated.svg and report_2.json.
struct OutputNames {
  std::string csv;
  std::string annotated;
  std::string report;
};
OutputNames output_names(const std::filesystem::path& svg);

/// Extracts every enumerated figure into `output_root`, mirroring the tree
/// layout, then writes `summary.json`. A failing figure only affects its
/// own outputs. `jobs` > 1 processes figures in parallel with identical
/// results. Throws Error(IoFailure) only for the summary.
std::vector<ExtractionReport> run_project(const CorpusProject& project,
                                          std::string_view figure_filter,
                                          const PipelineConfig& config,
                                          const std::filesystem::path& output_root,
                                          int jobs = 1);

}  // namespace svgscatter
