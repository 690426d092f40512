#pragma once

#include <string>
#include <vector>

#include "svgscatter/axis_detection.hpp"
#include "svgscatter/svg_model.hpp"

namespace svgscatter {

/// One recovered datum in data units.
struct DataPoint {
  double x = 0.0;
  double y = 0.0;
  double device_radius = 0.0;
  std::string source_id;
};

struct RadiusCluster {
  double representative_radius = 0.0;
  std::vector<CircleGlyph> members;
};

struct ExtractionOptions {
  double radius_tolerance = 0.1;
  double raster_overlap_fraction = 0.5;
};

/// Circles inside the (slightly expanded) plot interior, reduced to the most
/// populous radius class. Overlapping glyphs are all kept.
/// Throws Error(NoDataGlyphs).
RadiusCluster select_data_glyphs(const FigureDocument& doc, const PlotBox& box,
                                 const ExtractionOptions& options = {});

/// Applies both calibrations to every member. Output is ordered by device x,
/// then device y, then source id; duplicates are preserved.
std::vector<DataPoint> map_to_data(const RadiusCluster& cluster, const AxisCalibration& xcal,
                                   const AxisCalibration& ycal);

/// True when an embedded raster covers at least the configured fraction of
/// the plot interior.
bool detect_raster_body(const FigureDocument& doc, const PlotBox& box,
                        const ExtractionOptions& options = {});

}  // namespace svgscatter
