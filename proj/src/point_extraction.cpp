#include "svgscatter/point_extraction.hpp"

#include <algorithm>
#include <cmath>

#include "svgscatter/error.hpp"

namespace svgscatter {

RadiusCluster select_data_glyphs(const FigureDocument& doc, const PlotBox& box,
                                 const ExtractionOptions& options) {
  if (doc.circles.empty())
    throw Error(Errc::NoDataGlyphs, "figure contains no circle glyphs");

  std::vector<double> radii;
  radii.reserve(doc.circles.size());
  for (const auto& c : doc.circles) radii.push_back(c.radius);
  std::vector<double> sorted_all = radii;
  std::sort(sorted_all.begin(), sorted_all.end());
  const std::size_t n_all = sorted_all.size();
  const double median_radius =
      n_all % 2 ? sorted_all[n_all / 2]
                : 0.5 * (sorted_all[n_all / 2 - 1] + sorted_all[n_all / 2]);

  const Box region(box.interior.min() - Point::Constant(median_radius),
                   box.interior.max() + Point::Constant(median_radius));
  std::vector<const CircleGlyph*> inside;
  for (const auto& c : doc.circles)
    if (region.contains(c.center)) inside.push_back(&c);
  if (inside.empty())
    throw Error(Errc::NoDataGlyphs, "no circle glyph inside the plot box");

  std::vector<double> r;
  for (const auto* c : inside) r.push_back(c->radius);
  std::sort(r.begin(), r.end());

  // Every distinct radius is a candidate representative; members are the
  // radii within the relative tolerance of it. Largest class wins, smaller
  // representative on ties.
  double best_rep = 0.0;
  std::ptrdiff_t best_count = -1;
  for (std::size_t i = 0; i < r.size(); ++i) {
    if (i > 0 && r[i] == r[i - 1]) continue;
    const double tol = options.radius_tolerance * r[i];
    const auto lo = std::lower_bound(r.begin(), r.end(), r[i] - tol);
    const auto hi = std::upper_bound(r.begin(), r.end(), r[i] + tol);
    const auto count = hi - lo;
    if (count > best_count) {
      best_count = count;
      best_rep = r[i];
    }
  }

  RadiusCluster cluster;
  cluster.representative_radius = best_rep;
  const double tol = options.radius_tolerance * best_rep;
  for (const auto* c : inside)
    if (std::abs(c->radius - best_rep) <= tol) cluster.members.push_back(*c);
  return cluster;
}

std::vector<DataPoint> map_to_data(const RadiusCluster& cluster, const AxisCalibration& xcal,
                                   const AxisCalibration& ycal) {
  std::vector<const CircleGlyph*> order;
  order.reserve(cluster.members.size());
  for (const auto& c : cluster.members) order.push_back(&c);
  std::stable_sort(order.begin(), order.end(), [](const CircleGlyph* a, const CircleGlyph* b) {
    if (a->center.x() != b->center.x()) return a->center.x() < b->center.x();
    if (a->center.y() != b->center.y()) return a->center.y() < b->center.y();
    return a->id < b->id;
  });

  std::vector<DataPoint> out;
  out.reserve(order.size());
  for (const auto* c : order)
    out.push_back(DataPoint{xcal(c->center.x()), ycal(c->center.y()), c->radius, c->id});
  return out;
}

bool detect_raster_body(const FigureDocument& doc, const PlotBox& box,
                        const ExtractionOptions& options) {
  const double area = box.interior.volume();
  if (!(area > 0.0)) return false;
  return std::any_of(doc.rasters.begin(), doc.rasters.end(), [&](const RasterGlyph& r) {
    return overlap_area(r.bounds, box.interior) >= options.raster_overlap_fraction * area;
  });
}

}  // namespace svgscatter
