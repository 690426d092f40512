#include <doctest.h>

#include "oracles.hpp"
#include "support.hpp"
#include "svgscatter/error.hpp"
#include "svgscatter/point_extraction.hpp"

using namespace svgscatter;

namespace {

PlotBox box_50_500() {
  PlotBox box;
  box.left_axis = {"left", Point(50, 400), Point(50, 50)};
  box.bottom_axis = {"bottom", Point(50, 400), Point(500, 400)};
  box.interior = Box(Point(50, 50), Point(500, 400));
  return box;
}

CircleGlyph circle(std::string id, double x, double y, double r) {
  return CircleGlyph{std::move(id), Point(x, y), r, ""};
}

AxisCalibration cal(AxisSide side, double slope, double intercept) {
  AxisCalibration c;
  c.side = side;
  c.slope = slope;
  c.intercept = intercept;
  c.reversed = side == AxisSide::X ? slope < 0 : slope > 0;
  return c;
}

}  // namespace

TEST_CASE("decorative bullet is left out of the marker cluster") {
  FigureDocument doc;
  for (int i = 0; i < 24; ++i) doc.circles.push_back(circle("c" + std::to_string(i), 60 + 15 * i, 200, 2.0));
  doc.circles.push_back(circle("bullet", 300, 100, 9.0));
  const RadiusCluster cluster = select_data_glyphs(doc, box_50_500());
  CHECK(cluster.members.size() == 24);
  CHECK(cluster.representative_radius == 2.0);

  std::vector<double> radii;
  for (const auto& c : doc.circles) radii.push_back(c.radius);
  CHECK(oracle::radius_cluster(radii, 0.1).size() == 24);
}

TEST_CASE("single circle and stacked duplicates") {
  FigureDocument doc;
  doc.circles.push_back(circle("a", 100, 100, 3));
  CHECK(select_data_glyphs(doc, box_50_500()).members.size() == 1);
  doc.circles.push_back(circle("b", 100, 100, 3));
  const auto cluster = select_data_glyphs(doc, box_50_500());
  CHECK(cluster.members.size() == 2);
  const auto points = map_to_data(cluster, cal(AxisSide::X, 1, 0), cal(AxisSide::Y, -1, 400));
  REQUIRE(points.size() == 2);
  CHECK(points[0].x == points[1].x);
  CHECK(points[0].y == points[1].y);
}

TEST_CASE("no data glyphs") {
  FigureDocument doc;
  CHECK_THROWS_AS(select_data_glyphs(doc, box_50_500()), Error);
  doc.circles.push_back(circle("far", 1000, 1000, 2));
  try {
    select_data_glyphs(doc, box_50_500());
    FAIL("expected throw");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::NoDataGlyphs);
  }
}

TEST_CASE("radius clustering matches exhaustive counting") {
  test::Rng rng(61);
  for (int trial = 0; trial < 500; ++trial) {
    FigureDocument doc;
    const int classes = rng.integer(1, 4);
    std::vector<double> reps;
    for (int k = 0; k < classes; ++k) reps.push_back(rng.uniform(1, 6));
    for (int i = 0, n = rng.integer(1, 30); i < n; ++i) {
      const double r = reps[static_cast<std::size_t>(rng.integer(0, classes - 1))] *
                       (1 + rng.uniform(-0.03, 0.03));
      doc.circles.push_back(
          circle("c" + std::to_string(i), rng.uniform(55, 495), rng.uniform(55, 395), r));
    }
    std::vector<double> radii;
    for (const auto& c : doc.circles) radii.push_back(c.radius);
    const auto want = oracle::radius_cluster(radii, 0.1);
    const auto got = select_data_glyphs(doc, box_50_500());
    REQUIRE(got.members.size() == want.size());
    for (std::size_t i = 0; i < want.size(); ++i) CHECK(got.members[i].id == doc.circles[want[i]].id);
  }
}

TEST_CASE("mapping examples") {
  RadiusCluster cluster{2, {circle("o", 50, 400, 2)}};
  auto p = map_to_data(cluster, cal(AxisSide::X, 1, 0), cal(AxisSide::Y, -1, 400));
  REQUIRE(p.size() == 1);
  CHECK(p[0].x == 50);
  CHECK(p[0].y == 0);
  CHECK(p[0].device_radius == 2);
  CHECK(p[0].source_id == "o");

  cluster.members = {circle("m", 150, 200, 2)};
  p = map_to_data(cluster, cal(AxisSide::X, 0.1, -5), cal(AxisSide::Y, -0.05, 20));
  CHECK(p[0].x == doctest::Approx(-5 + 0.1 * 150));
  CHECK(p[0].y == doctest::Approx(20 - 0.05 * 200));
  CHECK(p[0].x == doctest::Approx(10.0));
  CHECK(p[0].y == doctest::Approx(10.0));
}

TEST_CASE("multiplicity and ordering") {
  test::Rng rng(67);
  for (int trial = 0; trial < 100; ++trial) {
    RadiusCluster cluster;
    for (int i = 0, n = rng.integer(1, 40); i < n; ++i) {
      const double x = rng.integer(0, 5) * 10.0, y = rng.integer(0, 5) * 10.0;
      const int copies = rng.integer(1, 3);
      for (int k = 0; k < copies; ++k)
        cluster.members.push_back(circle("c" + std::to_string(cluster.members.size()), x, y, 2));
    }
    const bool rev = rng.coin();
    const auto xcal = cal(AxisSide::X, rev ? -0.5 : 0.5, 3);
    const auto points = map_to_data(cluster, xcal, cal(AxisSide::Y, -1, 0));
    CHECK(points.size() == cluster.members.size());
    for (std::size_t i = 1; i < points.size(); ++i) {
      // Device order is (x, y, id); data x follows device x per the reversal flag.
      if (rev) CHECK(points[i - 1].x >= points[i].x);
      else CHECK(points[i - 1].x <= points[i].x);
    }
    for (const auto& a : cluster.members)
      for (const auto& b : cluster.members) {
        if (!(a.center.x() > b.center.x())) continue;
        const double ax = xcal(a.center.x()), bx = xcal(b.center.x());
        CHECK((xcal.reversed ? ax < bx : ax > bx));
      }
  }
}

TEST_CASE("raster body detection by overlap area") {
  FigureDocument doc;
  const PlotBox box = box_50_500();
  CHECK_FALSE(detect_raster_body(doc, box));
  doc.rasters.push_back({"full", Box(Point(50, 50), Point(500, 400))});
  CHECK(detect_raster_body(doc, box));

  doc.rasters = {{"logo", Box(Point(60, 60), Point(60 + 45, 60 + 70))}};
  const double fraction = (45.0 * 70.0) / (450.0 * 350.0);
  CHECK(fraction == doctest::Approx(0.02));
  CHECK_FALSE(detect_raster_body(doc, box));

  test::Rng rng(71);
  for (int trial = 0; trial < 500; ++trial) {
    const Point a(rng.uniform(0, 600), rng.uniform(0, 500));
    const Point b(rng.uniform(0, 600), rng.uniform(0, 500));
    doc.rasters = {{"r", make_box(a, b)}};
    const double w = std::max(0.0, std::min(std::max(a.x(), b.x()), 500.0) -
                                       std::max(std::min(a.x(), b.x()), 50.0));
    const double h = std::max(0.0, std::min(std::max(a.y(), b.y()), 400.0) -
                                       std::max(std::min(a.y(), b.y()), 50.0));
    CHECK(detect_raster_body(doc, box) == (w * h >= 0.5 * 450 * 350));
  }
}
