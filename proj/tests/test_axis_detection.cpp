#include <doctest.h>

#include <cstdlib>

#include "oracles.hpp"
#include "support.hpp"
#include "svgscatter/axis_detection.hpp"
#include "svgscatter/error.hpp"

using namespace svgscatter;
using test::close;

namespace {

SegmentGlyph seg(std::string id, double x1, double y1, double x2, double y2) {
  return SegmentGlyph{std::move(id), Point(x1, y1), Point(x2, y2)};
}

FigureDocument frame() {
  FigureDocument doc;
  doc.segments = {seg("left", 50, 400, 50, 50), seg("bottom", 50, 400, 500, 400)};
  doc.canvas = Box(Point(0, 0), Point(600, 450));
  return doc;
}

TickPair pair(double position, double value) {
  TickLabel l;
  l.value = value;
  l.raw = std::to_string(value);
  return {TickMark{position, AxisSide::X, 4}, l};
}

TickLabel label(const std::string& raw, double x, double y, double h = 10) {
  TextRun run{"t", Point(x, y), raw, h};
  auto l = parse_numeric_label(run);
  REQUIRE(l.has_value());
  return *l;
}

Errc code_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected an error");
  return Errc::IoFailure;
}

/// Exhaustive plot-box search under the documented score.
std::optional<std::pair<std::string, std::string>> argmax_box(const FigureDocument& doc) {
  const AxisOptions o;
  double max_v = 0, max_h = 0;
  auto vertical = [&](const SegmentGlyph& s) {
    return s.length() >= o.min_axis_length &&
           std::atan2(std::abs((s.p2 - s.p1).x()), std::abs((s.p2 - s.p1).y())) * 180 / M_PI <=
               o.angle_tolerance_deg;
  };
  auto horizontal = [&](const SegmentGlyph& s) {
    return s.length() >= o.min_axis_length &&
           std::atan2(std::abs((s.p2 - s.p1).y()), std::abs((s.p2 - s.p1).x())) * 180 / M_PI <=
               o.angle_tolerance_deg;
  };
  for (const auto& s : doc.segments) {
    if (vertical(s)) max_v = std::max(max_v, s.length());
    if (horizontal(s)) max_h = std::max(max_h, s.length());
  }
  std::optional<std::pair<std::string, std::string>> best;
  std::tuple<double, double, double, double> best_key{-1, 0, 0, 0};
  for (const auto& v : doc.segments) {
    if (!vertical(v)) continue;
    const Point v_low = v.p1.y() >= v.p2.y() ? v.p1 : v.p2;
    for (const auto& h : doc.segments) {
      if (!horizontal(h)) continue;
      const Point h_left = h.p1.x() <= h.p2.x() ? h.p1 : h.p2;
      const double gap = (v_low - h_left).norm();
      if (gap > o.corner_tolerance) continue;
      const double score = v.length() / max_v * h.length() / max_h * (1 - gap / 6);
      const double corner_x = 0.5 * (v.p1.x() + v.p2.x());
      const double corner_y = 0.5 * (h.p1.y() + h.p2.y());
      const double top = std::min(v.p1.y(), v.p2.y());
      const double right = std::max(h.p1.x(), h.p2.x());
      if (!(right > corner_x) || !(corner_y > top)) continue;
      // Larger score, then lower (larger y), then further left, then longer.
      const std::tuple<double, double, double, double> key{score, corner_y, -corner_x,
                                                           v.length() + h.length()};
      if (key > best_key) {
        best_key = key;
        best = std::make_pair(v.id, h.id);
      }
    }
  }
  return best;
}

}  // namespace

TEST_CASE("single candidate pair gives the plot box") {
  const PlotBox box = detect_plot_box(frame());
  CHECK(box.left_axis.id == "left");
  CHECK(box.bottom_axis.id == "bottom");
  CHECK(box.interior.min() == Point(50, 50));
  CHECK(box.interior.max() == Point(500, 400));
  CHECK(box.score == doctest::Approx(1.0));
}

TEST_CASE("short decorations do not change the plot box") {
  FigureDocument doc = frame();
  doc.segments.push_back(seg("deco", 10, 10, 20, 10));
  const PlotBox box = detect_plot_box(doc);
  CHECK(box.left_axis.id == "left");
  CHECK(box.bottom_axis.id == "bottom");
  CHECK(box.interior.min() == Point(50, 50));
  CHECK(argmax_box(doc) == std::make_pair(std::string("left"), std::string("bottom")));
}

TEST_CASE("a legend frame inside the plot loses to the outer frame") {
  FigureDocument doc = frame();
  doc.segments.push_back(seg("leg-left", 350, 150, 350, 80));
  doc.segments.push_back(seg("leg-bottom", 350, 150, 480, 150));
  doc.segments.push_back(seg("leg-top", 350, 80, 480, 80));
  doc.segments.push_back(seg("leg-right", 480, 150, 480, 80));
  const PlotBox box = detect_plot_box(doc);
  CHECK(box.left_axis.id == "left");
  CHECK(box.bottom_axis.id == "bottom");
  CHECK(argmax_box(doc) == std::make_pair(box.left_axis.id, box.bottom_axis.id));
}

TEST_CASE("no axes") {
  FigureDocument doc;
  doc.segments = {seg("a", 0, 0, 5, 0)};
  CHECK(code_of([&] { detect_plot_box(doc); }) == Errc::NoAxesFound);
}

TEST_CASE("plot box selection matches the exhaustive search") {
  test::Rng rng(41);
  for (int trial = 0; trial < 300; ++trial) {
    FigureDocument doc;
    for (int i = 0, n = rng.integer(1, 4); i < n; ++i) {
      const double x = rng.uniform(0, 200), y = rng.uniform(200, 500);
      const double jitter = rng.coin(0.6) ? 0 : rng.uniform(-4, 4);
      doc.segments.push_back(
          seg("v" + std::to_string(i), x, y, x + rng.uniform(-5, 5), y - rng.uniform(5, 400)));
      doc.segments.push_back(seg("h" + std::to_string(i), x + jitter, y + jitter,
                                 x + rng.uniform(5, 600), y + jitter + rng.uniform(-8, 8)));
    }
    const auto want = argmax_box(doc);
    if (!want) {
      CHECK(code_of([&] { detect_plot_box(doc); }) == Errc::NoAxesFound);
      continue;
    }
    const PlotBox box = detect_plot_box(doc);
    CHECK(std::make_pair(box.left_axis.id, box.bottom_axis.id) == *want);

    // Adding segments shorter than the length gate changes nothing.
    FigureDocument noisy = doc;
    for (int i = 0; i < 10; ++i) {
      const Point a(rng.uniform(0, 700), rng.uniform(0, 500));
      const double ang = rng.uniform(0, 2 * M_PI), len = rng.uniform(0.1, 9.99);
      noisy.segments.push_back(
          seg("s" + std::to_string(i), a.x(), a.y(), a.x() + len * std::cos(ang),
              a.y() + len * std::sin(ang)));
    }
    const PlotBox again = detect_plot_box(noisy);
    CHECK(again.left_axis.id == box.left_axis.id);
    CHECK(again.bottom_axis.id == box.bottom_axis.id);
  }
}

TEST_CASE("tick stubs along the bottom axis") {
  FigureDocument doc = frame();
  for (double x : {150.0, 50.0, 250.0}) doc.segments.push_back(seg("t", x, 400, x, 404));
  const auto ticks = detect_ticks(doc, detect_plot_box(doc));
  REQUIRE(ticks.size() == 3);
  CHECK(ticks[0].position == 50);
  CHECK(ticks[1].position == 150);
  CHECK(ticks[2].position == 250);
  for (const auto& t : ticks) {
    CHECK(t.side == AxisSide::X);
    CHECK(t.length == 4);
  }
}

namespace {

/// Direct predicate: a vertical stub at x touches the bottom axis at y=400
/// within 1 unit and is no longer than 0.15 of the box height.
bool oracle_is_tick(double y_top, double y_bottom) {
  const double len = y_bottom - y_top;
  const bool touches = (y_top <= 400 && y_bottom >= 400) || std::abs(y_top - 400) <= 1 ||
                       std::abs(y_bottom - 400) <= 1;
  return touches && len >= 0.5 && len <= 0.15 * 350;
}

}  // namespace

TEST_CASE("tick gap and length gates") {
  FigureDocument doc = frame();
  doc.segments.push_back(seg("gap", 150, 405, 150, 409));
  doc.segments.push_back(seg("grid", 250, 400 - 0.4 * 350 + 2, 250, 402));
  doc.segments.push_back(seg("ok", 350, 399.5, 350, 404));
  const auto ticks = detect_ticks(doc, detect_plot_box(doc));
  REQUIRE(ticks.size() == 1);
  CHECK(ticks[0].position == 350);
  CHECK_FALSE(oracle_is_tick(405, 409));
  CHECK_FALSE(oracle_is_tick(400 - 0.4 * 350 + 2, 402));

  test::Rng rng(43);
  for (int trial = 0; trial < 500; ++trial) {
    FigureDocument d = frame();
    const double top = rng.uniform(380, 410), bottom = top + rng.uniform(0.1, 70);
    d.segments.push_back(seg("s", 200, top, 200, bottom));
    const auto found = detect_ticks(d, detect_plot_box(d));
    const bool has = std::any_of(found.begin(), found.end(), [](const TickMark& t) {
      return t.side == AxisSide::X && t.position == 200;
    });
    CHECK(has == oracle_is_tick(top, bottom));
  }
}

TEST_CASE("y ticks and duplicate strokes") {
  FigureDocument doc = frame();
  doc.segments.push_back(seg("a", 45, 300, 50, 300));
  doc.segments.push_back(seg("b", 45, 300.2, 50, 300.2));
  doc.segments.push_back(seg("c", 45, 100, 50, 100));
  const auto ticks = detect_ticks(doc, detect_plot_box(doc));
  REQUIRE(ticks.size() == 2);
  CHECK(ticks[0].side == AxisSide::Y);
  CHECK(ticks[0].position == doctest::Approx(100));
  CHECK(ticks[1].position == doctest::Approx(300.1));
}

TEST_CASE("numeric label grammar") {
  auto value = [](const std::string& s) -> std::optional<double> {
    auto l = parse_numeric_label(TextRun{"t", Point(0, 0), s, 10});
    return l ? std::optional(l->value) : std::nullopt;
  };
  CHECK(value("0.5") == 0.5);
  CHECK(value("OR") == std::nullopt);
  CHECK(value("−1.2") == std::strtod("-1.2", nullptr));
  CHECK(value(" 12 ") == 12);
  CHECK(value("1e3") == 1000);
  CHECK(value("2.5E−2") == std::strtod("2.5E-2", nullptr));
  CHECK(value("50%") == 0.5);
  CHECK(value(".5") == 0.5);
  CHECK(value("5.") == 5);
  CHECK(value("-0") == 0);
  for (const char* bad : {"", "-", ".", "1.2.3", "e5", "1e", "1,000", "n=34", "+5", "12a", "%"})
    CHECK_MESSAGE(value(bad) == std::nullopt, bad);
}

TEST_CASE("unicode minus agrees with the reference parser") {
  test::Rng rng(47);
  for (int i = 0; i < 500; ++i) {
    const double v = rng.uniform(-1e4, 1e4);
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*f", rng.integer(0, 6), std::abs(v));
    const std::string ascii = std::string(v < 0 ? "-" : "") + buf;
    const std::string typeset = std::string(v < 0 ? "−" : "") + buf;
    const auto l = parse_numeric_label(TextRun{"t", Point(0, 0), typeset, 10});
    REQUIRE(l);
    CHECK(l->value == std::strtod(ascii.c_str(), nullptr));
    CHECK(l->raw == typeset);
  }
}

TEST_CASE("ticks pair with the labels beneath them") {
  FigureDocument doc = frame();
  const PlotBox box = detect_plot_box(doc);
  const std::vector<TickMark> ticks{{50, AxisSide::X, 4}, {150, AxisSide::X, 4}};
  std::vector<TickLabel> labels{label("0", 48, 415), label("10", 146, 415)};
  auto pairs = match_ticks_to_labels(ticks, labels, box);
  REQUIRE(pairs.size() == 2);
  CHECK(pairs[0].first.position == 50);
  CHECK(pairs[0].second.value == 0);
  CHECK(pairs[1].first.position == 150);
  CHECK(pairs[1].second.value == 10);

  // A stray annotation inside the top of the plot is on the wrong side.
  TickLabel stray;
  stray.value = 34;
  stray.raw = "n=34";
  stray.anchor = Point(300, 30);
  stray.glyph_height = 10;
  labels.push_back(stray);
  pairs = match_ticks_to_labels(ticks, labels, box);
  REQUIRE(pairs.size() == 2);
  CHECK(pairs[1].second.value == 10);
  CHECK(oracle::brute_force_matching(ticks, labels, AxisSide::X, 400) ==
        std::vector<std::pair<std::size_t, std::size_t>>{{0, 0}, {1, 1}});
}

TEST_CASE("equidistant labels: the leftward or upward one wins") {
  const PlotBox box = detect_plot_box(frame());
  const std::vector<TickMark> ticks{{100, AxisSide::X, 4}, {200, AxisSide::X, 4}};
  // Centres at 95 and 105, both 5 from the tick at 100.
  const std::vector<TickLabel> labels{label("7", 102.5, 415), label("3", 92.5, 415),
                                      label("9", 197.5, 415)};
  const auto pairs = match_ticks_to_labels(ticks, labels, box);
  REQUIRE(pairs.size() == 2);
  CHECK(pairs[0].second.value == 3);
  CHECK(oracle::brute_force_matching(ticks, labels, AxisSide::X, 400)[0].second == 1);

  const std::vector<TickMark> yticks{{100, AxisSide::Y, 4}, {200, AxisSide::Y, 4}};
  const std::vector<TickLabel> ylabels{label("7", 30, 108.5), label("3", 30, 98.5),
                                       label("9", 30, 203.5)};
  const auto ypairs = match_ticks_to_labels(yticks, ylabels, box);
  REQUIRE(ypairs.size() == 2);
  CHECK(ypairs[0].second.value == 3);  // centre y 95 is above 105
}

TEST_CASE("too few matches") {
  const PlotBox box = detect_plot_box(frame());
  const std::vector<TickMark> ticks{{50, AxisSide::X, 4}, {150, AxisSide::X, 4}};
  const std::vector<TickLabel> labels{label("0", 48, 415)};
  CHECK(code_of([&] { match_ticks_to_labels(ticks, labels, box); }) ==
        Errc::InsufficientMatches);
}

TEST_CASE("greedy matching equals the brute-force optimum") {
  test::Rng rng(53);
  for (int trial = 0; trial < 500; ++trial) {
    const auto m = oracle::random_matching_instance(rng);
    const auto want = oracle::brute_force_matching(m.ticks, m.labels, m.side, m.axis_line);
    if (want.size() < 2) {
      CHECK(code_of([&] { match_ticks_to_labels(m.ticks, m.labels, m.box); }) ==
            Errc::InsufficientMatches);
      continue;
    }
    const auto got = oracle::as_indices(m, match_ticks_to_labels(m.ticks, m.labels, m.box));
    CHECK(got == want);
  }
}

TEST_CASE("calibration examples") {
  const std::vector<TickPair> identity{pair(0, 0), pair(100, 100)};
  const auto c = calibrate_axis(identity, AxisSide::X);
  CHECK(c.slope == doctest::Approx(1));
  CHECK(std::abs(c.intercept) < 1e-12);
  CHECK(c.rms_residual < 1e-12);
  CHECK_FALSE(c.reversed);
  CHECK(c.n_ticks == 2);

  const std::vector<TickPair> ladder{pair(50, 0), pair(150, 10), pair(250, 20)};
  const auto l = calibrate_axis(ladder, AxisSide::X);
  const auto o = oracle::normal_equations({50, 150, 250}, {0, 10, 20});
  CHECK(o.slope == doctest::Approx(0.1));
  CHECK(o.intercept == doctest::Approx(-5));
  CHECK(test::rel_err(l.slope, static_cast<double>(o.slope), 1e-300) < 1e-12);
  CHECK(test::rel_err(l.intercept, static_cast<double>(o.intercept), 1e-300) < 1e-12);
  CHECK(l.rms_residual < 1e-12);
}

TEST_CASE("a logarithmic ladder fails the residual gate") {
  const std::vector<TickPair> log_ticks{pair(0, 1), pair(100, 10), pair(200, 100)};
  const auto o = oracle::normal_equations({0, 100, 200}, {1, 10, 100});
  CHECK(static_cast<double>(o.rms) > 0.01 * 99);
  CHECK(static_cast<double>(o.rms) == doctest::Approx(19.0918).epsilon(1e-4));
  CHECK(code_of([&] { calibrate_axis(log_ticks, AxisSide::X); }) == Errc::NonlinearScale);

  // With the gate opened, the fit itself matches the oracle.
  AxisOptions lax;
  lax.residual_fraction = 1.0;
  const auto c = calibrate_axis(log_ticks, AxisSide::X, lax);
  CHECK(c.rms_residual == doctest::Approx(static_cast<double>(o.rms)).epsilon(1e-12));
}

TEST_CASE("calibration error kinds and reversal") {
  CHECK(code_of([] { calibrate_axis(std::vector<TickPair>{pair(1, 1)}, AxisSide::X); }) ==
        Errc::TooFewTicks);
  CHECK(code_of([] {
          calibrate_axis(std::vector<TickPair>{pair(5, 1), pair(5, 2)}, AxisSide::X);
        }) == Errc::CollocatedTicks);
  CHECK(code_of([] {
          calibrate_axis(std::vector<TickPair>{pair(1, 2), pair(5, 2)}, AxisSide::X);
        }) == Errc::TooFewTicks);
  const std::vector<TickPair> falling{pair(0, 10), pair(100, 0)};
  CHECK(calibrate_axis(falling, AxisSide::X).reversed);
  CHECK_FALSE(calibrate_axis(falling, AxisSide::Y).reversed);
  const std::vector<TickPair> rising{pair(0, 0), pair(100, 10)};
  CHECK(calibrate_axis(rising, AxisSide::Y).reversed);
}

TEST_CASE("exact linear ladders are recovered and scale equivariantly") {
  test::Rng rng(59);
  for (int trial = 0; trial < 300; ++trial) {
    const double a = rng.uniform(-100, 100);
    const double b = (rng.coin() ? 1 : -1) * std::pow(10.0, rng.uniform(-4, 2));
    const int n = rng.integer(2, 10);
    std::vector<TickPair> pairs;
    std::vector<double> positions;
    for (int i = 0; i < n; ++i) {
      const double p = rng.uniform(0, 1000);
      positions.push_back(p);
      pairs.push_back(pair(p, a + b * p));
    }
    const auto c = calibrate_axis(pairs, AxisSide::X);
    CHECK(test::rel_err(c.slope, b, 0) < 1e-9);
    CHECK(std::abs(c.intercept - a) <= 1e-9 * std::max(std::abs(a), std::abs(b) * 1000));

    const double s = rng.uniform(0.1, 10);
    std::vector<TickPair> scaled = pairs;
    for (auto& [t, l] : scaled) t.position *= s;
    const auto cs = calibrate_axis(scaled, AxisSide::X);
    CHECK(test::rel_err(cs.slope, c.slope / s, 0) < 1e-9);
    CHECK(std::abs(cs.intercept - c.intercept) <=
          1e-9 * std::max(std::abs(c.intercept), std::abs(c.slope) * 1000));
    for (double p : positions)
      CHECK(std::abs(cs(p * s) - c(p)) <= 1e-9 * std::max(std::abs(c(p)), std::abs(b) * 1000));
  }
}

TEST_CASE("single precision fit") {
  const std::vector<float> p{0, 1, 2, 3}, v{1, 3, 5, 7};
  const auto f = fit_line<float>(p, v);
  CHECK(f.slope == doctest::Approx(2).epsilon(1e-6));
  CHECK(f.intercept == doctest::Approx(1).epsilon(1e-6));
}
