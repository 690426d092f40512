#include "svgscatter/axis_detection.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>

#include <Eigen/QR>

#include "svgscatter/error.hpp"

namespace svgscatter {

std::string_view to_string(AxisSide side) noexcept {
  return side == AxisSide::X ? "x_axis" : "y_axis";
}

namespace {

struct AxisCandidate {
  const SegmentGlyph* segment;
  Point near_end;  // endpoint at the origin corner
  Point far_end;
  double length;
};

/// Angle between two directions folded to [0, 90] degrees.
double angle_between_deg(const Point& u, const Point& v) {
  const double c = std::abs(u.dot(v)) / (u.norm() * v.norm());
  return std::acos(std::min(1.0, c)) * 180.0 / std::numbers::pi;
}

double median(std::vector<double> v) {
  if (v.empty()) return 0.0;
  const auto mid = v.begin() + static_cast<std::ptrdiff_t>(v.size() / 2);
  std::nth_element(v.begin(), mid, v.end());
  if (v.size() % 2 == 1) return *mid;
  const double hi = *mid;
  const double lo = *std::max_element(v.begin(), mid);
  return 0.5 * (lo + hi);
}

}  // namespace

PlotBox detect_plot_box(const FigureDocument& doc, const AxisOptions& options) {
  std::vector<AxisCandidate> verticals;
  std::vector<AxisCandidate> horizontals;
  for (const SegmentGlyph& s : doc.segments) {
    const double len = s.length();
    if (len < options.min_axis_length) continue;
    if (is_near_vertical(s.p1, s.p2, options.angle_tolerance_deg)) {
      // The origin end of a left axis is its lower (larger device y) end.
      const bool p1_low = s.p1.y() >= s.p2.y();
      verticals.push_back({&s, p1_low ? s.p1 : s.p2, p1_low ? s.p2 : s.p1, len});
    } else if (is_near_horizontal(s.p1, s.p2, options.angle_tolerance_deg)) {
      const bool p1_left = s.p1.x() <= s.p2.x();
      horizontals.push_back({&s, p1_left ? s.p1 : s.p2, p1_left ? s.p2 : s.p1, len});
    }
  }

  double max_v = 0.0;
  double max_h = 0.0;
  for (const auto& c : verticals) max_v = std::max(max_v, c.length);
  for (const auto& c : horizontals) max_h = std::max(max_h, c.length);

  std::optional<PlotBox> best;
  double best_total = 0.0;
  for (const auto& v : verticals) {
    for (const auto& h : horizontals) {
      const double gap = (v.near_end - h.near_end).norm();
      if (gap > options.corner_tolerance) continue;
      const double left_x = 0.5 * (v.near_end.x() + v.far_end.x());
      const double bottom_y = 0.5 * (h.near_end.y() + h.far_end.y());
      const Point lo(left_x, v.far_end.y());
      const Point hi(h.far_end.x(), bottom_y);
      if (!(hi.x() > lo.x()) || !(hi.y() > lo.y())) continue;

      const double proximity = 1.0 - gap / (2.0 * options.corner_tolerance);
      const double score = (v.length / max_v) * (h.length / max_h) * proximity;
      const double total = v.length + h.length;

      bool better = !best;
      if (best) {
        const Point corner(lo.x(), hi.y());
        const Point best_corner = best->corner();
        if (std::abs(score - best->score) > 1e-12) {
          better = score > best->score;
        } else if (corner.y() != best_corner.y()) {
          better = corner.y() > best_corner.y();
        } else if (corner.x() != best_corner.x()) {
          better = corner.x() < best_corner.x();
        } else {
          better = total > best_total;
        }
      }
      if (better) {
        best = PlotBox{*v.segment, *h.segment, Box(lo, hi), score};
        best_total = total;
      }
    }
  }
  if (!best)
    throw Error(Errc::NoAxesFound,
                "no left/bottom axis pair found (" + std::to_string(verticals.size()) +
                    " vertical, " + std::to_string(horizontals.size()) +
                    " horizontal candidates)");
  return *best;
}

std::vector<TickMark> detect_ticks(const FigureDocument& doc, const PlotBox& box,
                                   const AxisOptions& options) {
  std::vector<TickMark> out;
  for (AxisSide side : {AxisSide::X, AxisSide::Y}) {
    const SegmentGlyph& axis = side == AxisSide::X ? box.bottom_axis : box.left_axis;
    const Point dir = (axis.p2 - axis.p1).normalized();
    const Point normal(-dir.y(), dir.x());
    const int along = side == AxisSide::X ? 0 : 1;
    const double lo = std::min(axis.p1(along), axis.p2(along)) - options.tick_touch_tolerance;
    const double hi = std::max(axis.p1(along), axis.p2(along)) + options.tick_touch_tolerance;
    const double max_len = options.tick_max_fraction * box.interior.sizes()(1 - along);

    std::vector<TickMark> ticks;
    for (const SegmentGlyph& s : doc.segments) {
      const double len = s.length();
      if (len < options.tick_min_length || len > max_len) continue;
      if (90.0 - angle_between_deg(s.p2 - s.p1, dir) > options.angle_tolerance_deg) continue;

      const double d1 = normal.dot(s.p1 - axis.p1);
      const double d2 = normal.dot(s.p2 - axis.p1);
      Point touch;
      if (d1 * d2 < 0.0) {
        touch = s.p1 + (s.p2 - s.p1) * (d1 / (d1 - d2));
      } else if (std::min(std::abs(d1), std::abs(d2)) <= options.tick_touch_tolerance) {
        touch = std::abs(d1) <= std::abs(d2) ? s.p1 : s.p2;
      } else {
        continue;
      }
      const double position = touch(along);
      if (position < lo || position > hi) continue;
      ticks.push_back(TickMark{position, side, len});
    }

    std::sort(ticks.begin(), ticks.end(),
              [](const TickMark& a, const TickMark& b) { return a.position < b.position; });
    // Collapse marks drawn twice (e.g. both long sides of a thin rect).
    std::vector<TickMark> merged;
    for (std::size_t i = 0; i < ticks.size();) {
      std::size_t j = i + 1;
      double sum = ticks[i].position;
      double len = ticks[i].length;
      while (j < ticks.size() &&
             ticks[j].position - ticks[j - 1].position <= options.tick_merge_distance) {
        sum += ticks[j].position;
        len = std::max(len, ticks[j].length);
        ++j;
      }
      merged.push_back(TickMark{sum / static_cast<double>(j - i), side, len});
      i = j;
    }
    out.insert(out.end(), merged.begin(), merged.end());
  }
  return out;
}

Point TickLabel::center() const {
  return Point(anchor.x() + 0.5 * width(), anchor.y() - 0.35 * glyph_height);
}

double TickLabel::width() const {
  return kGlyphAdvance * glyph_height * static_cast<double>(utf8_length(raw));
}

std::vector<TickPair> match_ticks_to_labels(std::span<const TickMark> all_ticks,
                                            std::span<const TickLabel> labels,
                                            const PlotBox& box,
                                            const AxisOptions& options) {
  if (all_ticks.empty())
    throw Error(Errc::InsufficientMatches, "no tick marks to match");
  const AxisSide side = all_ticks.front().side;
  std::vector<TickMark> ticks;
  for (const TickMark& t : all_ticks)
    if (t.side == side) ticks.push_back(t);
  if (ticks.size() < 2)
    throw Error(Errc::InsufficientMatches,
                std::string("fewer than two ticks on the ") + std::string(to_string(side)));

  std::vector<double> lengths;
  std::vector<double> spacings;
  for (std::size_t i = 0; i < ticks.size(); ++i) {
    lengths.push_back(ticks[i].length);
    if (i > 0) spacings.push_back(ticks[i].position - ticks[i - 1].position);
  }
  const double tick_len = median(lengths);
  const double max_along = options.label_spacing_fraction * median(spacings);

  const bool is_x = side == AxisSide::X;
  const double axis_line = is_x ? box.interior.max().y() : box.interior.min().x();

  struct Candidate {
    std::size_t tick;
    std::size_t label;
    double distance;
    double label_along;
  };
  std::vector<Candidate> candidates;
  for (std::size_t j = 0; j < labels.size(); ++j) {
    const TickLabel& label = labels[j];
    const double h = label.glyph_height;
    const Point c = label.center();
    double perpendicular = 0.0;
    if (is_x) {
      if (c.y() < axis_line + 0.25 * h) continue;
      perpendicular = std::max(0.0, label.anchor.y() - 0.7 * h - axis_line);
    } else {
      if (c.x() > axis_line - 0.25 * h) continue;
      perpendicular = std::max(0.0, axis_line - (label.anchor.x() + label.width()));
    }
    const double window = options.label_window_tick_factor * tick_len +
                          options.label_window_glyph_factor * h;
    if (perpendicular > window) continue;

    const double label_along = is_x ? c.x() : c.y();
    for (std::size_t i = 0; i < ticks.size(); ++i) {
      const double d = std::abs(label_along - ticks[i].position);
      if (d <= max_along) candidates.push_back({i, j, d, label_along});
    }
  }

  std::sort(candidates.begin(), candidates.end(), [](const Candidate& a, const Candidate& b) {
    if (a.distance != b.distance) return a.distance < b.distance;
    if (a.label_along != b.label_along) return a.label_along < b.label_along;
    return a.tick < b.tick;
  });

  std::vector<bool> tick_used(ticks.size(), false);
  std::vector<bool> label_used(labels.size(), false);
  std::vector<std::pair<std::size_t, std::size_t>> chosen;
  for (const Candidate& c : candidates) {
    if (tick_used[c.tick] || label_used[c.label]) continue;
    tick_used[c.tick] = label_used[c.label] = true;
    chosen.emplace_back(c.tick, c.label);
  }
  std::sort(chosen.begin(), chosen.end());

  if (chosen.size() < 2)
    throw Error(Errc::InsufficientMatches,
                "only " + std::to_string(chosen.size()) + " labelled tick(s) on the " +
                    std::string(to_string(side)));
  std::vector<TickPair> out;
  out.reserve(chosen.size());
  for (auto [i, j] : chosen) out.emplace_back(ticks[i], labels[j]);
  return out;
}

template <typename Scalar>
LineFit<Scalar> fit_line(std::span<const Scalar> positions, std::span<const Scalar> values) {
  using Vec = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;
  using Mat = Eigen::Matrix<Scalar, Eigen::Dynamic, 2>;
  const auto n = static_cast<Eigen::Index>(positions.size());
  const Eigen::Map<const Vec> p(positions.data(), n);
  const Eigen::Map<const Vec> v(values.data(), n);

  const Scalar mean = p.mean();
  Mat design(n, 2);
  design.col(0).setOnes();
  design.col(1) = p.array() - mean;
  const Eigen::Matrix<Scalar, 2, 1> coef = design.householderQr().solve(v);

  LineFit<Scalar> fit;
  fit.slope = coef(1);
  fit.intercept = coef(0) - coef(1) * mean;
  const Vec residual = v - (design * coef);
  fit.rms_residual = std::sqrt(residual.squaredNorm() / static_cast<Scalar>(n));
  return fit;
}

template LineFit<float> fit_line<float>(std::span<const float>, std::span<const float>);
template LineFit<double> fit_line<double>(std::span<const double>, std::span<const double>);

AxisCalibration calibrate_axis(std::span<const TickPair> pairs, AxisSide side,
                               const AxisOptions& options) {
  if (pairs.size() < 2)
    throw Error(Errc::TooFewTicks, "need at least two labelled ticks on the " +
                                       std::string(to_string(side)));
  std::vector<double> positions;
  std::vector<double> values;
  for (const auto& [tick, label] : pairs) {
    positions.push_back(tick.position);
    values.push_back(label.value);
  }
  const auto [pmin, pmax] = std::minmax_element(positions.begin(), positions.end());
  if (*pmin == *pmax)
    throw Error(Errc::CollocatedTicks, "all ticks on the " + std::string(to_string(side)) +
                                           " share one position");
  const auto [vmin, vmax] = std::minmax_element(values.begin(), values.end());
  const double span = *vmax - *vmin;
  if (span == 0.0)
    throw Error(Errc::TooFewTicks, "all tick labels on the " + std::string(to_string(side)) +
                                       " carry the same value");

  const LineFit<double> fit = fit_line<double>(positions, values);
  AxisCalibration cal;
  cal.side = side;
  cal.slope = fit.slope;
  cal.intercept = fit.intercept;
  cal.rms_residual = fit.rms_residual;
  cal.n_ticks = static_cast<int>(pairs.size());
  cal.value_span = span;
  // Reading direction is rightward for x and upward (decreasing device y) for y.
  cal.reversed = side == AxisSide::X ? fit.slope < 0.0 : fit.slope > 0.0;

  if (!(fit.rms_residual <= options.residual_fraction * span) || fit.slope == 0.0)
    throw Error(Errc::NonlinearScale,
                "tick ladder on the " + std::string(to_string(side)) +
                    " is not linear (rms residual " + std::to_string(fit.rms_residual) +
                    " on value span " + std::to_string(span) + ")");
  return cal;
}

}  // namespace svgscatter
