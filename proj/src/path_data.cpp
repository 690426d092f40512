#include <algorithm>
#include <cctype>
#include <cmath>
#include <string>

#include "scan.hpp"
#include "svgscatter/error.hpp"
#include "svgscatter/svg_model.hpp"

namespace svgscatter {

namespace {

double distance_to_line(const Point& p, const Point& a, const Point& b) {
  const Point d = b - a;
  const double len = d.norm();
  if (len == 0.0) return (p - a).norm();
  const double cross = d.x() * (p.y() - a.y()) - d.y() * (p.x() - a.x());
  return std::abs(cross) / len;
}

class PathFlattener {
 public:
  PathFlattener(std::string_view data, const Affine& transform,
                const SvgOptions& options, std::vector<std::string>* warnings,
                std::string_view id_prefix)
      : scan_(data),
        data_(data),
        transform_(transform),
        options_(options),
        warnings_(warnings),
        prefix_(id_prefix) {}

  std::vector<SegmentGlyph> run() {
    char command = 0;
    while (!scan_.done()) {
      const char c = *scan_.peek();
      if (std::isalpha(static_cast<unsigned char>(c))) {
        command = scan_.take();
        if (!started_ && command != 'M' && command != 'm') syntax_error();
        started_ = true;
        if (command == 'Z' || command == 'z') {
          close_path();
          continue;
        }
      } else if (command == 0 || command == 'Z' || command == 'z') {
        syntax_error();
      }
      // Repeated coordinates reuse the last command; a repeated moveto is an
      // implicit lineto.
      step(command);
      if (command == 'M') command = 'L';
      if (command == 'm') command = 'l';
    }
    return std::move(segments_);
  }

 private:
  [[noreturn]] void syntax_error() const {
    throw Error(Errc::PathSyntax,
                "bad path data near offset " +
                    std::to_string(scan_.position()) + ": '" +
                    std::string(data_) + "'");
  }

  double num() {
    auto v = scan_.number();
    if (!v) syntax_error();
    scan_.skip_separator();
    return *v;
  }

  bool flag() {
    auto v = scan_.flag();
    if (!v) syntax_error();
    scan_.skip_separator();
    return *v;
  }

  Point pt(bool relative) {
    const double x = num();
    const double y = num();
    Point p(x, y);
    return relative ? Point(current_ + p) : p;
  }

  void step(char command) {
    const bool rel = std::islower(static_cast<unsigned char>(command));
    switch (std::toupper(static_cast<unsigned char>(command))) {
      case 'M': {
        current_ = pt(rel);
        start_ = current_;
        last_control_ = current_;
        break;
      }
      case 'L':
        line_to(pt(rel));
        break;
      case 'H': {
        const double x = num();
        line_to(Point(rel ? current_.x() + x : x, current_.y()));
        break;
      }
      case 'V': {
        const double y = num();
        line_to(Point(current_.x(), rel ? current_.y() + y : y));
        break;
      }
      case 'C': {
        const Point c1 = pt(rel);
        const Point c2 = pt(rel);
        const Point end = pt(rel);
        curve_to({c1, c2}, end);
        last_control_ = c2;
        break;
      }
      case 'S': {
        const Point c1 = reflected_control(last_was_cubic_);
        const Point c2 = pt(rel);
        const Point end = pt(rel);
        curve_to({c1, c2}, end);
        last_control_ = c2;
        last_was_cubic_ = true;
        return;
      }
      case 'Q': {
        const Point c = pt(rel);
        const Point end = pt(rel);
        curve_to({c}, end);
        last_control_ = c;
        last_was_quad_ = true;
        last_was_cubic_ = false;
        return;
      }
      case 'T': {
        const Point c = reflected_control(last_was_quad_);
        const Point end = pt(rel);
        curve_to({c}, end);
        last_control_ = c;
        last_was_quad_ = true;
        last_was_cubic_ = false;
        return;
      }
      case 'A': {
        const double rx = std::abs(num());
        const double ry = std::abs(num());
        num();  // x-axis rotation
        const bool large_arc = flag();
        flag();  // sweep
        const Point end = pt(rel);
        arc_to(rx, ry, large_arc, end);
        break;
      }
      default:
        syntax_error();
    }
    last_was_cubic_ = std::toupper(static_cast<unsigned char>(command)) == 'C';
    last_was_quad_ = false;
  }

  Point reflected_control(bool previous_matches) const {
    if (!previous_matches) return current_;
    return 2.0 * current_ - last_control_;
  }

  void line_to(const Point& end) {
    emit(current_, end);
    current_ = end;
    last_control_ = end;
  }

  void close_path() {
    emit(current_, start_);
    current_ = start_;
    last_control_ = start_;
    last_was_cubic_ = last_was_quad_ = false;
  }

  void curve_to(std::initializer_list<Point> controls, const Point& end) {
    // Flatness is judged in device space.
    const Point a = transform_ * current_;
    const Point b = transform_ * end;
    double deviation = 0.0;
    for (const Point& c : controls)
      deviation = std::max(deviation, distance_to_line(transform_ * c, a, b));
    if (deviation <= options_.curve_tolerance) {
      emit(current_, end);
    } else {
      warn("curved path piece skipped (control deviation " +
           std::to_string(deviation) + ")");
    }
    current_ = end;
  }

  void arc_to(double rx, double ry, bool large_arc, const Point& end) {
    if (rx == 0.0 || ry == 0.0) {
      line_to(end);
      return;
    }
    const Point a = transform_ * current_;
    const Point b = transform_ * end;
    const double r = std::max(rx, ry) * area_scale(transform_);
    const double half_chord = 0.5 * (b - a).norm();
    double sagitta = r;
    if (!large_arc && half_chord <= r)
      sagitta = r - std::sqrt(r * r - half_chord * half_chord);
    if (sagitta <= options_.curve_tolerance) {
      emit(current_, end);
    } else {
      warn("curved arc skipped (sagitta " + std::to_string(sagitta) + ")");
    }
    current_ = end;
    last_control_ = end;
  }

  void emit(const Point& from, const Point& to) {
    const Point p1 = transform_ * from;
    const Point p2 = transform_ * to;
    if (p1 == p2) return;
    SegmentGlyph seg;
    seg.id = std::string(prefix_) + "." + std::to_string(segments_.size());
    seg.p1 = p1;
    seg.p2 = p2;
    segments_.push_back(std::move(seg));
  }

  void warn(std::string message) {
    if (warnings_) warnings_->push_back(std::string(prefix_) + ": " + message);
  }

  detail::Scanner scan_;
  std::string_view data_;
  const Affine& transform_;
  const SvgOptions& options_;
  std::vector<std::string>* warnings_;
  std::string_view prefix_;

  bool started_ = false;
  Point current_ = Point::Zero();
  Point start_ = Point::Zero();
  Point last_control_ = Point::Zero();
  bool last_was_cubic_ = false;
  bool last_was_quad_ = false;
  std::vector<SegmentGlyph> segments_;
};

}  // namespace

std::vector<SegmentGlyph> flatten_path(std::string_view path_data,
                                       const Affine& transform,
                                       const SvgOptions& options,
                                       std::vector<std::string>* warnings,
                                       std::string_view id_prefix) {
  return PathFlattener(path_data, transform, options, warnings, id_prefix)
      .run();
}

}  // namespace svgscatter
