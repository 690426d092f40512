#pragma once

#include <cmath>
#include <numbers>

#include <Eigen/Core>
#include <Eigen/Geometry>

namespace svgscatter {

/// Device-space point. SVG convention: y grows downward.
using Point = Eigen::Vector2d;

/// Axis-aligned rectangle in device units.
using Box = Eigen::AlignedBox2d;

/// 2x3 affine map (x, y) -> (a x + c y + e, b x + d y + f).
using Affine = Eigen::Transform<double, 2, Eigen::AffineCompact>;

inline Affine make_affine(double a, double b, double c, double d, double e,
                          double f) {
  Affine t;
  t.matrix() << a, c, e, b, d, f;
  return t;
}

inline double determinant(const Affine& t) {
  return t.linear().determinant();
}

/// Uniform scale factor of the linear part, sqrt(|det|).
inline double area_scale(const Affine& t) {
  return std::sqrt(std::abs(determinant(t)));
}

template <typename Derived>
bool all_finite(const Eigen::MatrixBase<Derived>& v) {
  return v.allFinite();
}

inline Box make_box(const Point& a, const Point& b) {
  Box box(a.cwiseMin(b), a.cwiseMax(b));
  return box;
}

/// Angle of the direction a->b measured from the device x axis, folded into
/// [0, 90] degrees. 0 means horizontal, 90 vertical.
inline double folded_angle_deg(const Point& a, const Point& b) {
  const Point d = b - a;
  const double deg =
      std::atan2(std::abs(d.y()), std::abs(d.x())) * 180.0 / std::numbers::pi;
  return deg;
}

inline bool is_near_horizontal(const Point& a, const Point& b,
                               double tolerance_deg) {
  return folded_angle_deg(a, b) <= tolerance_deg;
}

inline bool is_near_vertical(const Point& a, const Point& b,
                             double tolerance_deg) {
  return 90.0 - folded_angle_deg(a, b) <= tolerance_deg;
}

/// Area of the intersection of two boxes; zero when they are disjoint.
inline double overlap_area(const Box& a, const Box& b) {
  const Box i = a.intersection(b);
  if (i.isEmpty()) return 0.0;
  return i.volume();
}

}  // namespace svgscatter
