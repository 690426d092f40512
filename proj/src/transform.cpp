#include <cmath>
#include <numbers>
#include <string>
#include <vector>

#include "scan.hpp"
#include "svgscatter/error.hpp"
#include "svgscatter/svg_model.hpp"

namespace svgscatter {

namespace {

Error bad_transform(std::string_view text) {
  return Error(Errc::MalformedXml,
               "unparseable transform: '" + std::string(text) + "'");
}

double deg_to_rad(double deg) { return deg * std::numbers::pi / 180.0; }

}  // namespace

Affine parse_transform(std::string_view text) {
  detail::Scanner s(text);
  Affine result = Affine::Identity();
  while (!s.done()) {
    const std::string_view name = s.identifier();
    if (name.empty() || !s.consume('(')) throw bad_transform(text);
    std::vector<double> args;
    while (auto v = s.number()) {
      args.push_back(*v);
      s.skip_separator();
    }
    if (!s.consume(')')) throw bad_transform(text);

    Affine t = Affine::Identity();
    const std::size_t n = args.size();
    if (name == "matrix" && n == 6) {
      t = make_affine(args[0], args[1], args[2], args[3], args[4], args[5]);
    } else if (name == "translate" && (n == 1 || n == 2)) {
      t = make_affine(1, 0, 0, 1, args[0], n == 2 ? args[1] : 0.0);
    } else if (name == "scale" && (n == 1 || n == 2)) {
      t = make_affine(args[0], 0, 0, n == 2 ? args[1] : args[0], 0, 0);
    } else if (name == "rotate" && (n == 1 || n == 3)) {
      const double r = deg_to_rad(args[0]);
      const double c = std::cos(r);
      const double sn = std::sin(r);
      const Affine rot = make_affine(c, sn, -sn, c, 0, 0);
      if (n == 3) {
        t = make_affine(1, 0, 0, 1, args[1], args[2]) * rot *
            make_affine(1, 0, 0, 1, -args[1], -args[2]);
      } else {
        t = rot;
      }
    } else if (name == "skewX" && n == 1) {
      t = make_affine(1, 0, std::tan(deg_to_rad(args[0])), 1, 0, 0);
    } else if (name == "skewY" && n == 1) {
      t = make_affine(1, std::tan(deg_to_rad(args[0])), 0, 1, 0, 0);
    } else {
      throw bad_transform(text);
    }
    result = result * t;
    s.skip_separator();
  }

  const auto& m = result.linear();
  const double scale = (std::abs(m(0, 0)) + std::abs(m(1, 0))) *
                       (std::abs(m(0, 1)) + std::abs(m(1, 1)));
  if (!result.matrix().allFinite() ||
      std::abs(determinant(result)) <= 1e-12 * scale || scale == 0.0) {
    throw Error(Errc::DegenerateTransform,
                "degenerate transform: '" + std::string(text) + "'");
  }
  return result;
}

}  // namespace svgscatter
