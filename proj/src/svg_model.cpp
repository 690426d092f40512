#include <algorithm>
#include <cmath>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <Eigen/SVD>
#include <boost/property_tree/ptree.hpp>
#include <boost/property_tree/xml_parser.hpp>

#include "scan.hpp"
#include "svgscatter/error.hpp"
#include "svgscatter/svg_model.hpp"

namespace svgscatter {

namespace {

namespace pt = boost::property_tree;

constexpr std::string_view kAttrKey = "<xmlattr>";
constexpr std::string_view kTextKey = "<xmltext>";

std::string_view local_name(std::string_view name) {
  const auto colon = name.find(':');
  return colon == std::string_view::npos ? name : name.substr(colon + 1);
}

bool is_foreign(std::string_view name) {
  const auto colon = name.find(':');
  return colon != std::string_view::npos && name.substr(0, colon) != "svg";
}

std::optional<std::string> attribute(const pt::ptree& node, std::string_view name) {
  const auto attrs = node.find(std::string(kAttrKey));
  if (attrs == node.not_found()) return std::nullopt;
  for (const auto& [key, value] : attrs->second)
    if (key == name) return value.data();
  return std::nullopt;
}

/// Looks a presentation property up in `style` first, then as an attribute.
std::optional<std::string> property(const pt::ptree& node, std::string_view name) {
  if (auto style = attribute(node, "style")) {
    std::string_view s = *style;
    while (!s.empty()) {
      const auto semi = s.find(';');
      std::string_view decl = s.substr(0, semi);
      const auto colon = decl.find(':');
      if (colon != std::string_view::npos) {
        auto key = decl.substr(0, colon);
        auto val = decl.substr(colon + 1);
        while (!key.empty() && key.front() == ' ') key.remove_prefix(1);
        while (!key.empty() && key.back() == ' ') key.remove_suffix(1);
        while (!val.empty() && val.front() == ' ') val.remove_prefix(1);
        while (!val.empty() && val.back() == ' ') val.remove_suffix(1);
        if (key == name) return std::string(val);
      }
      if (semi == std::string_view::npos) break;
      s.remove_prefix(semi + 1);
    }
  }
  return attribute(node, name);
}

std::optional<double> number_attr(const pt::ptree& node, std::string_view name) {
  auto text = attribute(node, name);
  if (!text) return std::nullopt;
  return detail::parse_length(*text);
}

std::vector<double> number_list(const pt::ptree& node, std::string_view name) {
  std::vector<double> out;
  auto text = attribute(node, name);
  if (!text) return out;
  detail::Scanner s(*text);
  while (auto v = s.number()) {
    out.push_back(*v);
    s.skip_separator();
  }
  return out;
}

enum class TextAnchor { Start, Middle, End };

struct Context {
  Affine transform = Affine::Identity();
  double font_size = 16.0;
  TextAnchor anchor = TextAnchor::Start;
};

/// Accumulates one text element's glyph runs while its subtree is walked.
struct TextCursor {
  std::string id;
  std::vector<TextRun>* out = nullptr;
  int emitted = 0;

  bool open = false;
  Point local = Point::Zero();
  Affine transform = Affine::Identity();
  double font_size = 0.0;
  TextAnchor anchor = TextAnchor::Start;
  std::string content;

  void flush() {
    if (!open) return;
    open = false;
    if (content.find_first_not_of(" \t") == std::string::npos) {
      content.clear();
      return;
    }
    const double width = kGlyphAdvance * font_size *
                         static_cast<double>(utf8_length(content));
    Point start = local;
    if (anchor == TextAnchor::Middle) start.x() -= 0.5 * width;
    if (anchor == TextAnchor::End) start.x() -= width;
    TextRun run;
    run.id = emitted == 0 ? id : id + "." + std::to_string(emitted);
    ++emitted;
    run.anchor = transform * start;
    run.content = std::move(content);
    run.glyph_height = font_size * area_scale(transform);
    out->push_back(std::move(run));
    content.clear();
  }

  void start(const Point& p, const Context& ctx) {
    flush();
    open = true;
    local = p;
    transform = ctx.transform;
    font_size = ctx.font_size;
    anchor = ctx.anchor;
  }
};

class SvgReader {
 public:
  explicit SvgReader(const SvgOptions& options) : options_(options) {}

  FigureDocument read(std::string_view bytes) {
    pt::ptree tree;
    try {
      std::istringstream in{std::string(bytes)};
      pt::read_xml(in, tree, pt::xml_parser::no_concat_text | pt::xml_parser::no_comments);
    } catch (const pt::xml_parser_error& e) {
      throw Error(Errc::MalformedXml, std::string("malformed XML: ") + e.what());
    }

    const pt::ptree* root = nullptr;
    std::string root_name;
    for (const auto& [key, child] : tree) {
      if (!key.empty() && key.front() == '<') continue;
      root = &child;
      root_name = key;
      break;
    }
    if (!root) throw Error(Errc::MalformedXml, "document has no root element");
    if (local_name(root_name) != "svg")
      throw Error(Errc::NotSvg, "root element is <" + root_name + ">, not <svg>");

    bool have_canvas = read_canvas(*root);
    Context ctx;
    apply_presentation(*root, ctx);
    walk_children(*root, ctx);

    if (have_canvas) {
      discard_out_of_canvas();
    } else {
      doc_.canvas = content_bounds();
    }
    return std::move(doc_);
  }

 private:
  bool read_canvas(const pt::ptree& root) {
    if (auto vb = attribute(root, "viewBox")) {
      detail::Scanner s(*vb);
      std::vector<double> v;
      while (auto n = s.number()) {
        v.push_back(*n);
        s.skip_separator();
      }
      if (v.size() == 4 && v[2] > 0 && v[3] > 0) {
        doc_.canvas = Box(Point(v[0], v[1]), Point(v[0] + v[2], v[1] + v[3]));
        return true;
      }
      warn("ignored malformed viewBox '" + *vb + "'");
    }
    auto w = number_attr(root, "width");
    auto h = number_attr(root, "height");
    if (w && h && *w > 0 && *h > 0) {
      doc_.canvas = Box(Point(0, 0), Point(*w, *h));
      return true;
    }
    return false;
  }

  void warn(std::string message) { doc_.warnings.push_back(std::move(message)); }

  std::string element_id(const pt::ptree& node, std::string_view name) {
    if (auto id = attribute(node, "id"); id && !id->empty()) return *id;
    return std::string(name) + "#" + std::to_string(counters_[std::string(name)]++);
  }

  void apply_presentation(const pt::ptree& node, Context& ctx) {
    if (auto t = attribute(node, "transform")) ctx.transform = ctx.transform * parse_transform(*t);
    if (auto fs = property(node, "font-size")) {
      if (auto v = detail::parse_length(*fs); v && *v > 0) ctx.font_size = *v;
    }
    if (auto ta = property(node, "text-anchor")) {
      if (*ta == "middle") ctx.anchor = TextAnchor::Middle;
      else if (*ta == "end") ctx.anchor = TextAnchor::End;
      else if (*ta == "start") ctx.anchor = TextAnchor::Start;
    }
  }

  void walk_children(const pt::ptree& node, const Context& ctx) {
    for (const auto& [key, child] : node) {
      if (key.empty() || key.front() == '<') continue;
      if (is_foreign(key)) continue;
      element(local_name(key), child, ctx);
    }
  }

  void element(std::string_view name, const pt::ptree& node, const Context& parent) {
    static constexpr std::string_view kSilent[] = {
        "defs", "symbol", "clipPath", "mask", "pattern", "marker",
        "linearGradient", "radialGradient", "filter", "title", "desc",
        "metadata", "script", "font", "font-face"};
    if (std::find(std::begin(kSilent), std::end(kSilent), name) != std::end(kSilent))
      return;

    Context ctx = parent;
    apply_presentation(node, ctx);

    if (name == "g" || name == "a" || name == "switch") {
      walk_children(node, ctx);
    } else if (name == "svg") {
      const double x = number_attr(node, "x").value_or(0.0);
      const double y = number_attr(node, "y").value_or(0.0);
      ctx.transform = ctx.transform * make_affine(1, 0, 0, 1, x, y);
      walk_children(node, ctx);
    } else if (name == "circle") {
      const double r = number_attr(node, "r").value_or(0.0);
      round_shape(name, node, ctx, r, r);
    } else if (name == "ellipse") {
      const double rx = number_attr(node, "rx").value_or(0.0);
      const double ry = number_attr(node, "ry").value_or(0.0);
      round_shape(name, node, ctx, rx, ry);
    } else if (name == "line") {
      line(node, ctx);
    } else if (name == "rect") {
      rect(node, ctx);
    } else if (name == "polyline" || name == "polygon") {
      poly(name, node, ctx);
    } else if (name == "path") {
      path(node, ctx);
    } else if (name == "image") {
      image(node, ctx);
    } else if (name == "text") {
      TextCursor cursor;
      cursor.id = element_id(node, name);
      cursor.out = &doc_.texts;
      cursor.start(Point(0, 0), ctx);
      text_content(node, ctx, cursor);
      cursor.flush();
    } else if (name == "use") {
      warn("skipped <use> " + element_id(node, name) + ": indirection unsupported");
    } else if (name == "style") {
      warn("ignored <style>: CSS stylesheets unsupported");
    } else {
      warn("skipped unsupported element <" + std::string(name) + ">");
    }
  }

  void round_shape(std::string_view name, const pt::ptree& node, const Context& ctx,
                   double rx, double ry) {
    const std::string id = element_id(node, name);
    if (!(rx > 0) || !(ry > 0) || !std::isfinite(rx) || !std::isfinite(ry)) {
      warn("skipped " + id + ": non-positive radius");
      return;
    }
    // Radii of the transformed shape are the singular values of
    // linear * diag(rx, ry).
    const Eigen::Matrix2d m = ctx.transform.linear() * Eigen::Vector2d(rx, ry).asDiagonal();
    const Eigen::Vector2d sv = Eigen::JacobiSVD<Eigen::Matrix2d>(m).singularValues();
    if ((sv(0) - sv(1)) / sv(0) > options_.ellipse_tolerance) {
      warn("skipped " + id + ": elongated ellipse");
      return;
    }
    CircleGlyph c;
    c.id = id;
    const Point center(number_attr(node, "cx").value_or(0.0),
                       number_attr(node, "cy").value_or(0.0));
    c.center = ctx.transform * center;
    c.radius = rx == ry ? rx * area_scale(ctx.transform)
                        : std::sqrt(rx * ry) * area_scale(ctx.transform);
    if (auto style = attribute(node, "style")) c.stroke_style = *style;
    else if (auto stroke = attribute(node, "stroke")) c.stroke_style = *stroke;
    doc_.circles.push_back(std::move(c));
  }

  void add_segment(std::string id, const Point& a, const Point& b) {
    SegmentGlyph s;
    s.id = std::move(id);
    s.p1 = a;
    s.p2 = b;
    doc_.segments.push_back(std::move(s));
  }

  void line(const pt::ptree& node, const Context& ctx) {
    const std::string id = element_id(node, "line");
    const Point a = ctx.transform * Point(number_attr(node, "x1").value_or(0.0),
                                          number_attr(node, "y1").value_or(0.0));
    const Point b = ctx.transform * Point(number_attr(node, "x2").value_or(0.0),
                                          number_attr(node, "y2").value_or(0.0));
    if (a == b) {
      warn("skipped " + id + ": zero-length line");
      return;
    }
    add_segment(id, a, b);
  }

  void rect(const pt::ptree& node, const Context& ctx) {
    const std::string id = element_id(node, "rect");
    const double x = number_attr(node, "x").value_or(0.0);
    const double y = number_attr(node, "y").value_or(0.0);
    const double w = number_attr(node, "width").value_or(0.0);
    const double h = number_attr(node, "height").value_or(0.0);
    if (!(w > 0) || !(h > 0)) {
      warn("skipped " + id + ": empty rect");
      return;
    }
    const Point corners[4] = {ctx.transform * Point(x, y), ctx.transform * Point(x + w, y),
                              ctx.transform * Point(x + w, y + h),
                              ctx.transform * Point(x, y + h)};
    for (int i = 0; i < 4; ++i)
      add_segment(id + "." + std::to_string(i), corners[i], corners[(i + 1) % 4]);
  }

  void poly(std::string_view name, const pt::ptree& node, const Context& ctx) {
    const std::string id = element_id(node, name);
    const std::vector<double> v = number_list(node, "points");
    std::vector<Point> pts;
    for (std::size_t i = 0; i + 1 < v.size(); i += 2)
      pts.push_back(ctx.transform * Point(v[i], v[i + 1]));
    if (name == "polygon" && pts.size() > 2) pts.push_back(pts.front());
    int k = 0;
    for (std::size_t i = 0; i + 1 < pts.size(); ++i)
      if (pts[i] != pts[i + 1]) add_segment(id + "." + std::to_string(k++), pts[i], pts[i + 1]);
    if (k == 0) warn("skipped " + id + ": no drawable segment");
  }

  void path(const pt::ptree& node, const Context& ctx) {
    const std::string id = element_id(node, "path");
    const std::string d = attribute(node, "d").value_or("");
    try {
      auto segs = flatten_path(d, ctx.transform, options_, &doc_.warnings, id);
      for (auto& s : segs) doc_.segments.push_back(std::move(s));
    } catch (const Error& e) {
      warn("skipped " + id + ": " + e.what());
    }
  }

  void image(const pt::ptree& node, const Context& ctx) {
    const std::string id = element_id(node, "image");
    const double x = number_attr(node, "x").value_or(0.0);
    const double y = number_attr(node, "y").value_or(0.0);
    const double w = number_attr(node, "width").value_or(0.0);
    const double h = number_attr(node, "height").value_or(0.0);
    if (!(w > 0) || !(h > 0)) {
      warn("skipped " + id + ": image without positive size");
      return;
    }
    Box bounds;
    for (const Point& p : {Point(x, y), Point(x + w, y), Point(x, y + h), Point(x + w, y + h)})
      bounds.extend(ctx.transform * p);
    doc_.rasters.push_back(RasterGlyph{id, bounds});
  }

  /// Walks a <text> or <tspan>. Explicit x/y lists position successive
  /// glyphs; a positioned glyph starts a new run.
  void text_content(const pt::ptree& node, const Context& ctx, TextCursor& cursor) {
    const std::vector<double> xs = number_list(node, "x");
    const std::vector<double> ys = number_list(node, "y");
    std::size_t glyph = 0;

    for (const auto& [key, child] : node) {
      if (key == kTextKey) {
        std::string data = child.data();
        if (data.find_first_not_of(" \t\r\n") == std::string::npos &&
            data.find('\n') != std::string::npos)
          continue;  // indentation between elements
        for (char& c : data)
          if (c == '\n' || c == '\r' || c == '\t') c = ' ';
        std::size_t i = 0;
        while (i < data.size()) {
          std::size_t len = 1;
          const auto lead = static_cast<unsigned char>(data[i]);
          if (lead >= 0xF0) len = 4;
          else if (lead >= 0xE0) len = 3;
          else if (lead >= 0xC0) len = 2;
          if (glyph < xs.size() || glyph < ys.size()) {
            Point p = cursor.open ? cursor.local : Point(0, 0);
            if (glyph < xs.size()) p.x() = xs[glyph];
            if (glyph < ys.size()) p.y() = ys[glyph];
            cursor.start(p, ctx);
          } else if (!cursor.open) {
            cursor.start(cursor.local, ctx);
          }
          cursor.content.append(data, i, len);
          i += len;
          ++glyph;
        }
      } else if (!key.empty() && key.front() != '<') {
        const std::string_view name = local_name(key);
        if (is_foreign(key) || name != "tspan") continue;
        if (glyph < xs.size() || glyph < ys.size()) {
          // Our position for this glyph still holds where the child does not override it.
          Point p = cursor.open ? cursor.local : Point(0, 0);
          if (glyph < xs.size()) p.x() = xs[glyph];
          if (glyph < ys.size()) p.y() = ys[glyph];
          cursor.start(p, ctx);
          ++glyph;
        }
        Context inner = ctx;
        apply_presentation(child, inner);
        text_content(child, inner, cursor);
      }
    }
  }

  Box content_bounds() const {
    Box b;
    for (const auto& c : doc_.circles) {
      b.extend(c.center - Point::Constant(c.radius));
      b.extend(c.center + Point::Constant(c.radius));
    }
    for (const auto& s : doc_.segments) {
      b.extend(s.p1);
      b.extend(s.p2);
    }
    for (const auto& r : doc_.rasters) b.extend(r.bounds);
    for (const auto& t : doc_.texts) b.extend(t.anchor);
    return b;
  }

  void discard_out_of_canvas() {
    const Point half = 0.5 * options_.canvas_extent_factor * doc_.canvas.sizes();
    const Box limit(doc_.canvas.center() - half, doc_.canvas.center() + half);
    auto inside = [&](const Point& p) { return p.allFinite() && limit.contains(p); };
    auto drop = [&](auto& items, auto&& ok) {
      auto it = std::stable_partition(items.begin(), items.end(), ok);
      for (auto i = it; i != items.end(); ++i)
        warn("discarded " + i->id + ": outside the canvas extent");
      items.erase(it, items.end());
    };
    drop(doc_.circles, [&](const CircleGlyph& c) { return inside(c.center); });
    drop(doc_.segments, [&](const SegmentGlyph& s) { return inside(s.p1) && inside(s.p2); });
    drop(doc_.rasters, [&](const RasterGlyph& r) {
      return inside(r.bounds.min()) && inside(r.bounds.max());
    });
    drop(doc_.texts, [&](const TextRun& t) { return inside(t.anchor); });
  }

  const SvgOptions& options_;
  FigureDocument doc_;
  std::map<std::string, int> counters_;
};

}  // namespace

FigureDocument parse_svg(std::string_view bytes, const SvgOptions& options) {
  return SvgReader(options).read(bytes);
}

}  // namespace svgscatter
