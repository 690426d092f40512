#include <sstream>

#include "format.hpp"
#include "svgscatter/svg_model.hpp"

namespace svgscatter {

using detail::shortest;
using detail::xml_escape;

std::string write_svg(const FigureDocument& doc) {
  std::ostringstream out;
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\"";
  if (!doc.canvas.isEmpty()) {
    const Point size = doc.canvas.sizes();
    out << " viewBox=\"" << shortest(doc.canvas.min().x()) << ' '
        << shortest(doc.canvas.min().y()) << ' ' << shortest(size.x()) << ' '
        << shortest(size.y()) << '"';
  }
  out << ">\n";
  for (const auto& c : doc.circles) {
    out << "<circle id=\"" << xml_escape(c.id) << "\" cx=\"" << shortest(c.center.x())
        << "\" cy=\"" << shortest(c.center.y()) << "\" r=\"" << shortest(c.radius) << '"';
    if (!c.stroke_style.empty()) out << " stroke=\"" << xml_escape(c.stroke_style) << '"';
    out << "/>\n";
  }
  for (const auto& s : doc.segments) {
    out << "<line id=\"" << xml_escape(s.id) << "\" x1=\"" << shortest(s.p1.x())
        << "\" y1=\"" << shortest(s.p1.y()) << "\" x2=\"" << shortest(s.p2.x())
        << "\" y2=\"" << shortest(s.p2.y()) << "\"/>\n";
  }
  for (const auto& r : doc.rasters) {
    const Point size = r.bounds.sizes();
    out << "<image id=\"" << xml_escape(r.id) << "\" x=\"" << shortest(r.bounds.min().x())
        << "\" y=\"" << shortest(r.bounds.min().y()) << "\" width=\"" << shortest(size.x())
        << "\" height=\"" << shortest(size.y()) << "\"/>\n";
  }
  for (const auto& t : doc.texts) {
    out << "<text id=\"" << xml_escape(t.id) << "\" x=\"" << shortest(t.anchor.x())
        << "\" y=\"" << shortest(t.anchor.y()) << "\" font-size=\""
        << shortest(t.glyph_height) << "\">" << xml_escape(t.content) << "</text>\n";
  }
  out << "</svg>\n";
  return out.str();
}

}  // namespace svgscatter
