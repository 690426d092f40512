#include <sstream>

#include "format.hpp"
#include "svgscatter/pipeline.hpp"

namespace svgscatter {

using detail::shortest;
using detail::xml_escape;

std::string annotate_svg(std::string_view original, const Overlay& overlay,
                         const PipelineConfig& config) {
  std::size_t close = original.rfind("</svg>");
  if (const auto prefixed = original.rfind("</svg:svg>");
      prefixed != std::string_view::npos &&
      (close == std::string_view::npos || prefixed > close))
    close = prefixed;
  if (close == std::string_view::npos) return std::string(original);

  std::ostringstream out;
  out << "<g id=\"svgscatter-overlay\" fill=\"none\">\n";
  if (overlay.box) {
    const Box& b = overlay.box->interior;
    out << "<rect class=\"plot-box\" x=\"" << shortest(b.min().x()) << "\" y=\""
        << shortest(b.min().y()) << "\" width=\"" << shortest(b.sizes().x())
        << "\" height=\"" << shortest(b.sizes().y()) << "\" stroke=\""
        << xml_escape(config.box_color) << "\" stroke-width=\"1.5\" stroke-dasharray=\"6,3\"/>\n";
  }
  if (overlay.box) {
    const Box& b = overlay.box->interior;
    for (const TickMark& t : overlay.ticks) {
      const bool x = t.side == AxisSide::X;
      const double x1 = x ? t.position : b.min().x() - t.length;
      const double y1 = x ? b.max().y() : t.position;
      const double x2 = x ? t.position : b.min().x();
      const double y2 = x ? b.max().y() + t.length : t.position;
      out << "<line class=\"tick " << to_string(t.side) << "\" x1=\"" << shortest(x1)
          << "\" y1=\"" << shortest(y1) << "\" x2=\"" << shortest(x2) << "\" y2=\""
          << shortest(y2) << "\" stroke=\"" << xml_escape(config.tick_color)
          << "\" stroke-width=\"2\"/>\n";
    }
  }
  for (const TickLabel& l : overlay.labels) {
    const double h = 0.7 * l.glyph_height;
    out << "<rect class=\"label\" x=\"" << shortest(l.anchor.x()) << "\" y=\""
        << shortest(l.anchor.y() - h) << "\" width=\"" << shortest(l.width())
        << "\" height=\"" << shortest(h) << "\" stroke=\"" << xml_escape(config.label_color)
        << "\" stroke-width=\"0.75\" stroke-dasharray=\"2,1\"/>\n";
  }
  for (const CircleGlyph& c : overlay.glyphs) {
    out << "<circle class=\"glyph\" cx=\"" << shortest(c.center.x()) << "\" cy=\""
        << shortest(c.center.y()) << "\" r=\"" << shortest(c.radius * 1.5) << "\" stroke=\""
        << xml_escape(config.glyph_color) << "\" stroke-width=\"0.75\"/>\n";
  }
  out << "</g>\n";

  std::string result(original.substr(0, close));
  result += out.str();
  result += original.substr(close);
  return result;
}

}  // namespace svgscatter
