#include "svgscatter/synth.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <optional>
#include <random>
#include <sstream>

#include "format.hpp"
#include "svgscatter/error.hpp"

namespace svgscatter {

std::string_view to_string(AxisStyle style) noexcept {
  switch (style) {
    case AxisStyle::Standard: return "standard";
    case AxisStyle::ReversedX: return "reversed_x";
    case AxisStyle::ReversedY: return "reversed_y";
    case AxisStyle::LogX: return "log_x";
    case AxisStyle::RasterBody: return "raster_body";
  }
  return "standard";
}

std::optional<AxisStyle> parse_axis_style(std::string_view name) noexcept {
  for (AxisStyle st : {AxisStyle::Standard, AxisStyle::ReversedX, AxisStyle::ReversedY,
                       AxisStyle::LogX, AxisStyle::RasterBody})
    if (name == to_string(st)) return st;
  return std::nullopt;
}

namespace {

using detail::shortest;
using detail::significant;

constexpr double kMarginLeft = 70.0;
constexpr double kMarginRight = 20.0;
constexpr double kMarginTop = 20.0;
constexpr double kMarginBottom = 50.0;
constexpr double kFontSize = 10.0;
constexpr double kTickLength = 5.0;

// 1x1 transparent PNG.
constexpr std::string_view kPixel =
    "data:image/png;base64,iVBORw0KGgoAAAANSUhEUgAAAAEAAAABCAYAAAAfFcSJAAAADUlEQVR42mNk"
    "YPhfDwAChwGA60e6kgAAAABJRU5ErkJggg==";

/// Uniform doubles in [0, 1) from the raw engine output, so results do not
/// depend on the standard library's distribution implementations.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
  int integer(int lo, int hi) {  // inclusive
    return lo + static_cast<int>(uniform() * static_cast<double>(hi - lo + 1));
  }

 private:
  std::mt19937_64 engine_;
};

/// Device coordinates are written with three decimals, like converter output.
std::string coord(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.3f", v);
  return shortest(std::strtod(buf, nullptr));
}

std::string label_text(double v) { return significant(v, 4); }

double read_label(const std::string& text) { return std::strtod(text.c_str(), nullptr); }

struct Ladder {
  std::vector<double> values;   // label values
  std::vector<std::string> text;
};

}  // namespace

void validate(const SyntheticSpec& s) {
  auto fail = [](const std::string& what) { throw Error(Errc::BadConfig, "synthetic spec: " + what); };
  if (s.n_points < 1) fail("n_points must be >= 1");
  if (!(s.x_min < s.x_max)) fail("x_min must be < x_max");
  if (!(s.y_min < s.y_max)) fail("y_min must be < y_max");
  if (s.n_ticks_x < 2 || s.n_ticks_y < 2) fail("tick counts must be >= 2");
  if (!(s.marker_radius > 0)) fail("marker_radius must be > 0");
  if (!(s.width > kMarginLeft + kMarginRight + 50) || !(s.height > kMarginTop + kMarginBottom + 50))
    fail("canvas too small");
  if (s.axis_style == AxisStyle::LogX && !(s.x_min > 0)) fail("log_x needs x_min > 0");
}

SyntheticFigure generate_scatter_svg(const SyntheticSpec& spec) {
  validate(spec);
  Rng rng(spec.seed);

  const double left = kMarginLeft;
  const double right = spec.width - kMarginRight;
  const double top = kMarginTop;
  const double bottom = spec.height - kMarginBottom;
  const double pw = right - left;
  const double ph = bottom - top;

  const bool log_x = spec.axis_style == AxisStyle::LogX;
  const bool rev_x = spec.axis_style == AxisStyle::ReversedX;
  const bool rev_y = spec.axis_style == AxisStyle::ReversedY;

  auto x_frac = [&](double x) {
    const double f = log_x ? (std::log10(x) - std::log10(spec.x_min)) /
                                 (std::log10(spec.x_max) - std::log10(spec.x_min))
                           : (x - spec.x_min) / (spec.x_max - spec.x_min);
    return rev_x ? 1.0 - f : f;
  };
  auto y_frac = [&](double y) {
    const double f = (y - spec.y_min) / (spec.y_max - spec.y_min);
    return rev_y ? 1.0 - f : f;
  };
  auto dev_x = [&](double x) { return left + x_frac(x) * pw; };
  auto dev_y = [&](double y) { return bottom - y_frac(y) * ph; };

  auto ladder = [&](double lo, double hi, int n, bool logarithmic) {
    Ladder l;
    for (int k = 0; k < n; ++k) {
      const double t = static_cast<double>(k) / static_cast<double>(n - 1);
      const double v = logarithmic
                           ? std::pow(10.0, std::log10(lo) + t * (std::log10(hi) - std::log10(lo)))
                           : lo + t * (hi - lo);
      l.text.push_back(label_text(v));
      l.values.push_back(read_label(l.text.back()));
    }
    return l;
  };
  const Ladder xl = ladder(spec.x_min, spec.x_max, spec.n_ticks_x, log_x);
  const Ladder yl = ladder(spec.y_min, spec.y_max, spec.n_ticks_y, false);

  SyntheticFigure fig;
  for (int i = 0; i < spec.n_points; ++i) {
    const double x = log_x ? std::pow(10.0, rng.uniform(std::log10(spec.x_min), std::log10(spec.x_max)))
                           : rng.uniform(spec.x_min, spec.x_max);
    const double y = rng.uniform(spec.y_min, spec.y_max);
    fig.truth.emplace_back(x, y);
  }

  // Page placement varies with the seed so that transform flattening is
  // exercised: some figures sit inside a translated and scaled group.
  const int placement = static_cast<int>(spec.seed % 3);
  const double scale = placement == 2 ? 1.25 : 1.0;
  const double dx = placement == 0 ? 0.0 : 12.5;
  const double dy = placement == 0 ? 0.0 : 7.0;
  const bool framed = spec.seed % 2 == 1;
  // Typeset labels use a Unicode minus sign on even seeds.
  auto display = [&](const std::string& label) {
    if (spec.seed % 2 == 0 && label.starts_with('-')) return "\u2212" + label.substr(1);
    return label;
  };

  std::ostringstream svg;
  svg << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
      << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\""
      << coord(spec.width * scale + 2 * dx) << "\" height=\"" << coord(spec.height * scale + 2 * dy)
      << "\" viewBox=\"0 0 " << coord(spec.width * scale + 2 * dx) << ' '
      << coord(spec.height * scale + 2 * dy) << "\">\n";
  if (placement == 0) {
    svg << "<g>\n";
  } else {
    svg << "<g transform=\"translate(" << coord(dx) << ',' << coord(dy) << ") scale("
        << shortest(scale) << ")\">\n";
  }

  svg << "<g stroke=\"#000000\" stroke-width=\"1\">\n"
      << "<line x1=\"" << coord(left) << "\" y1=\"" << coord(bottom) << "\" x2=\"" << coord(left)
      << "\" y2=\"" << coord(top) << "\"/>\n"
      << "<line x1=\"" << coord(left) << "\" y1=\"" << coord(bottom) << "\" x2=\"" << coord(right)
      << "\" y2=\"" << coord(bottom) << "\"/>\n";
  if (framed) {
    svg << "<path d=\"M " << coord(left) << ' ' << coord(top) << " L " << coord(right) << ' '
        << coord(top) << " L " << coord(right) << ' ' << coord(bottom) << "\" fill=\"none\"/>\n";
  }
  // Tick marks sit at the device position of the label value they carry.
  std::vector<double> xtick_pos;
  for (double v : xl.values) xtick_pos.push_back(dev_x(v));
  for (double px : xtick_pos) {
    svg << "<line x1=\"" << coord(px) << "\" y1=\"" << coord(bottom) << "\" x2=\"" << coord(px)
        << "\" y2=\"" << coord(bottom + kTickLength) << "\"/>\n";
  }
  for (double v : yl.values) {
    const double py = dev_y(v);
    svg << "<line x1=\"" << coord(left - kTickLength) << "\" y1=\"" << coord(py) << "\" x2=\""
        << coord(left) << "\" y2=\"" << coord(py) << "\"/>\n";
  }
  svg << "</g>\n";

  svg << "<g font-family=\"Helvetica\" font-size=\"" << shortest(kFontSize) << "\">\n";
  for (std::size_t k = 0; k < xl.values.size(); ++k) {
    svg << "<text x=\"" << coord(xtick_pos[k]) << "\" y=\""
        << coord(bottom + kTickLength + 3 + 0.7 * kFontSize) << "\" text-anchor=\"middle\">"
        << detail::xml_escape(display(xl.text[k])) << "</text>\n";
  }
  for (std::size_t k = 0; k < yl.values.size(); ++k) {
    svg << "<text x=\"" << coord(left - kTickLength - 3) << "\" y=\""
        << coord(dev_y(yl.values[k]) + 0.35 * kFontSize) << "\" text-anchor=\"end\">"
        << detail::xml_escape(display(yl.text[k])) << "</text>\n";
  }
  svg << "<text x=\"" << coord(left + 0.5 * pw - 30) << "\" y=\"" << coord(spec.height - 8)
      << "\">Effect size</text>\n"
      << "<text transform=\"translate(" << coord(14) << ',' << coord(top + 0.5 * ph + 35)
      << ") rotate(-90)\">Standard error</text>\n"
      << "<text x=\"" << coord(right - 60) << "\" y=\"" << coord(top + 15) << "\">n = "
      << spec.n_points << "</text>\n"
      << "</g>\n";

  if (spec.axis_style == AxisStyle::RasterBody) {
    svg << "<image x=\"" << coord(left) << "\" y=\"" << coord(top) << "\" width=\"" << coord(pw)
        << "\" height=\"" << coord(ph) << "\" preserveAspectRatio=\"none\" href=\"" << kPixel
        << "\"/>\n";
  } else {
    svg << "<g fill=\"none\" stroke=\"#cf1d35\" stroke-width=\".26458\">\n";
    for (const DataXY& p : fig.truth) {
      svg << "<circle cx=\"" << coord(dev_x(p.x())) << "\" cy=\"" << coord(dev_y(p.y()))
          << "\" r=\"" << coord(spec.marker_radius) << "\"/>\n";
    }
    svg << "</g>\n";
  }
  svg << "</g>\n</svg>\n";
  fig.svg = svg.str();
  return fig;
}

SyntheticSpec random_spec(std::uint64_t seed, AxisStyle style) {
  // Offset the stream so spec choices are independent of the point draws.
  Rng rng(seed * 0x9E3779B97F4A7C15ull + 0x5851F42D4C957F2Dull);
  static constexpr double kSteps[] = {0.01, 0.02, 0.05, 0.1, 0.2, 0.25, 0.5,
                                      1,    2,    2.5,  5,   10,  20,  50,  100};
  constexpr int kNumSteps = static_cast<int>(std::size(kSteps));

  SyntheticSpec s;
  s.seed = seed;
  s.axis_style = style;
  s.n_points = rng.integer(4, 50);
  s.width = 500 + 20 * rng.integer(0, 15);
  s.height = 380 + 20 * rng.integer(0, 11);
  s.marker_radius = 1.5 + 0.5 * rng.integer(0, 5);

  auto range = [&](int& n_ticks, double& lo, double& hi) {
    n_ticks = rng.integer(3, 8);
    const double step = kSteps[rng.integer(0, kNumSteps - 1)];
    const int start = rng.integer(-6, 6);
    lo = read_label(significant(step * start, 6)) + 0.0;
    hi = read_label(significant(lo + step * (n_ticks - 1), 6));
  };
  range(s.n_ticks_x, s.x_min, s.x_max);
  range(s.n_ticks_y, s.y_min, s.y_max);

  if (style == AxisStyle::LogX) {
    const int first = rng.integer(-2, 1);
    s.n_ticks_x = rng.integer(3, 5);
    s.x_min = std::pow(10.0, first);
    s.x_max = std::pow(10.0, first + s.n_ticks_x - 1);
  }
  return s;
}

SyntheticSpec parse_synthetic_spec(std::string_view text) {
  SyntheticSpec s;
  std::istringstream in{std::string(text)};
  std::string line;
  int line_no = 0;
  auto fail = [&](const std::string& what) {
    throw Error(Errc::BadConfig, "spec line " + std::to_string(line_no) + ": " + what);
  };
  while (std::getline(in, line)) {
    ++line_no;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    const auto eq = line.find('=');
    auto trim = [](std::string v) {
      const auto a = v.find_first_not_of(" \t\r");
      if (a == std::string::npos) return std::string();
      const auto b = v.find_last_not_of(" \t\r");
      return v.substr(a, b - a + 1);
    };
    if (trim(line).empty()) continue;
    if (eq == std::string::npos) fail("expected key = value");
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));

    if (key == "axis_style") {
      const auto st = parse_axis_style(value);
      if (!st) fail("unknown axis_style '" + value + "'");
      s.axis_style = *st;
      continue;
    }
    double v = 0.0;
    auto [end, ec] = std::from_chars(value.data(), value.data() + value.size(), v);
    if (ec != std::errc() || end != value.data() + value.size()) fail("'" + key + "' needs a number");
    auto as_int = [&] {
      if (v != std::floor(v)) fail("'" + key + "' must be an integer");
      return static_cast<int>(v);
    };
    if (key == "n_points") s.n_points = as_int();
    else if (key == "x_min") s.x_min = v;
    else if (key == "x_max") s.x_max = v;
    else if (key == "y_min") s.y_min = v;
    else if (key == "y_max") s.y_max = v;
    else if (key == "n_ticks_x") s.n_ticks_x = as_int();
    else if (key == "n_ticks_y") s.n_ticks_y = as_int();
    else if (key == "marker_radius") s.marker_radius = v;
    else if (key == "width") s.width = v;
    else if (key == "height") s.height = v;
    else if (key == "seed") s.seed = static_cast<std::uint64_t>(as_int());
    else fail("unknown key '" + key + "'");
  }
  validate(s);
  return s;
}

std::string format_truth_csv(const std::vector<DataXY>& truth) {
  std::string out = "x,y\n";
  for (const DataXY& p : truth) out += shortest(p.x()) + "," + shortest(p.y()) + "\n";
  return out;
}

}  // namespace svgscatter
