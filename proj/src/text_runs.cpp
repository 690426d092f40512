#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "svgscatter/svg_model.hpp"

namespace svgscatter {

std::size_t utf8_length(std::string_view s) {
  std::size_t n = 0;
  for (unsigned char c : s)
    if ((c & 0xC0) != 0x80) ++n;
  return n;
}

namespace {

std::string trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r\n\f\v");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n\f\v");
  return std::string(s.substr(first, last - first + 1));
}

struct Cluster {
  TextRun run;
  double last_glyph_x = 0.0;  // estimated anchor of the rightmost glyph
};

double last_glyph_x(const TextRun& piece, double height) {
  const auto n = utf8_length(piece.content);
  return piece.anchor.x() +
         kGlyphAdvance * height * static_cast<double>(n > 0 ? n - 1 : 0);
}

}  // namespace

std::vector<TextRun> compose_text_runs(std::vector<TextRun> runs,
                                       const SvgOptions& options) {
  std::vector<std::size_t> order(runs.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    if (runs[a].anchor.x() != runs[b].anchor.x())
      return runs[a].anchor.x() < runs[b].anchor.x();
    return runs[a].anchor.y() < runs[b].anchor.y();
  });

  std::vector<Cluster> clusters;
  for (std::size_t idx : order) {
    TextRun& piece = runs[idx];
    Cluster* best = nullptr;
    double best_gap = 0.0;
    for (Cluster& c : clusters) {
      const double h = std::max(c.run.glyph_height, piece.glyph_height);
      if (std::abs(piece.anchor.y() - c.run.anchor.y()) >
          options.text_baseline_tolerance * h)
        continue;
      const double gap = piece.anchor.x() - c.last_glyph_x;
      if (std::abs(gap) > options.text_gap_tolerance * h) continue;
      if (!best || std::abs(gap) < best_gap) {
        best = &c;
        best_gap = std::abs(gap);
      }
    }
    if (best) {
      best->run.content += piece.content;
      best->run.glyph_height = std::max(best->run.glyph_height, piece.glyph_height);
      best->last_glyph_x = last_glyph_x(piece, best->run.glyph_height);
    } else {
      Cluster c;
      c.last_glyph_x = last_glyph_x(piece, piece.glyph_height);
      c.run = std::move(piece);
      clusters.push_back(std::move(c));
    }
  }

  std::vector<TextRun> out;
  out.reserve(clusters.size());
  for (Cluster& c : clusters) {
    c.run.content = trim(c.run.content);
    if (!c.run.content.empty()) out.push_back(std::move(c.run));
  }
  std::stable_sort(out.begin(), out.end(), [](const TextRun& a, const TextRun& b) {
    if (a.anchor.y() != b.anchor.y()) return a.anchor.y() < b.anchor.y();
    return a.anchor.x() < b.anchor.x();
  });
  return out;
}

}  // namespace svgscatter
