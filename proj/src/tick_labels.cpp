#include <cctype>
#include <charconv>
#include <cmath>
#include <string>

#include "svgscatter/axis_detection.hpp"

namespace svgscatter {

namespace {

constexpr std::string_view kUnicodeMinus = "\xE2\x88\x92";  // U+2212

bool is_digit(char c) { return std::isdigit(static_cast<unsigned char>(c)) != 0; }

bool is_blank(char c) {
  return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' || c == '\v';
}

/// Consumes a sign if present; returns false when nothing matched.
bool take_minus(std::string_view& s) {
  if (!s.empty() && s.front() == '-') {
    s.remove_prefix(1);
    return true;
  }
  if (s.starts_with(kUnicodeMinus)) {
    s.remove_prefix(kUnicodeMinus.size());
    return true;
  }
  return false;
}

std::size_t take_digits(std::string_view& s, std::string& out) {
  std::size_t n = 0;
  while (!s.empty() && is_digit(s.front())) {
    out += s.front();
    s.remove_prefix(1);
    ++n;
  }
  return n;
}

}  // namespace

std::optional<TickLabel> parse_numeric_label(const TextRun& run) {
  std::string_view s = run.content;
  while (!s.empty() && is_blank(s.front())) s.remove_prefix(1);
  while (!s.empty() && is_blank(s.back())) s.remove_suffix(1);

  std::string ascii;
  if (take_minus(s)) ascii += '-';

  std::size_t digits = take_digits(s, ascii);
  if (!s.empty() && s.front() == '.') {
    ascii += '.';
    s.remove_prefix(1);
    digits += take_digits(s, ascii);
  }
  if (digits == 0) return std::nullopt;

  if (!s.empty() && (s.front() == 'e' || s.front() == 'E')) {
    ascii += 'e';
    s.remove_prefix(1);
    if (take_minus(s)) {
      ascii += '-';
    } else if (!s.empty() && s.front() == '+') {
      s.remove_prefix(1);
    }
    if (take_digits(s, ascii) == 0) return std::nullopt;
  }

  bool percent = false;
  if (!s.empty() && s.front() == '%') {
    percent = true;
    s.remove_prefix(1);
  }
  if (!s.empty()) return std::nullopt;

  double value = 0.0;
  const char* first = ascii.data();
  const char* last = ascii.data() + ascii.size();
  auto [end, ec] = std::from_chars(first, last, value);
  if (ec != std::errc() || end != last) return std::nullopt;
  if (percent) value /= 100.0;
  if (!std::isfinite(value)) return std::nullopt;

  TickLabel label;
  label.value = value;
  label.anchor = run.anchor;
  label.raw = std::string(run.content);
  label.glyph_height = run.glyph_height;
  return label;
}

}  // namespace svgscatter
