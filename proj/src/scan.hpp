#pragma once

#include <charconv>
#include <cctype>
#include <optional>
#include <string_view>

namespace svgscatter::detail {

/// Cursor over SVG attribute micro-syntax (numbers separated by whitespace
/// and/or commas).
class Scanner {
 public:
  explicit Scanner(std::string_view text) : text_(text) {}

  bool done() {
    skip_space();
    return pos_ >= text_.size();
  }

  std::size_t position() const { return pos_; }

  void skip_space() {
    while (pos_ < text_.size() && is_space(text_[pos_])) ++pos_;
  }

  void skip_separator() {
    skip_space();
    if (pos_ < text_.size() && text_[pos_] == ',') ++pos_;
    skip_space();
  }

  std::optional<char> peek() {
    skip_space();
    if (pos_ >= text_.size()) return std::nullopt;
    return text_[pos_];
  }

  char take() { return text_[pos_++]; }

  bool consume(char c) {
    skip_space();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  /// True when the next token begins a number.
  bool at_number() {
    skip_space();
    if (pos_ >= text_.size()) return false;
    const char c = text_[pos_];
    return std::isdigit(static_cast<unsigned char>(c)) || c == '.' ||
           c == '-' || c == '+';
  }

  std::optional<double> number() {
    skip_space();
    std::size_t p = pos_;
    bool negative = false;
    if (p < text_.size() && (text_[p] == '+' || text_[p] == '-')) {
      negative = text_[p] == '-';
      ++p;
    }
    if (p >= text_.size()) return std::nullopt;
    const char c = text_[p];
    if (!std::isdigit(static_cast<unsigned char>(c)) && c != '.')
      return std::nullopt;
    double value = 0.0;
    auto [end, ec] = std::from_chars(text_.data() + p,
                                     text_.data() + text_.size(), value,
                                     std::chars_format::general);
    if (ec != std::errc()) return std::nullopt;
    pos_ = static_cast<std::size_t>(end - text_.data());
    return negative ? -value : value;
  }

  /// Path flags are single '0'/'1' characters that may be unseparated.
  std::optional<bool> flag() {
    skip_space();
    if (pos_ >= text_.size()) return std::nullopt;
    const char c = text_[pos_];
    if (c != '0' && c != '1') return std::nullopt;
    ++pos_;
    return c == '1';
  }

  std::string_view identifier() {
    skip_space();
    std::size_t start = pos_;
    while (pos_ < text_.size() &&
           (std::isalpha(static_cast<unsigned char>(text_[pos_])) ||
            text_[pos_] == '-'))
      ++pos_;
    return text_.substr(start, pos_ - start);
  }

 private:
  static bool is_space(char c) {
    return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f';
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

/// Parses a whole string as one number, ignoring a trailing unit suffix
/// such as "px" or "pt". Returns nullopt for empty or non-numeric text.
inline std::optional<double> parse_length(std::string_view text) {
  Scanner s(text);
  auto v = s.number();
  return v;
}

}  // namespace svgscatter::detail
