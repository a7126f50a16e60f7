#pragma once

// Locale-independent number formatting and small text parsers for the CLI.

#include <charconv>
#include <cmath>
#include <cstdint>
#include <ostream>
#include <string>
#include <string_view>
#include <system_error>
#include <vector>

#include "hhl_lab/error.hpp"

namespace hhl_lab::io {

inline constexpr int kSchemaVersion = 1;

#ifdef HHL_LAB_VERSION
inline constexpr std::string_view kArtifactVersion = HHL_LAB_VERSION;
#else
inline constexpr std::string_view kArtifactVersion = "0.1.0";
#endif

/// 17 significant digits, '.' separator; NaN becomes the empty string.
inline std::string format_double(double x) {
  if (std::isnan(x)) return {};
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, x, std::chars_format::general, 17);
  return std::string(buf, res.ptr);
}

inline std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.remove_suffix(1);
  return s;
}

inline double parse_double(std::string_view text) {
  text = trim(text);
  double v = 0.0;
  const auto res = std::from_chars(text.data(), text.data() + text.size(), v);
  if (res.ec != std::errc{} || res.ptr != text.data() + text.size()) {
    throw Error(ErrorKind::ConfigError, "not a number: '" + std::string(text) + "'");
  }
  return v;
}

inline long long parse_int(std::string_view text) {
  text = trim(text);
  long long v = 0;
  const auto res = std::from_chars(text.data(), text.data() + text.size(), v);
  if (res.ec != std::errc{} || res.ptr != text.data() + text.size()) {
    throw Error(ErrorKind::ConfigError, "not an integer: '" + std::string(text) + "'");
  }
  return v;
}

inline std::vector<std::string_view> split(std::string_view text, char sep = ',') {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    const auto pos = text.find(sep, start);
    out.push_back(trim(text.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start)));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

inline std::vector<double> parse_double_list(std::string_view text) {
  std::vector<double> out;
  for (auto part : split(text)) out.push_back(parse_double(part));
  return out;
}

inline std::vector<int> parse_int_list(std::string_view text) {
  std::vector<int> out;
  for (auto part : split(text)) out.push_back(static_cast<int>(parse_int(part)));
  return out;
}

/// Comma-separated rows with '\n' endings and formatted numbers.
class CsvWriter {
 public:
  explicit CsvWriter(std::ostream& os) : os_(os) {}

  void comment(std::string_view text) { os_ << "# " << text << '\n'; }

  void header(const std::vector<std::string>& cols) {
    for (std::size_t i = 0; i < cols.size(); ++i) os_ << (i ? "," : "") << cols[i];
    os_ << '\n';
  }

  template <class... Cells>
  void row(const Cells&... cells) {
    bool first = true;
    ((os_ << (first ? "" : ",") << cell(cells), first = false), ...);
    os_ << '\n';
  }

 private:
  static std::string cell(double x) { return format_double(x); }
  static std::string cell(const std::string& s) { return s; }
  static std::string cell(const char* s) { return s; }
  template <std::integral I>
  static std::string cell(I v) {
    return std::to_string(v);
  }

  std::ostream& os_;
};

}  // namespace hhl_lab::io
