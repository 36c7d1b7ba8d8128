#include "rule9/text.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>

#include "rule9/errors.hpp"

namespace rule9::text {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n");
  return s.substr(first, last - first + 1);
}

std::string lower(std::string_view s) {
  std::string out(s);
  std::transform(out.begin(), out.end(), out.begin(), [](unsigned char c) { return std::tolower(c); });
  return out;
}

std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    const auto pos = s.find(sep, start);
    if (pos == std::string_view::npos) {
      out.push_back(s.substr(start));
      return out;
    }
    out.push_back(s.substr(start, pos - start));
    start = pos + 1;
  }
}

std::vector<std::string_view> split_lines(std::string_view s) {
  auto lines = split(s, '\n');
  for (auto& l : lines) {
    if (!l.empty() && l.back() == '\r') l.remove_suffix(1);
  }
  if (!lines.empty() && lines.back().empty()) lines.pop_back();
  return lines;
}

double to_double(std::string_view s) {
  const auto t = trim(s);
  double v = 0.0;
  const auto* begin = t.data();
  const auto* end = t.data() + t.size();
  if (!t.empty() && *begin == '+') ++begin;
  auto [ptr, ec] = std::from_chars(begin, end, v);
  if (t.empty() || ec != std::errc{} || ptr != end || !std::isfinite(v)) {
    throw ParseError("not a number: '" + std::string(t) + "'");
  }
  return v;
}

long long to_int(std::string_view s) {
  const auto t = trim(s);
  long long v = 0;
  auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
  if (t.empty() || ec != std::errc{} || ptr != t.data() + t.size()) {
    throw ParseError("not an integer: '" + std::string(t) + "'");
  }
  return v;
}

}  // namespace rule9::text
