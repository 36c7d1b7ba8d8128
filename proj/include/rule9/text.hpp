#pragma once

#include <string>
#include <string_view>
#include <vector>

// Small string helpers shared by the CSV and config readers.
namespace rule9::text {

std::string_view trim(std::string_view s);
std::string lower(std::string_view s);
std::vector<std::string_view> split(std::string_view s, char sep);
std::vector<std::string_view> split_lines(std::string_view s);

/// Whole-field numeric parse; throws ParseError on junk or non-finite values.
double to_double(std::string_view s);
long long to_int(std::string_view s);

}  // namespace rule9::text
