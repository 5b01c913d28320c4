#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace skyloop {

// Fixed-point decimal rendering, locale-independent by construction ('.'
// separator, no grouping). A rounded -0 is normalized to "0.00".
std::string format_fixed(double value, int decimals = 2);

std::string to_lower(std::string_view s);
std::string trim(std::string_view s);
std::vector<std::string> split_lines(std::string_view text);

bool starts_with(std::string_view s, std::string_view prefix);
bool ends_with(std::string_view s, std::string_view suffix);

// Parses a plain decimal number: optional sign, digits, optional fractional
// part. Rejects exponents, hex, inf/nan and trailing junk.
bool parse_plain_number(std::string_view s, double& out);

// Shortest fixed-notation rendering that parses back bit-exactly.
std::string format_shortest(double value);

std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& content);

}  // namespace skyloop
