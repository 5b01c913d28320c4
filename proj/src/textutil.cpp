#include "skyloop/textutil.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace skyloop {

std::string format_fixed(double value, int decimals) {
    if (decimals < 0) decimals = 0;
    double scale = 1.0;
    for (int i = 0; i < decimals; ++i) scale *= 10.0;
    // Round half away from zero on the scaled value, then print via integer
    // math so the result cannot depend on the process locale.
    double scaled = value * scale;
    long long units = static_cast<long long>(std::llround(scaled));
    bool negative = units < 0;
    unsigned long long mag = negative ? static_cast<unsigned long long>(-(units + 1)) + 1ULL
                                      : static_cast<unsigned long long>(units);
    unsigned long long div = 1;
    for (int i = 0; i < decimals; ++i) div *= 10ULL;
    unsigned long long whole = mag / div;
    unsigned long long frac = mag % div;

    std::string out;
    if (negative && mag != 0) out.push_back('-');
    out += std::to_string(whole);
    if (decimals > 0) {
        std::string f = std::to_string(frac);
        out.push_back('.');
        out.append(static_cast<size_t>(decimals) - f.size(), '0');
        out += f;
    }
    return out;
}

std::string to_lower(std::string_view s) {
    std::string out(s);
    for (char& c : out) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    return out;
}

std::string trim(std::string_view s) {
    size_t b = 0;
    size_t e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
    return std::string(s.substr(b, e - b));
}

std::vector<std::string> split_lines(std::string_view text) {
    std::vector<std::string> lines;
    size_t start = 0;
    while (start <= text.size()) {
        size_t nl = text.find('\n', start);
        if (nl == std::string_view::npos) {
            lines.emplace_back(text.substr(start));
            break;
        }
        std::string line(text.substr(start, nl - start));
        if (!line.empty() && line.back() == '\r') line.pop_back();
        lines.push_back(std::move(line));
        start = nl + 1;
    }
    if (!lines.empty() && !lines.back().empty() && lines.back().back() == '\r') {
        lines.back().pop_back();
    }
    return lines;
}

bool starts_with(std::string_view s, std::string_view prefix) {
    return s.size() >= prefix.size() && s.substr(0, prefix.size()) == prefix;
}

bool ends_with(std::string_view s, std::string_view suffix) {
    return s.size() >= suffix.size() && s.substr(s.size() - suffix.size()) == suffix;
}

bool parse_plain_number(std::string_view s, double& out) {
    if (s.empty()) return false;
    size_t i = 0;
    if (s[0] == '+') i = 1;  // from_chars rejects an explicit plus
    if (i >= s.size()) return false;
    double value = 0.0;
    auto res = std::from_chars(s.data() + i, s.data() + s.size(), value, std::chars_format::fixed);
    if (res.ec != std::errc{} || res.ptr != s.data() + s.size()) return false;
    if (!std::isfinite(value)) return false;
    out = value;
    return true;
}

std::string format_shortest(double value) {
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof(buf), value, std::chars_format::fixed);
    if (res.ec != std::errc{}) return format_fixed(value, 6);
    return std::string(buf, res.ptr);
}

std::string read_text_file(const std::string& path) {
    std::ifstream ifs(path, std::ios::binary);
    if (!ifs) throw std::runtime_error("cannot open file: " + path);
    std::ostringstream ss;
    ss << ifs.rdbuf();
    return ss.str();
}

void write_text_file(const std::string& path, const std::string& content) {
    std::ofstream ofs(path, std::ios::binary | std::ios::trunc);
    if (!ofs) throw std::runtime_error("cannot write file: " + path);
    ofs << content;
}

}  // namespace skyloop
