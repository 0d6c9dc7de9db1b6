#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "kolmo/error.hpp"
#include "kolmo/io.hpp"

namespace kolmo::io {
namespace {

std::string trim(std::string s) {
    const auto not_space = [](unsigned char c) { return !std::isspace(c) && c != '"'; };
    while (!s.empty() && !not_space(static_cast<unsigned char>(s.back()))) s.pop_back();
    std::size_t i = 0;
    while (i < s.size() && !not_space(static_cast<unsigned char>(s[i]))) ++i;
    return s.substr(i);
}

bool parse_double(const std::string& s, double& out) {
    if (s.empty()) return false;
    const char* first = s.data();
    if (*first == '+') ++first;
    const auto [ptr, ec] = std::from_chars(first, s.data() + s.size(), out);
    return ec == std::errc() && ptr == s.data() + s.size();
}

std::string format_double(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

}  // namespace

CsvColumn parse_csv_column(const std::string& text) {
    CsvColumn out;
    std::istringstream in(text);
    std::string line;
    std::size_t lineno = 0;
    int columns = 0;
    bool seen_data = false;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (trim(line).empty()) continue;

        std::vector<std::string> fields;
        std::stringstream ls(line);
        std::string f;
        while (std::getline(ls, f, ',')) fields.push_back(trim(f));
        if (line.back() == ',') fields.emplace_back();
        if (fields.size() < 1 || fields.size() > 2)
            throw ParseError("line " + std::to_string(lineno) + ": expected 1 or 2 columns, found " +
                             std::to_string(fields.size()));

        double v = 0.0;
        const bool ok = parse_double(fields.back(), v);
        if (!seen_data && !ok && out.values.empty() && columns == 0) {
            columns = static_cast<int>(fields.size());  // header row
            continue;
        }
        if (columns == 0) columns = static_cast<int>(fields.size());
        if (static_cast<int>(fields.size()) != columns)
            throw ParseError("line " + std::to_string(lineno) + ": expected " + std::to_string(columns) +
                             " columns, found " + std::to_string(fields.size()));
        if (!ok) throw ParseError("line " + std::to_string(lineno) + ": '" + fields.back() + "' is not a number");
        if (!std::isfinite(v)) throw ParseError("line " + std::to_string(lineno) + ": non-finite value");
        seen_data = true;
        out.values.push_back(v);
        if (columns == 2) out.labels.push_back(fields.front());
    }
    return out;
}

PriceSeries parse_price_csv(const std::string& text) {
    auto col = parse_csv_column(text);
    return make_price_series(std::move(col.values), std::move(col.labels));
}

ReturnSeries parse_return_csv(const std::string& text) { return make_return_series(parse_csv_column(text).values); }

std::string to_csv(const PriceSeries& prices) {
    std::string out = prices.labels.empty() ? "price\n" : "label,price\n";
    for (std::size_t i = 0; i < prices.size(); ++i) {
        if (!prices.labels.empty()) out += prices.labels[i] + ",";
        out += format_double(prices.values[i]) + "\n";
    }
    return out;
}

std::string to_csv(const ReturnSeries& returns) {
    std::string out = "return\n";
    for (double v : returns.values) out += format_double(v) + "\n";
    return out;
}

std::string to_csv(const IntegerSeries& series, const std::string& header) {
    std::string out = header + "\n";
    for (auto v : series.values) out += std::to_string(v) + "\n";
    return out;
}

std::string read_text_file(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw UsageError("cannot open '" + path + "'");
    std::ostringstream ss;
    ss << f.rdbuf();
    return ss.str();
}

std::vector<std::uint8_t> read_binary_file(const std::string& path) {
    const auto s = read_text_file(path);
    return {s.begin(), s.end()};
}

void write_file(const std::string& path, const std::string& text) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw UsageError("cannot write '" + path + "'");
    f << text;
}

void write_file(const std::string& path, const std::vector<std::uint8_t>& bytes) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw UsageError("cannot write '" + path + "'");
    f.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
}

}  // namespace kolmo::io
