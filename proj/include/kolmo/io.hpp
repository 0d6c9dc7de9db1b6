#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "kolmo/series.hpp"

namespace kolmo::io {

/// One column (value) or two columns (label, value). A first line whose value
/// field does not parse as a number is taken as a header. Blank lines are
/// skipped. Decimal point only. Errors name the 1-based line.
struct CsvColumn {
    std::vector<double> values;
    std::vector<std::string> labels;  // empty for one-column files
};
CsvColumn parse_csv_column(const std::string& text);

PriceSeries parse_price_csv(const std::string& text);
ReturnSeries parse_return_csv(const std::string& text);

std::string to_csv(const PriceSeries& prices);
std::string to_csv(const ReturnSeries& returns);
std::string to_csv(const IntegerSeries& series, const std::string& header = "value");

std::string read_text_file(const std::string& path);
std::vector<std::uint8_t> read_binary_file(const std::string& path);
void write_file(const std::string& path, const std::string& text);
void write_file(const std::string& path, const std::vector<std::uint8_t>& bytes);

}  // namespace kolmo::io
