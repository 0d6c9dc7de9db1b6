#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace kolmo {

/// Price levels, strictly positive. Labels are optional ordinal tags
/// (dates as read from a CSV) and carry no calendar meaning.
struct PriceSeries {
    std::vector<double> values;
    std::vector<std::string> labels;  // empty or same length as values

    std::size_t size() const noexcept { return values.size(); }
};

/// Continuously compounded returns. All entries finite.
struct ReturnSeries {
    std::vector<double> values;

    std::size_t size() const noexcept { return values.size(); }
};

struct IntegerSeries {
    std::vector<std::int64_t> values;

    std::size_t size() const noexcept { return values.size(); }
    bool operator==(const IntegerSeries&) const = default;
};

/// Validates the positivity invariant; throws DomainError naming the index.
PriceSeries make_price_series(std::vector<double> values, std::vector<std::string> labels = {});

/// Validates finiteness; throws DomainError naming the index.
ReturnSeries make_return_series(std::vector<double> values);

/// r_i = ln(p_{i+1}) - ln(p_i). Requires at least two prices, all positive.
ReturnSeries log_returns(const PriceSeries& prices);

/// Inverse of log_returns given the first price: p_0 = start, p_{i+1} = p_i * exp(r_i).
/// Uses a running log-level so error does not compound multiplicatively.
PriceSeries prices_from_returns(const ReturnSeries& returns, double start);

/// out_i = in_{i+1} - in_i. Keep in_0 to invert with cumulative_sum.
IntegerSeries first_difference(const IntegerSeries& series);

/// Price variant: prices must be integral-valued (the toy series is); throws
/// DomainError otherwise.
IntegerSeries first_difference(const PriceSeries& series);

/// [start, start + d_0, start + d_0 + d_1, ...]; inverse of first_difference.
IntegerSeries cumulative_sum(const IntegerSeries& diffs, std::int64_t start);

IntegerSeries affine_shift(const IntegerSeries& series, std::int64_t offset);

}  // namespace kolmo
