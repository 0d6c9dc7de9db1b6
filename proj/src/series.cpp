#include "kolmo/series.hpp"

#include <cmath>
#include <string>

#include "kolmo/error.hpp"

namespace kolmo {

PriceSeries make_price_series(std::vector<double> values, std::vector<std::string> labels) {
    if (!labels.empty() && labels.size() != values.size())
        throw SizeError("price labels: expected " + std::to_string(values.size()) + " labels, got " +
                        std::to_string(labels.size()));
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (!(values[i] > 0.0) || !std::isfinite(values[i]))
            throw DomainError("non-positive or non-finite price at index " + std::to_string(i));
    }
    return PriceSeries{std::move(values), std::move(labels)};
}

ReturnSeries make_return_series(std::vector<double> values) {
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (!std::isfinite(values[i]))
            throw DomainError("non-finite return at index " + std::to_string(i));
    }
    return ReturnSeries{std::move(values)};
}

ReturnSeries log_returns(const PriceSeries& prices) {
    const auto& p = prices.values;
    if (p.size() < 2)
        throw SizeError("log_returns: need at least 2 prices, got " + std::to_string(p.size()));
    for (std::size_t i = 0; i < p.size(); ++i) {
        if (!(p[i] > 0.0))
            throw DomainError("log_returns: non-positive price at index " + std::to_string(i));
    }
    ReturnSeries out;
    out.values.reserve(p.size() - 1);
    double prev = std::log(p[0]);
    for (std::size_t i = 1; i < p.size(); ++i) {
        const double cur = std::log(p[i]);
        out.values.push_back(cur - prev);
        prev = cur;
    }
    return out;
}

PriceSeries prices_from_returns(const ReturnSeries& returns, double start) {
    if (!(start > 0.0)) throw DomainError("prices_from_returns: start price must be positive");
    PriceSeries out;
    out.values.reserve(returns.size() + 1);
    out.values.push_back(start);
    double level = std::log(start);
    for (double r : returns.values) {
        level += r;
        out.values.push_back(std::exp(level));
    }
    return out;
}

IntegerSeries first_difference(const IntegerSeries& series) {
    const auto& v = series.values;
    if (v.size() < 2)
        throw SizeError("first_difference: need at least 2 values, got " + std::to_string(v.size()));
    IntegerSeries out;
    out.values.reserve(v.size() - 1);
    for (std::size_t i = 1; i < v.size(); ++i) out.values.push_back(v[i] - v[i - 1]);
    return out;
}

IntegerSeries first_difference(const PriceSeries& series) {
    IntegerSeries ints;
    ints.values.reserve(series.size());
    for (std::size_t i = 0; i < series.size(); ++i) {
        const double x = series.values[i];
        if (std::nearbyint(x) != x || std::fabs(x) > 9.0e15)
            throw DomainError("first_difference: price at index " + std::to_string(i) + " is not integral");
        ints.values.push_back(static_cast<std::int64_t>(x));
    }
    return first_difference(ints);
}

IntegerSeries cumulative_sum(const IntegerSeries& diffs, std::int64_t start) {
    IntegerSeries out;
    out.values.reserve(diffs.size() + 1);
    out.values.push_back(start);
    for (auto d : diffs.values) out.values.push_back(out.values.back() + d);
    return out;
}

IntegerSeries affine_shift(const IntegerSeries& series, std::int64_t offset) {
    IntegerSeries out = series;
    for (auto& v : out.values) v += offset;
    return out;
}

}  // namespace kolmo
