#include "kolmo/discretize.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>

#include "kolmo/error.hpp"
#include "kolmo/numeric.hpp"

namespace kolmo {
namespace {

std::uint64_t alphabet(int width) {
    if (width < 1 || width > 30) throw RangeError("discretization width must be in [1, 30], got " + std::to_string(width));
    return std::uint64_t{1} << width;
}

std::uint32_t rank_to_symbol(std::uint64_t rank, std::uint64_t n, int width) {
    return static_cast<std::uint32_t>((static_cast<unsigned __int128>(rank) << width) / n);
}

}  // namespace

BoundsTable::BoundsTable(std::vector<double> bounds, int width) : bounds_(std::move(bounds)), width_(width) {
    const auto bins = alphabet(width);
    if (bounds_.size() != bins + 1)
        throw SizeError("bounds table: expected " + std::to_string(bins + 1) + " bounds for width " +
                        std::to_string(width) + ", got " + std::to_string(bounds_.size()));
    for (std::size_t i = 0; i < bounds_.size(); ++i) {
        if (std::isnan(bounds_[i])) throw RangeError("bounds table: NaN at index " + std::to_string(i));
        if (i > 0 && !(bounds_[i] > bounds_[i - 1]))
            throw RangeError("bounds table: not strictly increasing at index " + std::to_string(i));
        if (std::isinf(bounds_[i]) && i != 0 && i + 1 != bounds_.size())
            throw RangeError("bounds table: infinite interior bound at index " + std::to_string(i));
    }
    if (bounds_.front() == std::numeric_limits<double>::infinity() ||
        bounds_.back() == -std::numeric_limits<double>::infinity())
        throw RangeError("bounds table: infinite end with the wrong sign");
}

std::string to_string(Scheme scheme) {
    switch (scheme) {
        case Scheme::equal_width: return "equal_width";
        case Scheme::normal_quantile: return "normal_quantile";
        case Scheme::empirical_quantile: return "empirical_quantile";
        case Scheme::progressive: return "progressive";
    }
    return "?";
}

Scheme scheme_from_string(const std::string& name) {
    std::string n = name;
    std::replace(n.begin(), n.end(), '-', '_');
    if (n == "equal_width") return Scheme::equal_width;
    if (n == "normal_quantile") return Scheme::normal_quantile;
    if (n == "empirical_quantile") return Scheme::empirical_quantile;
    if (n == "progressive") return Scheme::progressive;
    throw UsageError("unknown discretization scheme '" + name + "'");
}

Discretized equal_width_bins(const ReturnSeries& returns, int width) {
    const auto& x = returns.values;
    const auto bins = alphabet(width);
    if (x.size() < 2) throw SizeError("equal_width_bins: need at least 2 returns");
    const auto [lo_it, hi_it] = std::minmax_element(x.begin(), x.end());
    const double m = *lo_it, M = *hi_it;
    if (!(M > m)) throw DomainError("equal_width_bins: constant series (max == min)");

    const double e = (M - m) / static_cast<double>(bins);
    std::vector<double> b(bins + 1);
    for (std::uint64_t i = 0; i <= bins; ++i) b[i] = m + static_cast<double>(i) * e;
    b.back() = M;

    std::vector<std::uint32_t> syms(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double k = std::floor((x[i] - m) / e);
        syms[i] = static_cast<std::uint32_t>(std::clamp(k, 0.0, static_cast<double>(bins - 1)));
    }
    Discretized out{SymbolSeries(std::move(syms), width), {}};
    out.record = {Scheme::equal_width, width, 0, BoundsTable(std::move(b), width)};
    return out;
}

BoundsTable normal_quantile_bounds(int width) {
    const auto bins = alphabet(width);
    std::vector<double> b(bins + 1);
    for (std::uint64_t i = 0; i <= bins; ++i)
        b[i] = numeric::normal_quantile(static_cast<double>(i) / static_cast<double>(bins));
    return BoundsTable(std::move(b), width);
}

SymbolSeries discretize_with_bounds(const ReturnSeries& returns, const BoundsTable& bounds) {
    const auto& b = bounds.bounds();
    std::vector<std::uint32_t> syms(returns.size());
    for (std::size_t i = 0; i < returns.size(); ++i) {
        const double x = returns.values[i];
        if (!(x >= b.front() && x < b.back()))
            throw RangeError("discretize_with_bounds: return at index " + std::to_string(i) +
                             " lies outside the bounds table");
        const auto it = std::upper_bound(b.begin(), b.end(), x);
        syms[i] = static_cast<std::uint32_t>(std::distance(b.begin(), it) - 1);
    }
    return SymbolSeries(std::move(syms), bounds.width());
}

SymbolSeries empirical_quantile_discretize(const ReturnSeries& returns, int width) {
    const auto& x = returns.values;
    const auto bins = alphabet(width);
    if (x.size() < bins)
        throw SizeError("empirical_quantile_discretize: " + std::to_string(x.size()) + " returns for " +
                        std::to_string(bins) + " bins");
    std::vector<std::size_t> order(x.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return x[a] < x[b]; });

    std::vector<std::uint32_t> syms(x.size());
    for (std::size_t rank = 0; rank < order.size(); ++rank)
        syms[order[rank]] = rank_to_symbol(rank, x.size(), width);
    return SymbolSeries(std::move(syms), width);
}

SymbolSeries progressive_discretize(const ReturnSeries& returns, int window, int width) {
    const auto& x = returns.values;
    const auto bins = alphabet(width);
    if (window < 0 || static_cast<std::uint64_t>(window) < bins)
        throw SizeError("progressive_discretize: window " + std::to_string(window) + " smaller than alphabet " +
                        std::to_string(bins));
    if (static_cast<std::size_t>(window) >= x.size())
        throw SizeError("progressive_discretize: window " + std::to_string(window) + " not shorter than series (" +
                        std::to_string(x.size()) + ")");

    const auto w = static_cast<std::size_t>(window);
    std::vector<std::uint32_t> syms(x.size() - w + 1);
    for (std::size_t t = 0; t < syms.size(); ++t) {
        const std::size_t cur = t + w - 1;
        const double v = x[cur];
        // Ties with earlier entries rank below the current return (stable order).
        std::size_t rank = 0;
        for (std::size_t j = t; j < cur; ++j) rank += x[j] <= v ? 1 : 0;
        syms[t] = rank_to_symbol(rank, w, width);
    }
    return SymbolSeries(std::move(syms), width);
}

SymbolSeries discretize(const ReturnSeries& returns, const DiscretizationRecord& record) {
    switch (record.scheme) {
        case Scheme::equal_width: {
            if (!record.bounds) throw DomainError("equal_width record without bounds");
            const auto& b = record.bounds->bounds();
            const double m = b.front(), M = b.back();
            const auto bins = static_cast<double>(record.bounds->bins());
            const double e = (M - m) / bins;
            std::vector<std::uint32_t> syms(returns.size());
            for (std::size_t i = 0; i < returns.size(); ++i)
                syms[i] = static_cast<std::uint32_t>(std::clamp(std::floor((returns.values[i] - m) / e), 0.0, bins - 1));
            return SymbolSeries(std::move(syms), record.width);
        }
        case Scheme::normal_quantile:
            return discretize_with_bounds(returns, record.bounds ? *record.bounds : normal_quantile_bounds(record.width));
        case Scheme::empirical_quantile: return empirical_quantile_discretize(returns, record.width);
        case Scheme::progressive: return progressive_discretize(returns, record.window, record.width);
    }
    throw DomainError("unknown scheme");
}

Discretized discretize(const ReturnSeries& returns, Scheme scheme, int width, int window) {
    switch (scheme) {
        case Scheme::equal_width: return equal_width_bins(returns, width);
        case Scheme::normal_quantile: {
            auto b = normal_quantile_bounds(width);
            auto s = discretize_with_bounds(returns, b);
            return {std::move(s), {scheme, width, 0, std::move(b)}};
        }
        case Scheme::empirical_quantile:
            return {empirical_quantile_discretize(returns, width), {scheme, width, 0, std::nullopt}};
        case Scheme::progressive:
            return {progressive_discretize(returns, window, width), {scheme, width, window, std::nullopt}};
    }
    throw DomainError("unknown scheme");
}

std::string bounds_to_csv(const BoundsTable& bounds) {
    std::ostringstream os;
    os.precision(17);
    os << "index,bound\n";
    for (std::size_t i = 0; i < bounds.bounds().size(); ++i) {
        const double b = bounds[i];
        os << i << ',';
        if (std::isinf(b))
            os << (b < 0 ? "-inf" : "+inf");
        else
            os << b;
        os << '\n';
    }
    return os.str();
}

BoundsTable bounds_from_csv(const std::string& text) {
    std::istringstream is(text);
    std::string line;
    std::vector<double> b;
    std::size_t lineno = 0;
    while (std::getline(is, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty() || line == "index,bound") continue;
        const auto comma = line.find(',');
        if (comma == std::string::npos) throw ParseError("bounds CSV line " + std::to_string(lineno) + ": missing comma");
        const std::string v = line.substr(comma + 1);
        if (v == "-inf") {
            b.push_back(-std::numeric_limits<double>::infinity());
        } else if (v == "+inf" || v == "inf") {
            b.push_back(std::numeric_limits<double>::infinity());
        } else {
            double d = 0;
            const auto [p, ec] = std::from_chars(v.data(), v.data() + v.size(), d);
            if (ec != std::errc{} || p != v.data() + v.size())
                throw ParseError("bounds CSV line " + std::to_string(lineno) + ": bad number '" + v + "'");
            b.push_back(d);
        }
    }
    const auto bins = b.empty() ? 0 : b.size() - 1;
    int width = 0;
    while (width < 31 && (std::size_t{1} << width) < bins) ++width;
    if (bins == 0 || (std::size_t{1} << width) != bins)
        throw SizeError("bounds CSV: " + std::to_string(b.size()) + " bounds is not 2^w + 1");
    return BoundsTable(std::move(b), width);
}

}  // namespace kolmo
