#pragma once

#include <optional>
#include <string>
#include <vector>

#include "kolmo/bitcodec.hpp"
#include "kolmo/series.hpp"

namespace kolmo {

/// 2^width + 1 strictly increasing separators. Symbol i covers
/// [bounds[i], bounds[i+1]). Quantile tables carry -inf / +inf at the ends;
/// equal-width tables carry the sample min and max.
class BoundsTable {
public:
    BoundsTable() = default;
    /// Throws SizeError / RangeError when the invariants do not hold.
    BoundsTable(std::vector<double> bounds, int width);

    const std::vector<double>& bounds() const noexcept { return bounds_; }
    int width() const noexcept { return width_; }
    std::size_t bins() const noexcept { return bounds_.size() - 1; }
    double operator[](std::size_t i) const { return bounds_[i]; }

    bool operator==(const BoundsTable&) const = default;

private:
    std::vector<double> bounds_;
    int width_ = 0;
};

enum class Scheme { equal_width, normal_quantile, empirical_quantile, progressive };

std::string to_string(Scheme scheme);
Scheme scheme_from_string(const std::string& name);  // accepts '-' or '_' separators

/// Everything needed to re-run a discretization bit-identically.
struct DiscretizationRecord {
    Scheme scheme = Scheme::normal_quantile;
    int width = 8;
    int window = 0;                    // progressive only
    std::optional<BoundsTable> bounds; // equal_width (m..M) and normal_quantile
};

struct Discretized {
    SymbolSeries symbols;
    DiscretizationRecord record;
};

/// e = (M - m) / 2^width; symbol = floor((x - m) / e), with x = M clamped into the top bin.
Discretized equal_width_bins(const ReturnSeries& returns, int width);

/// bounds[i] = Phi^-1(i / 2^width); bounds[0] = -inf, bounds[2^width] = +inf.
BoundsTable normal_quantile_bounds(int width);

/// symbol = i with bounds[i] <= x < bounds[i+1]. Values outside the table
/// raise RangeError naming the index.
SymbolSeries discretize_with_bounds(const ReturnSeries& returns, const BoundsTable& bounds);

/// Rank-based equal-count bins: symbol = floor(rank * 2^width / n), where rank
/// orders by (value, original index).
SymbolSeries empirical_quantile_discretize(const ReturnSeries& returns, int width);

/// Sliding-window version: output t is the empirical-quantile symbol of return
/// t + window - 1 among the window ending at (and including) it.
/// Output length = n - window + 1.
SymbolSeries progressive_discretize(const ReturnSeries& returns, int window, int width);

/// Replays a record.
SymbolSeries discretize(const ReturnSeries& returns, const DiscretizationRecord& record);

/// Convenience front end used by the CLI and pipeline.
Discretized discretize(const ReturnSeries& returns, Scheme scheme, int width, int window = 512);

/// CSV with header "index,bound", infinities written as -inf / +inf.
std::string bounds_to_csv(const BoundsTable& bounds);
BoundsTable bounds_from_csv(const std::string& text);

}  // namespace kolmo
