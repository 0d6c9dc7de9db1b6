#include <algorithm>
#include <cmath>

#include "kolmo/error.hpp"
#include "kolmo/numeric.hpp"
#include "kolmo/stats.hpp"

namespace kolmo::stats {

double TestReport::min_p() const {
    double p = 1.0;
    for (const auto& c : cells) p = std::min(p, c.p_value);
    return p;
}

double TestReport::max_p() const {
    double p = 0.0;
    for (const auto& c : cells) p = std::max(p, c.p_value);
    return p;
}

bool detects_structure(const TestReport& report, double alpha) {
    if (report.test == "adf") return report.min_p() > alpha;
    return report.min_p() < alpha;
}

std::vector<double> autocorrelations(const ReturnSeries& series, int lags) {
    const auto& x = series.values;
    const std::size_t n = x.size();
    if (lags < 1) throw RangeError("autocorrelations: lags must be >= 1");
    if (n <= static_cast<std::size_t>(lags))
        throw SizeError("autocorrelations: series length " + std::to_string(n) + " must exceed lags " + std::to_string(lags));
    double mean = 0.0;
    for (double v : x) mean += v;
    mean /= static_cast<double>(n);
    std::vector<double> d(n);
    double denom = 0.0;
    for (std::size_t t = 0; t < n; ++t) {
        d[t] = x[t] - mean;
        denom += d[t] * d[t];
    }
    if (!(denom > 0.0)) throw DomainError("autocorrelations: series has zero variance");
    std::vector<double> rho(static_cast<std::size_t>(lags));
    for (int k = 1; k <= lags; ++k) {
        double s = 0.0;
        for (std::size_t t = static_cast<std::size_t>(k); t < n; ++t) s += d[t] * d[t - static_cast<std::size_t>(k)];
        rho[static_cast<std::size_t>(k - 1)] = s / denom;
    }
    return rho;
}

TestReport ljung_box(const ReturnSeries& series, int lags) {
    if (lags >= 1 && series.size() < static_cast<std::size_t>(lags) + 2)
        throw SizeError("ljung_box: " + std::to_string(series.size()) + " observations for " + std::to_string(lags) +
                        " lags; need at least lags + 2");
    const auto rho = autocorrelations(series, lags);
    const double n = static_cast<double>(series.size());
    double q = 0.0;
    for (int k = 1; k <= lags; ++k) {
        const double r = rho[static_cast<std::size_t>(k - 1)];
        q += r * r / (n - k);
    }
    q *= n * (n + 2.0);

    TestReport report;
    report.test = "ljung_box";
    report.params = {{"lags", lags}, {"n", n}};
    report.cells.push_back({"Q", q, numeric::chi_square_sf(q, lags), {{"df", lags}}});
    return report;
}

std::vector<TestReport> standard_battery(const ReturnSeries& series, int lb_lags) {
    return {ljung_box(series, lb_lags), adf_test(series), bds_test(series)};
}

}  // namespace kolmo::stats
