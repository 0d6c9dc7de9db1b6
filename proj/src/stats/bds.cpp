// BDS independence test.
//
// The n x n indicator matrix I(i,j) = [|x_i - x_j| < eps] is never stored.
// Pairs are walked by lag d = j - i instead: for a fixed d the indicators of
// the pairs (t, t+d) form one byte row h[t], and the m-history indicator of
// the pair is the AND of h[t .. t+m-1]. Each lag costs a few passes over
// contiguous bytes, which the compiler vectorises.

#include <algorithm>
#include <cmath>

#include "kolmo/error.hpp"
#include "kolmo/numeric.hpp"
#include "kolmo/stats.hpp"

namespace kolmo::stats {
namespace {

double sample_sd(const std::vector<double>& x) {
    double mean = 0.0;
    for (double v : x) mean += v;
    mean /= static_cast<double>(x.size());
    double ss = 0.0;
    for (double v : x) ss += (v - mean) * (v - mean);
    return std::sqrt(ss / static_cast<double>(x.size() - 1));
}

// sum_i c_i (c_i - 1) / (n (n-1) (n-2)), c_i = #{j != i : |x_i - x_j| < eps}.
double triple_estimate(const std::vector<double>& sorted, double eps) {
    const std::size_t n = sorted.size();
    long double acc = 0.0L;
    for (std::size_t i = 0; i < n; ++i) {
        // strict inequality on both sides
        const auto lo = std::upper_bound(sorted.begin(), sorted.end(), sorted[i] - eps);
        const auto hi = std::lower_bound(sorted.begin(), sorted.end(), sorted[i] + eps);
        const auto c = static_cast<long double>(hi - lo) - 1.0L;
        acc += c * (c - 1.0L);
    }
    const auto nn = static_cast<long double>(n);
    return static_cast<double>(acc / (nn * (nn - 1.0L) * (nn - 2.0L)));
}

double pairs(std::size_t n) { return 0.5 * static_cast<double>(n) * static_cast<double>(n - 1); }

}  // namespace

std::vector<CorrelationIntegrals> correlation_integrals(const std::vector<double>& x, const std::vector<double>& epsilons,
                                                        int max_m) {
    const std::size_t n = x.size();
    if (max_m < 1) throw RangeError("correlation_integrals: max_m must be >= 1");
    if (n < static_cast<std::size_t>(max_m) + 2) throw SizeError("correlation_integrals: series too short");
    const std::size_t M = static_cast<std::size_t>(max_m);
    const std::size_t E = epsilons.size();

    // count[e][m] for m = 1..M over the pairs of m-histories; trimmed[e][m]
    // counts 1-histories among observations m-1 .. n-1.
    std::vector<std::vector<std::int64_t>> count(E, std::vector<std::int64_t>(M + 1, 0));
    std::vector<std::vector<std::int64_t>> trimmed(E, std::vector<std::int64_t>(M + 1, 0));

    std::vector<double> diff(n);
    std::vector<std::uint8_t> h(n), run(n);
    for (std::size_t d = 1; d < n; ++d) {
        const std::size_t len = n - d;
        const double* a = x.data();
        const double* b = x.data() + d;
        for (std::size_t t = 0; t < len; ++t) diff[t] = std::abs(b[t] - a[t]);
        for (std::size_t e = 0; e < E; ++e) {
            const double eps = epsilons[e];
            for (std::size_t t = 0; t < len; ++t) h[t] = diff[t] < eps;

            // prefix sums of h from the left give every trimmed C_1 at once
            std::int64_t total = 0;
            for (std::size_t t = 0; t < len; ++t) total += h[t];
            count[e][1] += total;
            std::int64_t head = 0;
            for (std::size_t m = 1; m <= M; ++m) {
                if (m >= 2 && m - 2 < len) head += h[m - 2];
                if (m - 1 < len) trimmed[e][m] += total - head;
            }

            std::copy(h.begin(), h.begin() + static_cast<std::ptrdiff_t>(len), run.begin());
            for (std::size_t m = 2; m <= M; ++m) {
                if (len < m) break;
                const std::size_t upto = len - m + 1;  // t in [0, n - m - d]
                const std::uint8_t* hs = h.data() + (m - 1);
                std::uint8_t* r = run.data();
                std::int64_t s = 0;
                for (std::size_t t = 0; t < upto; ++t) {
                    r[t] &= hs[t];
                    s += r[t];
                }
                count[e][m] += s;
            }
        }
    }

    std::vector<double> sorted = x;
    std::sort(sorted.begin(), sorted.end());
    std::vector<CorrelationIntegrals> out(E);
    for (std::size_t e = 0; e < E; ++e) {
        auto& ci = out[e];
        ci.epsilon = epsilons[e];
        ci.c.assign(M + 1, 0.0);
        ci.c1_trimmed.assign(M + 1, 0.0);
        for (std::size_t m = 1; m <= M; ++m) {
            ci.c[m] = static_cast<double>(count[e][m]) / pairs(n - m + 1);
            ci.c1_trimmed[m] = static_cast<double>(trimmed[e][m]) / pairs(n - m + 1);
        }
        ci.k = triple_estimate(sorted, epsilons[e]);
    }
    return out;
}

TestReport bds_test(const ReturnSeries& series, const BdsOptions& options) {
    const auto& x = series.values;
    const std::size_t n = x.size();
    if (n < 200) throw SizeError("bds_test: need at least 200 observations, got " + std::to_string(n));
    if (options.m_values.empty() || options.eps_multiples.empty()) throw UsageError("bds_test: empty m or epsilon grid");
    int max_m = 0;
    for (int m : options.m_values) {
        if (m < 2) throw RangeError("bds_test: embedding dimension must be >= 2");
        max_m = std::max(max_m, m);
    }
    const double sd = sample_sd(x);
    if (!(sd > 0.0)) throw DomainError("bds_test: series has zero variance");

    std::vector<double> eps;
    for (double k : options.eps_multiples) {
        if (!(k > 0.0)) throw RangeError("bds_test: epsilon multiples must be positive");
        eps.push_back(k * sd);
    }
    const auto ci = correlation_integrals(x, eps, max_m);

    TestReport report;
    report.test = "bds";
    report.params = {{"n", static_cast<double>(n)}, {"sd", sd}};
    for (std::size_t e = 0; e < eps.size(); ++e) {
        const double c = ci[e].c[1], k = ci[e].k;
        for (int m : options.m_values) {
            double inner = 0.0;
            for (int j = 1; j < m; ++j) inner += std::pow(k, m - j) * std::pow(c, 2 * j);
            const double var = 4.0 * (std::pow(k, m) + 2.0 * inner + (m - 1.0) * (m - 1.0) * std::pow(c, 2 * m) -
                                      static_cast<double>(m) * m * k * std::pow(c, 2 * m - 2));
            if (!(var > 0.0)) throw NumericError("bds_test: non-positive variance estimate");
            const auto mu = static_cast<std::size_t>(m);
            const double effect = ci[e].c[mu] - std::pow(ci[e].c1_trimmed[mu], m);
            const double w = std::sqrt(static_cast<double>(n - mu + 1)) * effect / std::sqrt(var);
            TestCell cell;
            cell.label = "m=" + std::to_string(m) + ",eps=" + std::to_string(options.eps_multiples[e]);
            cell.statistic = w;
            cell.p_value = std::min(1.0, 2.0 * numeric::normal_sf(std::abs(w)));
            cell.params = {{"m", m}, {"eps_multiple", options.eps_multiples[e]}, {"epsilon", eps[e]},
                           {"c_m", ci[e].c[mu]}, {"c_1", ci[e].c1_trimmed[mu]}};
            report.cells.push_back(cell);
        }
    }
    return report;
}

}  // namespace kolmo::stats
