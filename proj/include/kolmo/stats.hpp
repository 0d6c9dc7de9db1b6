#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "kolmo/series.hpp"

namespace kolmo::stats {

/// One statistic and its p-value. BDS produces one cell per (m, epsilon).
struct TestCell {
    std::string label;
    double statistic = 0.0;
    double p_value = 1.0;
    std::map<std::string, double> params;
};

struct TestReport {
    std::string test;  // "ljung_box", "adf", "bds"
    std::vector<TestCell> cells;
    std::map<std::string, double> params;

    double min_p() const;
    double max_p() const;
};

/// Whether the outcome points at exploitable structure at level alpha.
/// Ljung-Box and BDS: some cell rejects independence. ADF: the unit root is
/// NOT rejected (a stationary i.i.d.-looking series rejects it, as in every
/// no-structure case of the experiments).
bool detects_structure(const TestReport& report, double alpha = 0.05);

/// Q = n(n+2) sum_{k=1..lags} rho_k^2 / (n-k), upper tail of chi2(lags).
TestReport ljung_box(const ReturnSeries& series, int lags);

/// Sample autocorrelations rho_1..rho_lags (biased denominators, as in Q).
std::vector<double> autocorrelations(const ReturnSeries& series, int lags);

/// floor(cbrt(n - 1)).
int adf_default_lag(std::size_t n);

/// Augmented Dickey-Fuller with a constant and no trend:
///   dy_t = a + g y_{t-1} + sum_{i=1..p} b_i dy_{t-i} + e_t,   tau = g / se(g).
/// p-value from MacKinnon's response surface, clipped to [0.01, 0.99].
TestReport adf_test(const ReturnSeries& series, std::optional<int> lag_order = std::nullopt);

/// Asymptotic p-value of the constant-only tau statistic (unclipped).
double mackinnon_p(double tau);

/// Correlation integrals for one epsilon:
///   c[m]          C_m over all pairs of m-histories (c[1] over the full series)
///   c1_trimmed[m] C_1 over observations m-1 .. n-1, the companion of c[m]
///   k             the triple-product estimate used by the variance
struct CorrelationIntegrals {
    double epsilon = 0.0;
    std::vector<double> c;
    std::vector<double> c1_trimmed;
    double k = 0.0;
};

/// Lag-wise O(n^2) kernel with no n x n storage. max_m >= 1.
std::vector<CorrelationIntegrals> correlation_integrals(const std::vector<double>& x, const std::vector<double>& epsilons,
                                                        int max_m);

struct BdsOptions {
    std::vector<int> m_values{2, 3};
    std::vector<double> eps_multiples{0.5, 1.0, 1.5, 2.0};  // times the sample sd
};

/// W = sqrt(n-m+1) (C_m - C_1^m) / sigma_m, two-sided normal p-value.
TestReport bds_test(const ReturnSeries& series, const BdsOptions& options = {});

/// The three baselines with their default settings (Ljung-Box at `lb_lags`).
std::vector<TestReport> standard_battery(const ReturnSeries& series, int lb_lags = 36);

}  // namespace kolmo::stats
