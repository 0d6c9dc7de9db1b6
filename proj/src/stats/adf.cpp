#include <Eigen/Dense>
#include <algorithm>
#include <cmath>

#include "kolmo/error.hpp"
#include "kolmo/numeric.hpp"
#include "kolmo/stats.hpp"

namespace kolmo::stats {
namespace {

// MacKinnon (1994) response surface, one series, constant only.
constexpr double kTauMax = 2.74;
constexpr double kTauMin = -18.83;
constexpr double kTauStar = -1.61;
constexpr double kSmallP[] = {2.1659, 1.4412, 0.038269};
constexpr double kLargeP[] = {1.7339, 0.93202, -0.12745, -0.010368};

template <std::size_t N>
double poly(const double (&c)[N], double x) {
    double v = 0.0;
    for (std::size_t i = N; i-- > 0;) v = v * x + c[i];
    return v;
}

}  // namespace

double mackinnon_p(double tau) {
    if (tau > kTauMax) return 1.0;
    if (tau < kTauMin) return 0.0;
    return numeric::normal_cdf(tau <= kTauStar ? poly(kSmallP, tau) : poly(kLargeP, tau));
}

int adf_default_lag(std::size_t n) {
    if (n < 2) return 0;
    // cbrt can land a hair below an exact cube; nudge before flooring.
    auto p = static_cast<int>(std::floor(std::cbrt(static_cast<double>(n - 1)) + 1e-12));
    return p;
}

TestReport adf_test(const ReturnSeries& series, std::optional<int> lag_order) {
    const auto& y = series.values;
    const std::size_t n = y.size();
    const int p = lag_order ? *lag_order : adf_default_lag(n);
    if (p < 0) throw RangeError("adf_test: lag order must be >= 0");
    const std::size_t cols = static_cast<std::size_t>(p) + 2;
    if (n < static_cast<std::size_t>(p) + 2 || n - 1 - static_cast<std::size_t>(p) <= cols)
        throw SizeError("adf_test: series of length " + std::to_string(n) + " too short for lag order " +
                        std::to_string(p));

    const auto nobs = static_cast<Eigen::Index>(n - 1 - static_cast<std::size_t>(p));
    Eigen::VectorXd dy(static_cast<Eigen::Index>(n - 1));
    for (std::size_t t = 1; t < n; ++t) dy(static_cast<Eigen::Index>(t - 1)) = y[t] - y[t - 1];

    // Row r models dy at index p + r (i.e. time t = p + r + 1).
    Eigen::MatrixXd X(nobs, static_cast<Eigen::Index>(cols));
    Eigen::VectorXd target = dy.tail(nobs);
    for (Eigen::Index r = 0; r < nobs; ++r) {
        const Eigen::Index i = p + r;
        X(r, 0) = 1.0;
        X(r, 1) = y[static_cast<std::size_t>(i)];
        for (int l = 1; l <= p; ++l) X(r, 1 + l) = dy(i - l);
    }

    const Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(X);
    if (qr.rank() < static_cast<Eigen::Index>(cols))
        throw NumericError("adf_test: regression design is singular (rank " + std::to_string(qr.rank()) + " of " +
                           std::to_string(cols) + ")");
    const Eigen::VectorXd beta = qr.solve(target);
    const Eigen::VectorXd resid = target - X * beta;
    const double dof = static_cast<double>(nobs) - static_cast<double>(cols);
    const double s2 = resid.squaredNorm() / dof;
    const Eigen::MatrixXd xtx_inv = (X.transpose() * X).ldlt().solve(Eigen::MatrixXd::Identity(
        static_cast<Eigen::Index>(cols), static_cast<Eigen::Index>(cols)));
    const double se = std::sqrt(s2 * xtx_inv(1, 1));
    if (!(se > 0.0) || !std::isfinite(se)) throw NumericError("adf_test: degenerate standard error");
    const double tau = beta(1) / se;

    TestReport report;
    report.test = "adf";
    report.params = {{"lags", p}, {"n", static_cast<double>(n)}, {"nobs", static_cast<double>(nobs)}};
    report.cells.push_back({"tau", tau, std::clamp(mackinnon_p(tau), 0.01, 0.99), {{"lags", p}}});
    return report;
}

}  // namespace kolmo::stats
