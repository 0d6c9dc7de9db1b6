#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>

#include "kolmo/error.hpp"
#include "kolmo/generators.hpp"
#include "kolmo/numeric.hpp"
#include "kolmo/stats.hpp"
#include "oracles.hpp"

using namespace kolmo;

namespace {

ReturnSeries random_walk(std::size_t n, std::uint64_t seed) {
    auto z = gen::iid_gaussian_returns(n, Seed{seed});
    double level = 0.0;
    for (auto& v : z.values) v = level += v;
    return z;
}

// Direct OLS by normal equations and Gauss-Jordan, for the ADF tau.
double adf_tau_oracle(const std::vector<double>& y, int p) {
    const std::size_t n = y.size();
    std::vector<double> dy(n - 1);
    for (std::size_t t = 1; t < n; ++t) dy[t - 1] = y[t] - y[t - 1];
    const std::size_t cols = 2 + static_cast<std::size_t>(p);
    std::vector<std::vector<double>> X;
    std::vector<double> Y;
    for (std::size_t t = static_cast<std::size_t>(p); t < dy.size(); ++t) {
        std::vector<double> row{1.0, y[t]};
        for (int j = 1; j <= p; ++j) row.push_back(dy[t - j]);
        X.push_back(row);
        Y.push_back(dy[t]);
    }
    std::vector<std::vector<double>> A(cols, std::vector<double>(2 * cols, 0.0));
    std::vector<double> xty(cols, 0.0);
    for (std::size_t r = 0; r < X.size(); ++r)
        for (std::size_t i = 0; i < cols; ++i) {
            xty[i] += X[r][i] * Y[r];
            for (std::size_t j = 0; j < cols; ++j) A[i][j] += X[r][i] * X[r][j];
        }
    for (std::size_t i = 0; i < cols; ++i) A[i][cols + i] = 1.0;
    for (std::size_t c = 0; c < cols; ++c) {
        std::size_t piv = c;
        for (std::size_t r = c + 1; r < cols; ++r)
            if (std::abs(A[r][c]) > std::abs(A[piv][c])) piv = r;
        std::swap(A[c], A[piv]);
        const double d = A[c][c];
        for (auto& v : A[c]) v /= d;
        for (std::size_t r = 0; r < cols; ++r) {
            if (r == c) continue;
            const double f = A[r][c];
            for (std::size_t k = 0; k < 2 * cols; ++k) A[r][k] -= f * A[c][k];
        }
    }
    std::vector<double> beta(cols, 0.0);
    for (std::size_t i = 0; i < cols; ++i)
        for (std::size_t j = 0; j < cols; ++j) beta[i] += A[i][cols + j] * xty[j];
    double ssr = 0.0;
    for (std::size_t r = 0; r < X.size(); ++r) {
        double fit = 0.0;
        for (std::size_t i = 0; i < cols; ++i) fit += X[r][i] * beta[i];
        ssr += (Y[r] - fit) * (Y[r] - fit);
    }
    const double s2 = ssr / static_cast<double>(X.size() - cols);
    return beta[1] / std::sqrt(s2 * A[1][cols + 1]);
}

}  // namespace

TEST(LjungBox, MatchesDirectFormula) {
    const auto r = gen::iid_gaussian_returns(1000, Seed{1});
    const int h = 10;
    double mean = 0.0;
    for (double v : r.values) mean += v;
    mean /= 1000;
    double c0 = 0.0;
    for (double v : r.values) c0 += (v - mean) * (v - mean);
    double q = 0.0;
    for (int k = 1; k <= h; ++k) {
        double ck = 0.0;
        for (std::size_t t = k; t < 1000; ++t) ck += (r.values[t] - mean) * (r.values[t - k] - mean);
        q += (ck / c0) * (ck / c0) / (1000.0 - k);
    }
    q *= 1000.0 * 1002.0;
    const auto rep = stats::ljung_box(r, h);
    EXPECT_NEAR(rep.cells.at(0).statistic, q, 1e-9 * q);
    EXPECT_NEAR(rep.cells.at(0).p_value, numeric::chi_square_sf(q, h), 1e-12);
}

TEST(LjungBox, IidRarelyRejects) {
    int pass = 0;
    for (std::uint64_t s = 1; s <= 10; ++s)
        pass += stats::ljung_box(gen::iid_gaussian_returns(32000, Seed{s}), 36).cells[0].p_value > 0.05;
    EXPECT_GE(pass, 9);
}

TEST(LjungBox, AlternatingSeriesRejects) {
    ReturnSeries r;
    for (int i = 0; i < 2000; ++i) r.values.push_back(i % 2 ? -1.0 : 1.0);
    EXPECT_LT(stats::ljung_box(r, 36).cells[0].p_value, 1e-6);
}

TEST(LjungBox, Preconditions) {
    EXPECT_THROW(stats::ljung_box(make_return_series({1.0, 2.0}), 1), SizeError);
    EXPECT_THROW(stats::ljung_box(ReturnSeries{std::vector<double>(100, 1.0)}, 5), DomainError);
}

TEST(Adf, DefaultLag) {
    EXPECT_EQ(stats::adf_default_lag(32000), 31);
    EXPECT_EQ(stats::adf_default_lag(28), 3);
}

TEST(Adf, TauMatchesNormalEquations) {
    const auto y = random_walk(600, 3);
    for (int p : {0, 2, 8}) {
        const auto rep = stats::adf_test(y, p);
        EXPECT_NEAR(rep.cells.at(0).statistic, adf_tau_oracle(y.values, p), 1e-8) << "p=" << p;
    }
}

TEST(Adf, MacKinnonCriticalValues) {
    // asymptotic constant-only critical values
    EXPECT_NEAR(stats::mackinnon_p(-3.43), 0.01, 0.003);
    EXPECT_NEAR(stats::mackinnon_p(-2.86), 0.05, 0.005);
    EXPECT_NEAR(stats::mackinnon_p(-2.57), 0.10, 0.008);
    EXPECT_LT(stats::mackinnon_p(-3.0), stats::mackinnon_p(-2.0));
}

TEST(Adf, IidReturnsRejectUnitRoot) {
    const auto rep = stats::adf_test(gen::iid_gaussian_returns(32000, Seed{4}));
    EXPECT_EQ(rep.cells.at(0).p_value, 0.01);
    EXPECT_FALSE(stats::detects_structure(rep));
}

TEST(Adf, RandomWalkLevels) {
    std::vector<double> p;
    for (std::uint64_t s = 1; s <= 200; ++s) p.push_back(stats::adf_test(random_walk(500, 1000 + s)).cells[0].p_value);
    std::nth_element(p.begin(), p.begin() + 100, p.end());
    EXPECT_GT(p[100], 0.10);
}

TEST(Adf, SingularDesign) {
    EXPECT_THROW(stats::adf_test(ReturnSeries{std::vector<double>(200, 1.0)}, 2), NumericError);
}

TEST(Bds, IntegralsMatchBruteForce) {
    for (std::size_t n : {10u, 57u, 230u, 500u}) {
        const auto x = gen::iid_gaussian_returns(n, Seed{n}).values;
        const std::vector<double> eps{0.4, 1.0, 1.7};
        const auto ci = stats::correlation_integrals(x, eps, 4);
        for (std::size_t e = 0; e < eps.size(); ++e)
            for (int m = 1; m <= 4; ++m) {
                const auto b = oracle::bds_brute(x, eps[e], m);
                EXPECT_NEAR(ci[e].c[m], b.c_m, 1e-12) << "n=" << n << " m=" << m;
                EXPECT_NEAR(ci[e].c1_trimmed[m], b.c1_trimmed, 1e-12);
                EXPECT_NEAR(ci[e].k, b.k, 1e-12);
            }
    }
}

TEST(Bds, StatisticMatchesBruteForce) {
    for (std::size_t n : {200u, 500u}) {
        const auto r = gen::iid_gaussian_returns(n, Seed{n + 1});
        stats::BdsOptions opt;
        opt.m_values = {2, 3, 4};
        opt.eps_multiples = {0.5, 1.0, 1.5};
        const auto rep = stats::bds_test(r, opt);
        const double sd = rep.params.at("sd");
        for (const auto& cell : rep.cells) {
            const int m = static_cast<int>(cell.params.at("m"));
            const double w = oracle::bds_w_brute(r.values, cell.params.at("eps_multiple") * sd, m);
            EXPECT_NEAR(cell.statistic, w, 1e-12 * std::max(1.0, std::abs(w))) << cell.label;
        }
    }
}

TEST(Bds, IidNullBehaviour) {
    int pass = 0;
    stats::BdsOptions opt;
    opt.m_values = {2};
    opt.eps_multiples = {1.0};
    for (std::uint64_t s = 1; s <= 10; ++s)
        pass += std::abs(stats::bds_test(gen::iid_gaussian_returns(32000, Seed{s}), opt).cells[0].statistic) < 2.0;
    EXPECT_GE(pass, 9);
}

TEST(Bds, DetectsNonlinearDependence) {
    // ARCH(1): uncorrelated but dependent
    const auto z = gen::iid_gaussian_returns(3000, Seed{6});
    ReturnSeries r;
    double prev = 0.0;
    for (double e : z.values) r.values.push_back(prev = e * std::sqrt(0.2 + 0.7 * prev * prev));
    EXPECT_TRUE(stats::detects_structure(stats::bds_test(r)));
}

TEST(Bds, BlindToHiddenLowBitCycle) {
    const auto r = gen::hidden_cycle_returns(27423, 1, Seed{1});
    const auto rep = stats::bds_test(r);
    for (const auto& c : rep.cells) EXPECT_GT(c.p_value, 0.1) << c.label;
}

TEST(Bds, Preconditions) {
    EXPECT_THROW(stats::bds_test(gen::iid_gaussian_returns(150, Seed{1})), SizeError);
    EXPECT_THROW(stats::bds_test(ReturnSeries{std::vector<double>(300, 2.0)}), DomainError);
    stats::BdsOptions bad;
    bad.m_values = {1};
    EXPECT_THROW(stats::bds_test(gen::iid_gaussian_returns(300, Seed{1}), bad), RangeError);
}

TEST(Battery, ThreeReports) {
    const auto b = stats::standard_battery(gen::iid_gaussian_returns(1000, Seed{2}));
    ASSERT_EQ(b.size(), 3u);
    EXPECT_EQ(b[0].test, "ljung_box");
    EXPECT_EQ(b[1].test, "adf");
    EXPECT_EQ(b[2].test, "bds");
}

// Reference values computed once with statsmodels (acorr_ljungbox, adfuller
// with maxlag 7 and no autolag, bds with eps = k * sd(ddof=1), mackinnonp)
// on gen::iid_gaussian_returns(500, Seed{3}), then frozen.
TEST(Reference, StatsmodelsAgreement) {
    const auto r = gen::iid_gaussian_returns(500, Seed{3});
    EXPECT_NEAR(stats::ljung_box(r, 10).cells[0].statistic, 12.523796819643492, 1e-9);
    EXPECT_NEAR(stats::adf_test(r).cells[0].statistic, -8.666074174547392, 1e-9);
    const double w[4][2] = {{1.9354353555045969, 1.3673121494271354},
                            {1.6559145180827242, 1.1035370295347804},
                            {1.9328922779676494, 1.461467938810355},
                            {1.7809227839952082, 1.4281546129442817}};
    const auto bds = stats::bds_test(r);
    ASSERT_EQ(bds.cells.size(), 8u);
    for (std::size_t e = 0; e < 4; ++e)
        for (std::size_t m = 0; m < 2; ++m) EXPECT_NEAR(bds.cells[2 * e + m].statistic, w[e][m], 1e-9);
}

TEST(Reference, MacKinnonSurface) {
    const std::pair<double, double> ref[] = {{-4.0, 0.0014105112530392603}, {-3.2, 0.019984679218641072},
                                             {-2.5, 0.11547432475870761},   {-1.9, 0.3320611107202426},
                                             {-1.0, 0.7532643012005655},    {0.5, 0.9848730963065522},
                                             {2.0, 0.9986729511999243}};
    for (const auto& [tau, p] : ref) EXPECT_NEAR(stats::mackinnon_p(tau), p, 1e-9) << tau;
}
