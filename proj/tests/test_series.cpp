#include <gtest/gtest.h>

#include <cmath>

#include "kolmo/error.hpp"
#include "kolmo/generators.hpp"
#include "kolmo/random.hpp"
#include "kolmo/series.hpp"

using namespace kolmo;

TEST(LogReturns, ConstantPricesGiveZero) {
    const auto r = log_returns(make_price_series({100, 100, 100}));
    ASSERT_EQ(r.size(), 2u);
    EXPECT_EQ(r.values[0], 0.0);
    EXPECT_EQ(r.values[1], 0.0);
}

TEST(LogReturns, UnitLogStep) {
    const auto r = log_returns(make_price_series({1.0, std::exp(1.0)}));
    ASSERT_EQ(r.size(), 1u);
    EXPECT_NEAR(r.values[0], 1.0, 1e-15);
}

TEST(LogReturns, RoundTripThroughPrices) {
    for (std::uint64_t s = 1; s <= 5; ++s) {
        const auto r = gen::iid_gaussian_returns(2000, Seed{s});
        ReturnSeries scaled;
        for (double v : r.values) scaled.values.push_back(0.01 * v);
        const auto back = log_returns(prices_from_returns(scaled, 1000.0));
        ASSERT_EQ(back.size(), scaled.size());
        for (std::size_t i = 0; i < back.size(); ++i) EXPECT_NEAR(back.values[i], scaled.values[i], 1e-12);
    }
}

TEST(LogReturns, Errors) {
    EXPECT_THROW(log_returns(make_price_series({100})), SizeError);
    EXPECT_THROW(make_price_series({100, -1}), DomainError);
    EXPECT_THROW(make_price_series({100, 0}), DomainError);
}

TEST(FirstDifference, WorkedExamplePrices) {
    const auto d = first_difference(make_price_series({1000, 1028, 1044, 1015, 998}));
    EXPECT_EQ(d.values, (std::vector<std::int64_t>{28, 16, -29, -17}));
}

TEST(FirstDifference, Constant) {
    EXPECT_EQ(first_difference(IntegerSeries{{5, 5, 5}}).values, (std::vector<std::int64_t>{0, 0}));
}

TEST(FirstDifference, CumulativeSumInverts) {
    Rng rng(Seed{11});
    for (int trial = 0; trial < 50; ++trial) {
        IntegerSeries x;
        const std::size_t n = 2 + rng.next_u64() % 200;
        for (std::size_t i = 0; i < n; ++i) x.values.push_back(static_cast<std::int64_t>(rng.next_u64() % 20001) - 10000);
        EXPECT_EQ(cumulative_sum(first_difference(x), x.values[0]), x);
    }
}

TEST(FirstDifference, NonIntegralPriceRejected) {
    EXPECT_THROW(first_difference(make_price_series({1000, 1000.5})), DomainError);
    EXPECT_THROW(first_difference(IntegerSeries{{1}}), SizeError);
}

TEST(AffineShift, WorkedExample) {
    EXPECT_EQ(affine_shift(IntegerSeries{{28, 16, -29}}, 32).values, (std::vector<std::int64_t>{60, 48, 3}));
}

TEST(AffineShift, ZeroIsIdentityAndShiftUnshift) {
    Rng rng(Seed{5});
    IntegerSeries x;
    for (int i = 0; i < 500; ++i) x.values.push_back(static_cast<std::int64_t>(rng.next_u64() % 1000) - 500);
    EXPECT_EQ(affine_shift(x, 0), x);
    for (std::int64_t off : {-77, 1, 32, 123456})
        EXPECT_EQ(affine_shift(affine_shift(x, off), -off), x);
}
