#pragma once

#include "kolmo/generators.hpp"
#include "kolmo/random.hpp"
#include "kolmo/series.hpp"

namespace fixture {

// Gaussian returns whose sd flips between 1 and `high_sd` in regimes of
// uniformly random length [min_len, max_len].
inline kolmo::ReturnSeries two_regime_returns(std::size_t n, kolmo::Seed seed, double high_sd = 3.0,
                                              std::size_t min_len = 1500, std::size_t max_len = 4500) {
    kolmo::Rng rng(seed);
    const auto z = kolmo::gen::iid_gaussian_returns(n, kolmo::derive_seed(seed, 1));
    kolmo::ReturnSeries r;
    r.values.reserve(n);
    bool high = rng.bits(1) != 0;
    std::size_t left = 0;
    for (std::size_t i = 0; i < n; ++i) {
        if (left == 0) {
            high = !high;
            left = min_len + rng.next_u64() % (max_len - min_len + 1);
        }
        --left;
        r.values.push_back(z.values[i] * (high ? high_sd : 1.0));
    }
    return r;
}

constexpr std::size_t kVolClusterLength = 27423;

}  // namespace fixture
