#include "kolmo/generators.hpp"

#include <bit>
#include <cmath>

#include "kolmo/error.hpp"
#include "kolmo/numeric.hpp"

namespace kolmo::gen {

BitSequence alternating(std::size_t n) {
    BitSequence out;
    out.bits.resize(n);
    for (std::size_t i = 0; i < n; ++i) out.bits[i] = static_cast<std::uint8_t>(i & 1u);
    return out;
}

BitSequence thue_morse(std::size_t n) {
    BitSequence out;
    out.bits.resize(n);
    for (std::size_t i = 0; i < n; ++i) out.bits[i] = static_cast<std::uint8_t>(std::popcount(i) & 1);
    return out;
}

BitSequence champernowne_binary(std::size_t n) {
    BitSequence out;
    out.bits.reserve(n);
    if (n > 0) out.bits.push_back(0);
    for (std::uint64_t k = 1; out.bits.size() < n; ++k) {
        for (int b = std::bit_width(k) - 1; b >= 0 && out.bits.size() < n; --b)
            out.bits.push_back(static_cast<std::uint8_t>((k >> b) & 1u));
    }
    return out;
}

BitSequence bernoulli_bits(std::size_t n, double p_one, Seed seed) {
    if (!(p_one >= 0.0 && p_one <= 1.0)) throw RangeError("bernoulli_bits: p_one must be in [0, 1]");
    Rng rng(seed);
    BitSequence out;
    out.bits.resize(n);
    for (auto& b : out.bits) b = rng.uniform() < p_one ? 1 : 0;
    return out;
}

ReturnSeries iid_gaussian_returns(std::size_t n, Seed seed) {
    Rng rng(seed);
    ReturnSeries out;
    out.values.resize(n);
    for (auto& v : out.values) v = numeric::normal_quantile(rng.uniform_open());
    return out;
}

SymbolSeries uniform_symbols(std::size_t n, int width, Seed seed) {
    if (width < 1 || width > 32) throw RangeError("uniform_symbols: width must be in [1, 32]");
    Rng rng(seed);
    std::vector<std::uint32_t> syms(n);
    for (auto& s : syms) s = rng.bits(width);
    return SymbolSeries(std::move(syms), width);
}

SymbolSeries embed_low_bit_cycle(const SymbolSeries& symbols, int cycle_bits, std::uint64_t phase) {
    if (cycle_bits < 1 || cycle_bits >= symbols.width())
        throw RangeError("embed_low_bit_cycle: cycle_bits must be in [1, width)");
    const std::uint32_t mask = (1u << cycle_bits) - 1u;
    std::vector<std::uint32_t> out(symbols.symbols());
    for (std::size_t t = 0; t < out.size(); ++t)
        out[t] = (out[t] & ~mask) | static_cast<std::uint32_t>((t + phase) & mask);
    return SymbolSeries(std::move(out), symbols.width());
}

ReturnSeries symbols_to_returns(const SymbolSeries& symbols, const BoundsTable& bounds, Seed seed) {
    if (symbols.width() != bounds.width())
        throw RangeError("symbols_to_returns: symbol width " + std::to_string(symbols.width()) +
                         " does not match bounds width " + std::to_string(bounds.width()));
    const auto& b = bounds.bounds();
    Rng rng(seed);
    ReturnSeries out;
    out.values.resize(symbols.size());
    for (std::size_t i = 0; i < symbols.size(); ++i) {
        const auto s = symbols[i];
        const double lo = b[s], hi = b[s + 1];
        const double u = rng.uniform_open();
        double x;
        if (std::isinf(lo) || std::isinf(hi)) {
            const double plo = std::isinf(lo) ? 0.0 : numeric::normal_cdf(lo);
            const double phi = std::isinf(hi) ? 1.0 : numeric::normal_cdf(hi);
            x = numeric::normal_quantile(plo + u * (phi - plo));
        } else {
            x = lo + u * (hi - lo);
        }
        // Keep the draw inside [lo, hi) despite rounding.
        if (x < lo) x = lo;
        if (x >= hi) x = std::nextafter(hi, -HUGE_VAL);
        out.values[i] = x;
    }
    return out;
}

ReturnSeries hidden_cycle_returns(std::size_t n, int cycle_bits, Seed seed) {
    const auto text = uniform_symbols(n, 8, derive_seed(seed, 1));
    const auto biased = embed_low_bit_cycle(text, cycle_bits);
    return symbols_to_returns(biased, normal_quantile_bounds(8), derive_seed(seed, 2));
}

SymbolSeries pi_bytes(std::size_t digits) {
    if (digits % 2 != 0) throw SizeError("pi_bytes: digit count must be even to fill whole bytes");
    return bits_to_symbols(decimal_digits_to_nibbles(pi_decimal_digits(digits)), 8);
}

ReturnSeries pi_returns(std::size_t digits, Seed seed) {
    return symbols_to_returns(pi_bytes(digits), normal_quantile_bounds(8), seed);
}

BitSequence toy_bit_source(std::size_t n_prices, Seed seed) {
    if (n_prices < 1) throw SizeError("toy_price_series: need at least one price");
    return bernoulli_bits(3 * (n_prices - 1), 0.5, seed);
}

PriceSeries toy_price_series(std::size_t n_prices, Seed seed) {
    const auto e5 = duplicate_each_bit(toy_bit_source(n_prices, seed), 2);
    const auto e3 = bits_to_symbols(e5, 6);
    PriceSeries out;
    out.values.reserve(n_prices);
    std::int64_t price = 1000;
    out.values.push_back(static_cast<double>(price));
    for (auto s : e3.symbols()) {
        price += static_cast<std::int64_t>(s) - 32;
        if (price <= 0) throw DomainError("toy_price_series: walk left the positive range; request fewer prices");
        out.values.push_back(static_cast<double>(price));
    }
    return out;
}

}  // namespace kolmo::gen
