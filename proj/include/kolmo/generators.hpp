#pragma once

#include <cstdint>

#include "kolmo/bitcodec.hpp"
#include "kolmo/discretize.hpp"
#include "kolmo/random.hpp"
#include "kolmo/series.hpp"

namespace kolmo::gen {

/// "01" repeated: 0101...
BitSequence alternating(std::size_t n);

/// Digit i is the parity of popcount(i): 0110100110010110...
BitSequence thue_morse(std::size_t n);

/// Binary expansions of 0, 1, 2, 3, ... concatenated: 0 1 10 11 100 ...
BitSequence champernowne_binary(std::size_t n);

/// First n decimals of pi after "3.", exact integer arithmetic.
IntegerSeries pi_decimal_digits(std::size_t n);

BitSequence bernoulli_bits(std::size_t n, double p_one, Seed seed);

/// Standard normal draws by inverse CDF of 53-bit uniforms.
ReturnSeries iid_gaussian_returns(std::size_t n, Seed seed);

/// i.i.d. uniform over [0, 2^width).
SymbolSeries uniform_symbols(std::size_t n, int width, Seed seed);

/// Overwrites the lowest `cycle_bits` bits of symbol t with (t + phase) mod 2^cycle_bits.
SymbolSeries embed_low_bit_cycle(const SymbolSeries& symbols, int cycle_bits, std::uint64_t phase = 0);

/// Value i drawn uniformly inside bin symbols[i] of `bounds`; infinite end bins
/// are sampled through the normal inverse CDF restricted to the bin. Re-running
/// discretize_with_bounds with the same table returns `symbols` exactly.
ReturnSeries symbols_to_returns(const SymbolSeries& symbols, const BoundsTable& bounds, Seed seed);

/// The hidden-structure series: uniform bytes with a low-bit counter mapped to
/// returns through the width-8 normal-quantile table.
ReturnSeries hidden_cycle_returns(std::size_t n, int cycle_bits, Seed seed);

/// Bytes obtained by writing each decimal of pi as a 4-bit nibble and
/// regrouping the bit string into bytes (1,4,1,5 -> 20, 21). `digits` must be even.
SymbolSeries pi_bytes(std::size_t digits);

/// pi_bytes mapped to returns through the width-8 normal-quantile table.
ReturnSeries pi_returns(std::size_t digits, Seed seed);

/// Source bits of the toy price series: 3 bits per price increment.
BitSequence toy_bit_source(std::size_t n_prices, Seed seed);

/// Toy series built by running the worked example backwards: source bits,
/// each doubled, cut into 6-bit integers, minus 32, accumulated from 1000.
PriceSeries toy_price_series(std::size_t n_prices, Seed seed);

}  // namespace kolmo::gen
