#include <gtest/gtest.h>

#include "kolmo/bitcodec.hpp"
#include "kolmo/error.hpp"
#include "kolmo/random.hpp"

using namespace kolmo;

namespace {

SymbolSeries random_symbols(std::size_t n, int width, std::uint64_t seed) {
    Rng rng(Seed{seed});
    std::vector<std::uint32_t> v(n);
    for (auto& s : v) s = rng.bits(width);
    return SymbolSeries(v, width);
}

BitSequence random_bits(std::size_t n, std::uint64_t seed) {
    Rng rng(Seed{seed});
    BitSequence b;
    for (std::size_t i = 0; i < n; ++i) b.bits.push_back(static_cast<std::uint8_t>(rng.bits(1)));
    return b;
}

}  // namespace

TEST(SymbolsToBits, WorkedExample) {
    EXPECT_EQ(to_string(symbols_to_bits(SymbolSeries({60, 48}, 6))), "111100110000");
    EXPECT_EQ(to_string(symbols_to_bits(SymbolSeries({0}, 6))), "000000");
}

TEST(SymbolsToBits, RejectsOutOfRange) {
    EXPECT_THROW(SymbolSeries({64}, 6), RangeError);
    const std::vector<std::int64_t> v{-1};
    EXPECT_THROW(symbols_to_bits(v, 6), RangeError);
}

TEST(BitsToSymbols, PiNibbleRegrouping) {
    const auto s = bits_to_symbols(bits_from_string("00010100 00010101"), 8);
    EXPECT_EQ(s.symbols(), (std::vector<std::uint32_t>{20, 21}));
    EXPECT_EQ(bits_to_symbols(BitSequence{}, 8).size(), 0u);
    EXPECT_THROW(bits_to_symbols(bits_from_string("101"), 2), SizeError);
}

TEST(BitsToSymbols, RoundTrip) {
    for (int width : {1, 3, 6, 8, 13, 32}) {
        const auto s = random_symbols(333, width, 100 + width);
        EXPECT_EQ(bits_to_symbols(symbols_to_bits(s), width), s) << "width " << width;
    }
}

TEST(DecimalNibbles, Examples) {
    EXPECT_EQ(to_string(decimal_digits_to_nibbles(IntegerSeries{{1, 4, 1, 5}})), "0001010000010101");
    EXPECT_EQ(to_string(decimal_digits_to_nibbles(IntegerSeries{{0}})), "0000");
    EXPECT_THROW(decimal_digits_to_nibbles(IntegerSeries{{10}}), RangeError);
    IntegerSeries many;
    many.values.assign(50000, 7);
    EXPECT_EQ(decimal_digits_to_nibbles(many).size(), 200000u);
}

TEST(TakeEveryKth, Examples) {
    EXPECT_EQ(to_string(take_every_kth(bits_from_string("1111001100"), 2, 0)), "11010");
    const auto b = random_bits(101, 3);
    EXPECT_EQ(take_every_kth(b, 1, 0), b);
    EXPECT_THROW(take_every_kth(b, 2, 2), RangeError);
    EXPECT_THROW(take_every_kth(b, 0, 0), RangeError);
}

TEST(TakeEveryKth, WorkedExampleE6) {
    const std::vector<std::int64_t> e3{60, 48, 3, 15, 51, 63, 63, 63, 12, 0, 63, 60, 15, 15};
    const auto e5 = symbols_to_bits(e3, 6);
    EXPECT_EQ(to_string(take_every_kth(e5, 2, 0)), "110100001011101111111111010000111110011011");
}

TEST(DuplicateEachBit, Examples) {
    EXPECT_EQ(to_string(duplicate_each_bit(bits_from_string("110"), 2)), "111100");
    const auto b = random_bits(77, 9);
    EXPECT_EQ(duplicate_each_bit(b, 1), b);
    for (int k : {2, 3, 5}) EXPECT_EQ(take_every_kth(duplicate_each_bit(b, k), k, k - 1), b);
}

TEST(PackBits, RoundTripOddLengths) {
    for (std::size_t n : {0u, 1u, 7u, 8u, 9u, 1001u}) {
        const auto b = random_bits(n, n + 1);
        const auto packed = pack_bits(b);
        EXPECT_EQ(packed.size(), (n + 7) / 8);
        EXPECT_EQ(unpack_bits(packed, n), b);
    }
}

TEST(SymbolFile, RoundTripAndCorruption) {
    const auto s = random_symbols(1000, 6, 4);
    auto file = encode_symbol_file(s);
    EXPECT_EQ(decode_symbol_file(file, 6), s);
    EXPECT_THROW(decode_symbol_file(file, 5), IntegrityError);
    EXPECT_EQ(decode_symbol_file(file, 0), s);
    file.resize(1);
    EXPECT_THROW(decode_symbol_file(file, 6), IntegrityError);
}

TEST(BitFile, RoundTrip) {
    const auto b = random_bits(12345, 8);
    EXPECT_EQ(decode_bit_file(encode_bit_file(b)), b);
}
