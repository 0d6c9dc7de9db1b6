#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "kolmo/series.hpp"

namespace kolmo {

/// Ordered binary digits, one per element (0 or 1). Not byte-aligned.
struct BitSequence {
    std::vector<std::uint8_t> bits;

    std::size_t size() const noexcept { return bits.size(); }
    bool operator==(const BitSequence&) const = default;
};

/// Integers over the alphabet [0, 2^width). The width travels with the data so
/// a pipeline cannot mix symbol widths by accident.
class SymbolSeries {
public:
    SymbolSeries() = default;
    /// Throws RangeError if a symbol does not fit in `width` bits, or width is
    /// outside [1, 32].
    SymbolSeries(std::vector<std::uint32_t> symbols, int width);

    const std::vector<std::uint32_t>& symbols() const noexcept { return symbols_; }
    int width() const noexcept { return width_; }
    std::size_t size() const noexcept { return symbols_.size(); }
    std::uint64_t alphabet_size() const noexcept { return std::uint64_t{1} << width_; }
    std::uint32_t operator[](std::size_t i) const { return symbols_[i]; }

    bool operator==(const SymbolSeries&) const = default;

private:
    std::vector<std::uint32_t> symbols_;
    int width_ = 8;
};

BitSequence bits_from_string(std::string_view digits);  // "0110" -> bits; ignores spaces
std::string to_string(const BitSequence& bits);

/// Big-endian within each symbol: 60 at width 6 -> 111100.
BitSequence symbols_to_bits(const SymbolSeries& symbols);
BitSequence symbols_to_bits(std::span<const std::int64_t> values, int width);
SymbolSeries bits_to_symbols(const BitSequence& bits, int width);

/// Four bits per decimal digit: 1,4,1,5 -> 0001 0100 0001 0101.
BitSequence decimal_digits_to_nibbles(const IntegerSeries& digits);

/// Bits at offset, offset+k, offset+2k, ...
BitSequence take_every_kth(const BitSequence& bits, int k, int offset);

/// Each bit repeated k times. take_every_kth(duplicate_each_bit(b, k), k, j) == b.
BitSequence duplicate_each_bit(const BitSequence& bits, int k);

/// MSB-first byte packing, last byte zero-padded.
std::vector<std::uint8_t> pack_bits(const BitSequence& bits);
BitSequence unpack_bits(std::span<const std::uint8_t> bytes, std::uint64_t bit_length);

/// The byte stream a coder sees: width-8 symbols one per byte, anything else
/// bit-packed MSB-first. Returns the bytes; `original_bits` receives
/// count * width.
std::vector<std::uint8_t> symbols_to_bytes(const SymbolSeries& symbols, std::uint64_t* original_bits = nullptr);
SymbolSeries bytes_to_symbols(std::span<const std::uint8_t> bytes, int width);  // width 8 only, or exact packing

/// On-disk SymbolSeries. Width 8: the raw bytes, no header. Other widths:
/// byte 0 = 0xB0 | padding, byte 1 = width, then packed bits.
std::vector<std::uint8_t> encode_symbol_file(const SymbolSeries& symbols);
/// `width` must be given for headerless width-8 files; pass 0 to require a header.
SymbolSeries decode_symbol_file(std::span<const std::uint8_t> bytes, int width);

/// BitSequence files use the headered format with width 1.
std::vector<std::uint8_t> encode_bit_file(const BitSequence& bits);
BitSequence decode_bit_file(std::span<const std::uint8_t> bytes);

}  // namespace kolmo
