#include "kolmo/bitcodec.hpp"

#include <string>

#include "kolmo/error.hpp"

namespace kolmo {
namespace {

constexpr std::uint8_t kHeaderMagic = 0xB0;

void check_width(int width) {
    if (width < 1 || width > 32) throw RangeError("symbol width must be in [1, 32], got " + std::to_string(width));
}

}  // namespace

SymbolSeries::SymbolSeries(std::vector<std::uint32_t> symbols, int width)
    : symbols_(std::move(symbols)), width_(width) {
    check_width(width);
    if (width < 32) {
        const std::uint64_t limit = std::uint64_t{1} << width;
        for (std::size_t i = 0; i < symbols_.size(); ++i) {
            if (symbols_[i] >= limit)
                throw RangeError("symbol " + std::to_string(symbols_[i]) + " at index " + std::to_string(i) +
                                 " does not fit in " + std::to_string(width) + " bits");
        }
    }
}

BitSequence bits_from_string(std::string_view digits) {
    BitSequence out;
    out.bits.reserve(digits.size());
    for (char c : digits) {
        if (c == '0' || c == '1') {
            out.bits.push_back(static_cast<std::uint8_t>(c - '0'));
        } else if (c != ' ' && c != ',' && c != '\n') {
            throw ParseError(std::string("invalid bit character '") + c + "'");
        }
    }
    return out;
}

std::string to_string(const BitSequence& bits) {
    std::string s;
    s.reserve(bits.size());
    for (auto b : bits.bits) s.push_back(b ? '1' : '0');
    return s;
}

BitSequence symbols_to_bits(const SymbolSeries& symbols) {
    const int w = symbols.width();
    BitSequence out;
    out.bits.reserve(symbols.size() * static_cast<std::size_t>(w));
    for (auto s : symbols.symbols()) {
        for (int b = w - 1; b >= 0; --b) out.bits.push_back(static_cast<std::uint8_t>((s >> b) & 1u));
    }
    return out;
}

BitSequence symbols_to_bits(std::span<const std::int64_t> values, int width) {
    check_width(width);
    std::vector<std::uint32_t> syms;
    syms.reserve(values.size());
    const std::int64_t limit = std::int64_t{1} << width;
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (values[i] < 0 || values[i] >= limit)
            throw RangeError("value " + std::to_string(values[i]) + " at index " + std::to_string(i) +
                             " does not fit in " + std::to_string(width) + " bits");
        syms.push_back(static_cast<std::uint32_t>(values[i]));
    }
    return symbols_to_bits(SymbolSeries(std::move(syms), width));
}

SymbolSeries bits_to_symbols(const BitSequence& bits, int width) {
    check_width(width);
    const auto w = static_cast<std::size_t>(width);
    if (bits.size() % w != 0)
        throw SizeError("bits_to_symbols: " + std::to_string(bits.size()) + " bits not divisible by width " +
                        std::to_string(width));
    std::vector<std::uint32_t> syms(bits.size() / w);
    for (std::size_t i = 0; i < syms.size(); ++i) {
        std::uint32_t v = 0;
        for (std::size_t b = 0; b < w; ++b) v = (v << 1) | bits.bits[i * w + b];
        syms[i] = v;
    }
    return SymbolSeries(std::move(syms), width);
}

BitSequence decimal_digits_to_nibbles(const IntegerSeries& digits) {
    for (std::size_t i = 0; i < digits.size(); ++i) {
        if (digits.values[i] < 0 || digits.values[i] > 9)
            throw RangeError("decimal digit " + std::to_string(digits.values[i]) + " at index " + std::to_string(i) +
                             " outside [0, 9]");
    }
    return symbols_to_bits(digits.values, 4);
}

BitSequence take_every_kth(const BitSequence& bits, int k, int offset) {
    if (k < 1) throw RangeError("take_every_kth: k must be >= 1");
    if (offset < 0 || offset >= k) throw RangeError("take_every_kth: offset must be in [0, k)");
    BitSequence out;
    out.bits.reserve(bits.size() / static_cast<std::size_t>(k) + 1);
    for (std::size_t i = static_cast<std::size_t>(offset); i < bits.size(); i += static_cast<std::size_t>(k))
        out.bits.push_back(bits.bits[i]);
    return out;
}

BitSequence duplicate_each_bit(const BitSequence& bits, int k) {
    if (k < 1) throw RangeError("duplicate_each_bit: k must be >= 1");
    BitSequence out;
    out.bits.reserve(bits.size() * static_cast<std::size_t>(k));
    for (auto b : bits.bits) out.bits.insert(out.bits.end(), static_cast<std::size_t>(k), b);
    return out;
}

std::vector<std::uint8_t> pack_bits(const BitSequence& bits) {
    std::vector<std::uint8_t> out((bits.size() + 7) / 8, 0);
    for (std::size_t i = 0; i < bits.size(); ++i) {
        if (bits.bits[i]) out[i / 8] |= static_cast<std::uint8_t>(0x80u >> (i % 8));
    }
    return out;
}

BitSequence unpack_bits(std::span<const std::uint8_t> bytes, std::uint64_t bit_length) {
    if (bit_length > bytes.size() * 8ull)
        throw SizeError("unpack_bits: " + std::to_string(bit_length) + " bits requested from " +
                        std::to_string(bytes.size()) + " bytes");
    BitSequence out;
    out.bits.resize(bit_length);
    for (std::size_t i = 0; i < bit_length; ++i) out.bits[i] = (bytes[i / 8] >> (7 - i % 8)) & 1u;
    return out;
}

std::vector<std::uint8_t> symbols_to_bytes(const SymbolSeries& symbols, std::uint64_t* original_bits) {
    if (original_bits) *original_bits = symbols.size() * static_cast<std::uint64_t>(symbols.width());
    if (symbols.width() == 8) return {symbols.symbols().begin(), symbols.symbols().end()};
    return pack_bits(symbols_to_bits(symbols));
}

SymbolSeries bytes_to_symbols(std::span<const std::uint8_t> bytes, int width) {
    if (width == 8) return SymbolSeries({bytes.begin(), bytes.end()}, 8);
    const std::uint64_t total = bytes.size() * 8ull;
    return bits_to_symbols(unpack_bits(bytes, total - total % static_cast<std::uint64_t>(width)), width);
}

std::vector<std::uint8_t> encode_symbol_file(const SymbolSeries& symbols) {
    if (symbols.width() == 8) return symbols_to_bytes(symbols);
    if (symbols.width() > 255) throw RangeError("width too large for file header");
    const auto bits = symbols_to_bits(symbols);
    const auto pad = static_cast<std::uint8_t>((8 - bits.size() % 8) % 8);
    std::vector<std::uint8_t> out{static_cast<std::uint8_t>(kHeaderMagic | pad),
                                  static_cast<std::uint8_t>(symbols.width())};
    const auto packed = pack_bits(bits);
    out.insert(out.end(), packed.begin(), packed.end());
    return out;
}

SymbolSeries decode_symbol_file(std::span<const std::uint8_t> bytes, int width) {
    if (width == 8) return SymbolSeries({bytes.begin(), bytes.end()}, 8);
    if (bytes.size() < 2 || (bytes[0] & 0xF8) != kHeaderMagic)
        throw IntegrityError("symbol file: missing or corrupt 2-byte header");
    const int pad = bytes[0] & 0x07;
    const int file_width = bytes[1];
    if (width != 0 && file_width != width)
        throw IntegrityError("symbol file: header width " + std::to_string(file_width) + " but " +
                             std::to_string(width) + " expected");
    const auto payload = bytes.subspan(2);
    const std::uint64_t nbits = payload.size() * 8ull;
    if (payload.empty() ? pad != 0 : static_cast<std::uint64_t>(pad) >= 8)
        throw IntegrityError("symbol file: invalid padding");
    return bits_to_symbols(unpack_bits(payload, nbits - static_cast<std::uint64_t>(pad)), file_width);
}

std::vector<std::uint8_t> encode_bit_file(const BitSequence& bits) {
    std::vector<std::uint32_t> syms(bits.bits.begin(), bits.bits.end());
    return encode_symbol_file(SymbolSeries(std::move(syms), 1));
}

BitSequence decode_bit_file(std::span<const std::uint8_t> bytes) {
    const auto s = decode_symbol_file(bytes, 1);
    BitSequence out;
    out.bits.assign(s.symbols().begin(), s.symbols().end());
    return out;
}

}  // namespace kolmo
