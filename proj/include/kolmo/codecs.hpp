#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "kolmo/bitcodec.hpp"

namespace kolmo {

/// The coder family. The numeric values are the on-disk coder ids.
enum class Coder : std::uint8_t {
    huffman = 1,  // static canonical Huffman over bytes
    rle = 2,      // run-length, runs signalled by a repeated byte
    lz = 3,       // LZ77 with adaptive arithmetic-coded tokens
    cm = 4,       // bitwise context mixing, orders 0..k plus sparse contexts
};

inline constexpr Coder kAllCoders[] = {Coder::huffman, Coder::rle, Coder::lz, Coder::cm};

std::string to_string(Coder coder);
Coder coder_from_string(const std::string& name);

/// Sizes are in bits. compressed_bits counts the whole archive: container
/// header, checksum, coder tables and payload.
struct CompressionOutcome {
    Coder coder = Coder::huffman;
    std::uint64_t original_bits = 0;
    std::uint64_t compressed_bits = 0;
    double rate = 0.0;
};

/// (original - compressed) / original. Negative when the archive is larger.
double compression_rate(std::uint64_t original_bits, std::uint64_t compressed_bits);

/// Archive layout:
///   bytes 0..3   magic "KCB1"
///   byte  4      coder id
///   bytes 5..12  original length in bits, big-endian
///   bytes 13..   payload; every payload starts with the CRC-32 of the
///                original bytes
struct CompressedBlob {
    std::vector<std::uint8_t> bytes;

    Coder coder() const;
    std::uint64_t original_bits() const;
    std::uint64_t size_bits() const noexcept { return bytes.size() * 8; }
};

struct Decompressed {
    std::vector<std::uint8_t> bytes;  // ceil(bit_length / 8) bytes, zero padded
    std::uint64_t bit_length = 0;
};

/// Compresses ceil(bit_length / 8) bytes of `data`. Huffman rejects empty input.
CompressedBlob compress(Coder coder, std::span<const std::uint8_t> data, std::uint64_t bit_length);
inline CompressedBlob compress(Coder coder, std::span<const std::uint8_t> data) {
    return compress(coder, data, data.size() * 8);
}

/// Throws IntegrityError on any malformed or corrupted archive.
Decompressed decompress(const CompressedBlob& blob);

/// Compresses the coder view of a symbol series (width 8: one byte per
/// symbol; other widths: MSB-first packed bits) and reports the outcome.
struct SymbolCompression {
    CompressedBlob blob;
    CompressionOutcome outcome;
};
SymbolCompression compress_symbols(Coder coder, const SymbolSeries& symbols);
SymbolSeries decompress_symbols(const CompressedBlob& blob, int width);

CompressionOutcome measure(Coder coder, std::span<const std::uint8_t> data, std::uint64_t bit_length);
CompressionOutcome measure(Coder coder, const SymbolSeries& symbols);
CompressionOutcome measure(Coder coder, const BitSequence& bits);

// Per-coder entry points.
inline SymbolCompression huffman_compress(const SymbolSeries& s) { return compress_symbols(Coder::huffman, s); }
inline SymbolCompression rle_compress(const SymbolSeries& s) { return compress_symbols(Coder::rle, s); }
inline SymbolCompression lz_compress(const SymbolSeries& s) { return compress_symbols(Coder::lz, s); }
inline SymbolCompression cm_compress(const SymbolSeries& s) { return compress_symbols(Coder::cm, s); }
inline SymbolSeries huffman_decompress(const CompressedBlob& b, int width = 8) { return decompress_symbols(b, width); }
inline SymbolSeries rle_decompress(const CompressedBlob& b, int width = 8) { return decompress_symbols(b, width); }
inline SymbolSeries lz_decompress(const CompressedBlob& b, int width = 8) { return decompress_symbols(b, width); }
inline SymbolSeries cm_decompress(const CompressedBlob& b, int width = 8) { return decompress_symbols(b, width); }

namespace codec_detail {
// Raw payload coders (no container, no checksum). `n` is the byte count.
std::vector<std::uint8_t> huffman_encode(std::span<const std::uint8_t> data);
std::vector<std::uint8_t> huffman_decode(std::span<const std::uint8_t> payload, std::size_t n);
std::vector<std::uint8_t> rle_encode(std::span<const std::uint8_t> data);
std::vector<std::uint8_t> rle_decode(std::span<const std::uint8_t> payload, std::size_t n);
std::vector<std::uint8_t> lz_encode(std::span<const std::uint8_t> data);
std::vector<std::uint8_t> lz_decode(std::span<const std::uint8_t> payload, std::size_t n);
std::vector<std::uint8_t> cm_encode(std::span<const std::uint8_t> data);
std::vector<std::uint8_t> cm_decode(std::span<const std::uint8_t> payload, std::size_t n);
}  // namespace codec_detail

}  // namespace kolmo
