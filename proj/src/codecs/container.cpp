#include <boost/crc.hpp>
#include <cmath>

#include "kolmo/codecs.hpp"
#include "kolmo/error.hpp"

namespace kolmo {
namespace {

constexpr std::uint8_t kMagic[4] = {'K', 'C', 'B', '1'};
constexpr std::size_t kHeaderBytes = 13;
constexpr std::size_t kCrcBytes = 4;

std::uint32_t crc32(std::span<const std::uint8_t> data) {
    boost::crc_32_type crc;
    crc.process_bytes(data.data(), data.size());
    return crc.checksum();
}

void put_be(std::vector<std::uint8_t>& out, std::uint64_t v, int bytes) {
    for (int i = bytes - 1; i >= 0; --i) out.push_back(static_cast<std::uint8_t>(v >> (8 * i)));
}

std::uint64_t get_be(std::span<const std::uint8_t> in, int bytes) {
    std::uint64_t v = 0;
    for (int i = 0; i < bytes; ++i) v = (v << 8) | in[static_cast<std::size_t>(i)];
    return v;
}

}  // namespace

std::string to_string(Coder coder) {
    switch (coder) {
        case Coder::huffman: return "huffman";
        case Coder::rle: return "rle";
        case Coder::lz: return "lz";
        case Coder::cm: return "cm";
    }
    return "?";
}

Coder coder_from_string(const std::string& name) {
    if (name == "huffman") return Coder::huffman;
    if (name == "rle") return Coder::rle;
    if (name == "lz") return Coder::lz;
    if (name == "cm") return Coder::cm;
    throw UsageError("unknown coder '" + name + "' (expected huffman, rle, lz or cm)");
}

double compression_rate(std::uint64_t original_bits, std::uint64_t compressed_bits) {
    if (original_bits == 0) throw DomainError("compression_rate: original size is zero");
    return (static_cast<double>(original_bits) - static_cast<double>(compressed_bits)) /
           static_cast<double>(original_bits);
}

Coder CompressedBlob::coder() const {
    if (bytes.size() < kHeaderBytes) throw IntegrityError("archive shorter than its header");
    const auto id = bytes[4];
    if (id < 1 || id > 4) throw IntegrityError("unknown coder id " + std::to_string(id));
    return static_cast<Coder>(id);
}

std::uint64_t CompressedBlob::original_bits() const {
    if (bytes.size() < kHeaderBytes) throw IntegrityError("archive shorter than its header");
    return get_be(std::span(bytes).subspan(5, 8), 8);
}

CompressedBlob compress(Coder coder, std::span<const std::uint8_t> data, std::uint64_t bit_length) {
    const std::size_t n = static_cast<std::size_t>((bit_length + 7) / 8);
    if (n > data.size())
        throw SizeError("compress: " + std::to_string(bit_length) + " bits requested from " +
                        std::to_string(data.size()) + " bytes");
    const auto input = data.first(n);

    std::vector<std::uint8_t> payload;
    switch (coder) {
        case Coder::huffman: payload = codec_detail::huffman_encode(input); break;
        case Coder::rle: payload = codec_detail::rle_encode(input); break;
        case Coder::lz: payload = codec_detail::lz_encode(input); break;
        case Coder::cm: payload = codec_detail::cm_encode(input); break;
    }

    CompressedBlob blob;
    blob.bytes.reserve(kHeaderBytes + kCrcBytes + payload.size());
    blob.bytes.insert(blob.bytes.end(), std::begin(kMagic), std::end(kMagic));
    blob.bytes.push_back(static_cast<std::uint8_t>(coder));
    put_be(blob.bytes, bit_length, 8);
    put_be(blob.bytes, crc32(input), 4);
    blob.bytes.insert(blob.bytes.end(), payload.begin(), payload.end());
    return blob;
}

Decompressed decompress(const CompressedBlob& blob) {
    const auto& b = blob.bytes;
    if (b.size() < kHeaderBytes + kCrcBytes) throw IntegrityError("archive truncated");
    if (!std::equal(std::begin(kMagic), std::end(kMagic), b.begin())) throw IntegrityError("bad archive magic");
    const Coder coder = blob.coder();
    const std::uint64_t bits = blob.original_bits();
    if (bits > (std::uint64_t{1} << 40)) throw IntegrityError("implausible original length");
    const auto n = static_cast<std::size_t>((bits + 7) / 8);
    const auto expected_crc = static_cast<std::uint32_t>(get_be(std::span(b).subspan(kHeaderBytes, 4), 4));
    const auto payload = std::span(b).subspan(kHeaderBytes + kCrcBytes);

    Decompressed out;
    out.bit_length = bits;
    switch (coder) {
        case Coder::huffman: out.bytes = codec_detail::huffman_decode(payload, n); break;
        case Coder::rle: out.bytes = codec_detail::rle_decode(payload, n); break;
        case Coder::lz: out.bytes = codec_detail::lz_decode(payload, n); break;
        case Coder::cm: out.bytes = codec_detail::cm_decode(payload, n); break;
    }
    if (out.bytes.size() != n || crc32(out.bytes) != expected_crc)
        throw IntegrityError("archive checksum mismatch (" + to_string(coder) + ")");
    return out;
}

SymbolCompression compress_symbols(Coder coder, const SymbolSeries& symbols) {
    std::uint64_t bits = 0;
    const auto bytes = symbols_to_bytes(symbols, &bits);
    SymbolCompression out{compress(coder, bytes, bits), {}};
    out.outcome = {coder, bits, out.blob.size_bits(), bits ? compression_rate(bits, out.blob.size_bits()) : 0.0};
    return out;
}

SymbolSeries decompress_symbols(const CompressedBlob& blob, int width) {
    const auto d = decompress(blob);
    if (d.bit_length % static_cast<std::uint64_t>(width) != 0)
        throw IntegrityError("archive length is not a whole number of width-" + std::to_string(width) + " symbols");
    if (width == 8) return SymbolSeries({d.bytes.begin(), d.bytes.end()}, 8);
    return bits_to_symbols(unpack_bits(d.bytes, d.bit_length), width);
}

CompressionOutcome measure(Coder coder, std::span<const std::uint8_t> data, std::uint64_t bit_length) {
    const auto blob = compress(coder, data, bit_length);
    return {coder, bit_length, blob.size_bits(), compression_rate(bit_length, blob.size_bits())};
}

CompressionOutcome measure(Coder coder, const SymbolSeries& symbols) {
    return compress_symbols(coder, symbols).outcome;
}

CompressionOutcome measure(Coder coder, const BitSequence& bits) {
    const auto bytes = pack_bits(bits);
    return measure(coder, bytes, bits.size());
}

}  // namespace kolmo
