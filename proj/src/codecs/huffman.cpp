// Static canonical Huffman over bytes.
// Payload: 128 bytes of packed 4-bit code lengths (symbol 2i in the high
// nibble), then the code stream MSB-first, zero padded.

#include <algorithm>
#include <array>
#include <queue>

#include "kolmo/codecs.hpp"
#include "kolmo/error.hpp"

namespace kolmo::codec_detail {
namespace {

constexpr int kMaxLength = 15;
constexpr std::size_t kTableBytes = 128;

using Lengths = std::array<std::uint8_t, 256>;

// Plain Huffman lengths; retried with flattened counts until they fit in 15 bits.
Lengths code_lengths(std::array<std::uint64_t, 256> freq) {
    for (;;) {
        struct Node {
            std::uint64_t weight;
            int index;
        };
        auto heavier = [](const Node& a, const Node& b) {
            return a.weight != b.weight ? a.weight > b.weight : a.index > b.index;
        };
        std::priority_queue<Node, std::vector<Node>, decltype(heavier)> heap(heavier);
        std::vector<int> parent(512, -1);
        int next = 256;
        for (int s = 0; s < 256; ++s)
            if (freq[static_cast<std::size_t>(s)]) heap.push({freq[static_cast<std::size_t>(s)], s});

        Lengths len{};
        if (heap.size() == 1) {
            len[static_cast<std::size_t>(heap.top().index)] = 1;
            return len;
        }
        while (heap.size() > 1) {
            const Node a = heap.top();
            heap.pop();
            const Node b = heap.top();
            heap.pop();
            parent[static_cast<std::size_t>(a.index)] = next;
            parent[static_cast<std::size_t>(b.index)] = next;
            heap.push({a.weight + b.weight, next++});
        }
        int longest = 0;
        for (int s = 0; s < 256; ++s) {
            if (!freq[static_cast<std::size_t>(s)]) continue;
            int depth = 0;
            for (int v = s; parent[static_cast<std::size_t>(v)] >= 0; v = parent[static_cast<std::size_t>(v)]) ++depth;
            len[static_cast<std::size_t>(s)] = static_cast<std::uint8_t>(depth);
            longest = std::max(longest, depth);
        }
        if (longest <= kMaxLength) return len;
        for (auto& f : freq)
            if (f) f = (f + 1) / 2;
    }
}

// Canonical codes: shorter first, ties by symbol value.
std::array<std::uint32_t, 256> canonical_codes(const Lengths& len) {
    std::array<int, kMaxLength + 2> count{};
    for (auto l : len) ++count[l];
    count[0] = 0;
    std::array<std::uint32_t, kMaxLength + 2> next{};
    std::uint32_t code = 0;
    for (int l = 1; l <= kMaxLength; ++l) {
        code = (code + static_cast<std::uint32_t>(count[static_cast<std::size_t>(l - 1)])) << 1;
        next[static_cast<std::size_t>(l)] = code;
    }
    std::array<std::uint32_t, 256> codes{};
    for (int s = 0; s < 256; ++s)
        if (len[static_cast<std::size_t>(s)]) codes[static_cast<std::size_t>(s)] = next[len[static_cast<std::size_t>(s)]]++;
    return codes;
}

}  // namespace

std::vector<std::uint8_t> huffman_encode(std::span<const std::uint8_t> data) {
    if (data.empty()) throw SizeError("huffman: empty input");
    std::array<std::uint64_t, 256> freq{};
    for (auto b : data) ++freq[b];
    const Lengths len = code_lengths(freq);
    const auto codes = canonical_codes(len);

    std::vector<std::uint8_t> out;
    out.reserve(kTableBytes + data.size());
    for (std::size_t i = 0; i < 256; i += 2) out.push_back(static_cast<std::uint8_t>((len[i] << 4) | len[i + 1]));

    std::uint64_t acc = 0;
    int filled = 0;
    for (auto b : data) {
        acc = (acc << len[b]) | codes[b];
        filled += len[b];
        while (filled >= 8) {
            filled -= 8;
            out.push_back(static_cast<std::uint8_t>(acc >> filled));
        }
    }
    if (filled > 0) out.push_back(static_cast<std::uint8_t>(acc << (8 - filled)));
    return out;
}

std::vector<std::uint8_t> huffman_decode(std::span<const std::uint8_t> payload, std::size_t n) {
    if (payload.size() < kTableBytes) throw IntegrityError("huffman: truncated code table");
    Lengths len{};
    for (std::size_t i = 0; i < kTableBytes; ++i) {
        len[2 * i] = payload[i] >> 4;
        len[2 * i + 1] = payload[i] & 0x0F;
    }

    // Kraft sum must not exceed 1 (a single symbol of length 1 is the one
    // legal incomplete code).
    std::array<int, kMaxLength + 1> count{};
    int used = 0;
    for (auto l : len)
        if (l) {
            ++count[l];
            ++used;
        }
    std::uint64_t kraft = 0;
    for (int l = 1; l <= kMaxLength; ++l) kraft += static_cast<std::uint64_t>(count[static_cast<std::size_t>(l)]) << (kMaxLength - l);
    if (used == 0 || kraft > (1u << kMaxLength)) throw IntegrityError("huffman: invalid code table");
    if (used > 1 && kraft != (1u << kMaxLength)) throw IntegrityError("huffman: incomplete code table");

    // symbols sorted by (length, value); first[l] = first code of length l.
    std::vector<std::uint8_t> sorted;
    for (int l = 1; l <= kMaxLength; ++l)
        for (int s = 0; s < 256; ++s)
            if (len[static_cast<std::size_t>(s)] == l) sorted.push_back(static_cast<std::uint8_t>(s));
    std::array<std::uint32_t, kMaxLength + 2> first{};
    std::array<int, kMaxLength + 2> offset{};
    std::uint32_t code = 0;
    int index = 0;
    for (int l = 1; l <= kMaxLength; ++l) {
        code = (code + static_cast<std::uint32_t>(count[static_cast<std::size_t>(l - 1)])) << 1;
        if (l == 1) code = 0;
        first[static_cast<std::size_t>(l)] = code;
        offset[static_cast<std::size_t>(l)] = index;
        index += count[static_cast<std::size_t>(l)];
    }

    std::vector<std::uint8_t> out;
    out.reserve(n);
    const auto stream = payload.subspan(kTableBytes);
    std::size_t bitpos = 0;
    const std::size_t total_bits = stream.size() * 8;
    while (out.size() < n) {
        std::uint32_t c = 0;
        int l = 0;
        for (;;) {
            if (bitpos >= total_bits) throw IntegrityError("huffman: code stream truncated");
            c = (c << 1) | ((stream[bitpos >> 3] >> (7 - (bitpos & 7))) & 1u);
            ++bitpos;
            ++l;
            if (l > kMaxLength) throw IntegrityError("huffman: invalid code in stream");
            const auto k = static_cast<std::size_t>(l);
            if (count[k] && c - first[k] < static_cast<std::uint32_t>(count[k])) {
                out.push_back(sorted[static_cast<std::size_t>(offset[k]) + (c - first[k])]);
                break;
            }
        }
    }
    return out;
}

}  // namespace kolmo::codec_detail
