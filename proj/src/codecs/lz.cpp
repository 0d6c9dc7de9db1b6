// LZ77 with a hash-chain match finder and greedy parsing. Tokens go through
// the adaptive binary arithmetic coder:
//   flag     match / literal, context = previous token kind
//   literal  8-bit binary tree, order 0
//   match    (length - kMinMatch, distance - 1) as adaptive Elias-gamma integers

#include <algorithm>

#include "arith.hpp"
#include "kolmo/codecs.hpp"

namespace kolmo::codec_detail {
namespace {

constexpr std::size_t kMinMatch = 4;
constexpr std::size_t kMaxMatch = 1 << 16;
constexpr std::size_t kWindow = 1 << 20;
constexpr int kHashBits = 16;
constexpr int kMaxChain = 64;

std::uint32_t hash4(const std::uint8_t* p) {
    const std::uint32_t v = std::uint32_t{p[0]} | std::uint32_t{p[1]} << 8 | std::uint32_t{p[2]} << 16 |
                            std::uint32_t{p[3]} << 24;
    return (v * 2654435761u) >> (32 - kHashBits);
}

struct Model {
    std::array<BitCounter, 2> flag{};
    std::array<BitCounter, 256> literal{};
    AdaptiveIntModel length, distance;
};

constexpr std::uint32_t kFlagLimit = 255;
constexpr std::uint32_t kLiteralLimit = 1023;

}  // namespace

std::vector<std::uint8_t> lz_encode(std::span<const std::uint8_t> data) {
    std::vector<std::uint8_t> out;
    out.reserve(data.size() + 16);
    ArithEncoder enc(out);
    Model m;

    const std::size_t n = data.size();
    std::vector<std::int64_t> head(std::size_t{1} << kHashBits, -1);
    std::vector<std::int64_t> prev(n, -1);
    auto insert = [&](std::size_t i) {
        if (i + kMinMatch > n) return;
        const auto h = hash4(&data[i]);
        prev[i] = head[h];
        head[h] = static_cast<std::int64_t>(i);
    };

    int last = 0;
    std::size_t i = 0;
    while (i < n) {
        std::size_t best_len = 0, best_dist = 0;
        if (i + kMinMatch <= n) {
            const std::size_t limit = std::min(kMaxMatch, n - i);
            std::int64_t cand = head[hash4(&data[i])];
            for (int chain = 0; cand >= 0 && chain < kMaxChain; ++chain, cand = prev[static_cast<std::size_t>(cand)]) {
                const auto c = static_cast<std::size_t>(cand);
                if (i - c > kWindow) break;
                std::size_t len = 0;
                while (len < limit && data[c + len] == data[i + len]) ++len;
                if (len > best_len) {
                    best_len = len;
                    best_dist = i - c;
                    if (len == limit) break;
                }
            }
        }
        auto& flag = m.flag[static_cast<std::size_t>(last)];
        if (best_len >= kMinMatch) {
            enc.encode(1, flag.p16());
            flag.update(1, kFlagLimit);
            m.length.encode(enc, best_len - kMinMatch);
            m.distance.encode(enc, best_dist - 1);
            for (std::size_t k = 0; k < best_len; ++k) insert(i + k);
            i += best_len;
            last = 1;
        } else {
            enc.encode(0, flag.p16());
            flag.update(0, kFlagLimit);
            std::size_t node = 1;
            for (int b = 7; b >= 0; --b) {
                const int bit = (data[i] >> b) & 1;
                enc.encode(bit, m.literal[node].p16());
                m.literal[node].update(bit, kLiteralLimit);
                node = node * 2 + static_cast<std::size_t>(bit);
            }
            insert(i);
            ++i;
            last = 0;
        }
    }
    enc.flush();
    return out;
}

std::vector<std::uint8_t> lz_decode(std::span<const std::uint8_t> payload, std::size_t n) {
    std::vector<std::uint8_t> out;
    out.reserve(n);
    ArithDecoder dec(payload);
    Model m;
    int last = 0;
    while (out.size() < n) {
        auto& flag = m.flag[static_cast<std::size_t>(last)];
        const int is_match = dec.decode(flag.p16());
        flag.update(is_match, kFlagLimit);
        if (is_match) {
            const std::uint64_t len = m.length.decode(dec) + kMinMatch;
            const std::uint64_t dist = m.distance.decode(dec) + 1;
            if (dist > out.size() || len > n - out.size()) throw IntegrityError("lz: match outside the decoded data");
            const std::size_t from = out.size() - static_cast<std::size_t>(dist);
            for (std::size_t k = 0; k < len; ++k) out.push_back(out[from + k]);
            last = 1;
        } else {
            std::size_t node = 1;
            for (int b = 0; b < 8; ++b) {
                const int bit = dec.decode(m.literal[node].p16());
                m.literal[node].update(bit, kLiteralLimit);
                node = node * 2 + static_cast<std::size_t>(bit);
            }
            out.push_back(static_cast<std::uint8_t>(node - 256));
            last = 0;
        }
    }
    return out;
}

}  // namespace kolmo::codec_detail
