// Shared machinery for the adaptive coders: a carry-less 32-bit binary
// arithmetic coder, count-based bit predictors, and the logistic
// stretch/squash pair used by the mixer. Integer-only, so archives are
// identical across platforms.
#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <vector>

#include "kolmo/error.hpp"

namespace kolmo::codec_detail {

/// P(bit = 1) is passed as a 16-bit fraction in [1, 65535].
class ArithEncoder {
public:
    explicit ArithEncoder(std::vector<std::uint8_t>& out) : out_(out) {}

    void encode(int bit, std::uint32_t p1) {
        const std::uint32_t xmid = x1_ + static_cast<std::uint32_t>((std::uint64_t{x2_ - x1_} * p1) >> 16);
        if (bit)
            x2_ = xmid;
        else
            x1_ = xmid + 1;
        while (((x1_ ^ x2_) & 0xFF000000u) == 0) {
            out_.push_back(static_cast<std::uint8_t>(x2_ >> 24));
            x1_ <<= 8;
            x2_ = (x2_ << 8) | 0xFFu;
        }
    }

    // One byte suffices: the decoder pads with 0xFF, which lands in [x1, x2].
    void flush() { out_.push_back(static_cast<std::uint8_t>(x1_ >> 24)); }

private:
    std::vector<std::uint8_t>& out_;
    std::uint32_t x1_ = 0, x2_ = 0xFFFFFFFFu;
};

class ArithDecoder {
public:
    explicit ArithDecoder(std::span<const std::uint8_t> in) : in_(in) {
        for (int i = 0; i < 4; ++i) x_ = (x_ << 8) | next_byte();
    }

    int decode(std::uint32_t p1) {
        const std::uint32_t xmid = x1_ + static_cast<std::uint32_t>((std::uint64_t{x2_ - x1_} * p1) >> 16);
        int bit;
        if (x_ <= xmid) {
            bit = 1;
            x2_ = xmid;
        } else {
            bit = 0;
            x1_ = xmid + 1;
        }
        while (((x1_ ^ x2_) & 0xFF000000u) == 0) {
            x1_ <<= 8;
            x2_ = (x2_ << 8) | 0xFFu;
            x_ = (x_ << 8) | next_byte();
        }
        return bit;
    }

private:
    std::uint32_t next_byte() { return pos_ < in_.size() ? in_[pos_++] : 0xFFu; }

    std::span<const std::uint8_t> in_;
    std::size_t pos_ = 0;
    std::uint32_t x1_ = 0, x2_ = 0xFFFFFFFFu, x_ = 0;
};

/// Adaptive probability with a 1/(n+2) learning rate (the Krichevsky-Trofimov
/// estimate while n is below `limit`, an exponential average afterwards).
struct BitCounter {
    std::uint32_t p = 0x80000000u;  // P(1) scaled by 2^32
    std::uint32_t n = 0;

    std::uint32_t p16() const noexcept {
        const std::uint32_t v = p >> 16;
        return v < 1 ? 1 : (v > 65535 ? 65535 : v);
    }
    std::uint32_t p12() const noexcept { return p >> 20; }

    static constexpr std::uint32_t kMaxLimit = 1023;

    void update(int bit, std::uint32_t limit) {
        // 2^31 / (n + 2)
        static const std::array<std::int64_t, kMaxLimit + 1> recip = [] {
            std::array<std::int64_t, kMaxLimit + 1> r{};
            for (std::size_t i = 0; i < r.size(); ++i) r[i] = (std::int64_t{1} << 31) / static_cast<std::int64_t>(i + 2);
            return r;
        }();
        const std::int64_t target = bit ? 0xFFFFFFFFll : 0;
        p = static_cast<std::uint32_t>(static_cast<std::int64_t>(p) +
                                       (((target - static_cast<std::int64_t>(p)) * recip[n]) >> 31));
        if (n < limit) ++n;
    }
};

/// d in [-2047, 2047] (log-odds scaled by 256) -> 12-bit probability.
inline int squash(int d) {
    static constexpr int t[33] = {1,    2,    3,    6,    10,   16,   27,   45,   73,   120,  194,
                                  310,  488,  747,  1101, 1546, 2047, 2549, 2994, 3348, 3607, 3785,
                                  3901, 3975, 4022, 4050, 4068, 4079, 4085, 4089, 4092, 4093, 4094};
    if (d > 2047) return 4095;
    if (d < -2047) return 1;
    const int w = d & 127;
    const int i = (d >> 7) + 16;
    return (t[i] * (128 - w) + t[i + 1] * w + 64) >> 7;
}

/// Inverse of squash on 12-bit probabilities.
inline int stretch(int p12) {
    static const std::array<short, 4096> table = [] {
        std::array<short, 4096> t{};
        int pi = 0;
        for (int x = -2047; x <= 2047; ++x) {
            const int v = squash(x);
            for (int i = pi; i <= v; ++i) t[static_cast<std::size_t>(i)] = static_cast<short>(x);
            pi = v + 1;
        }
        for (int i = pi; i < 4096; ++i) t[static_cast<std::size_t>(i)] = 2047;
        return t;
    }();
    return table[static_cast<std::size_t>(p12)];
}

/// Exp-Golomb style integer coder over adaptive bits: the bit length of v+1 in
/// unary, then the remaining bits MSB-first. The first few mantissa bits are
/// modelled per length; the rest are near-uniform and share one counter per
/// position.
class AdaptiveIntModel {
public:
    static constexpr int kMaxBits = 40;

    template <class Coder>
    void encode(Coder& enc, std::uint64_t v) {
        const std::uint64_t x = v + 1;
        const int nb = 64 - __builtin_clzll(x);  // >= 1
        for (int i = 1; i < nb; ++i) code(enc, 1, unary_[i - 1]);
        if (nb < kMaxBits) code(enc, 0, unary_[nb - 1]);
        for (int b = nb - 2; b >= 0; --b) {
            const int bit = static_cast<int>((x >> b) & 1u);
            code(enc, bit, mantissa(nb, nb - 2 - b));
        }
    }

    template <class Coder>
    std::uint64_t decode(Coder& dec) {
        int nb = 1;
        while (nb < kMaxBits && decode_bit(dec, unary_[nb - 1])) ++nb;
        std::uint64_t x = 1;
        for (int b = nb - 2; b >= 0; --b) x = (x << 1) | static_cast<std::uint64_t>(decode_bit(dec, mantissa(nb, nb - 2 - b)));
        return x - 1;
    }

private:
    BitCounter& mantissa(int nb, int index) {
        return index < 3 ? top_[static_cast<std::size_t>(nb)][static_cast<std::size_t>(index)]
                         : tail_[static_cast<std::size_t>(index)];
    }
    static void code(ArithEncoder& enc, int bit, BitCounter& c) {
        enc.encode(bit, c.p16());
        c.update(bit, 255);
    }
    static int decode_bit(ArithDecoder& dec, BitCounter& c) {
        const int bit = dec.decode(c.p16());
        c.update(bit, 255);
        return bit;
    }

    std::array<BitCounter, kMaxBits> unary_{};
    std::array<std::array<BitCounter, 3>, kMaxBits + 1> top_{};
    std::array<BitCounter, kMaxBits> tail_{};
};

}  // namespace kolmo::codec_detail
