// Bitwise context-mixing coder. Each bit of each byte (MSB first) is
// predicted by a handful of adaptive counters selected by different
// contexts; their stretched probabilities are combined by a gated linear
// mixer in the logistic domain, refined by an APM, and coded with the binary
// arithmetic coder. Nothing is stored besides the code stream: the decoder
// rebuilds the same model.
//
// Contexts (c0 = bits of the current byte seen so far, with a leading 1;
// j = bit index 0..7):
//   order 0      c0
//   order 1      previous byte, c0
//   order 2, 3   hashed previous 2 / 3 bytes, c0
//   position     j only
//   column       j, the low (8 - j) bits of the previous byte
//   magnitude    top 3 bits of the previous 2 bytes, c0
//   coarse       top 2 bits of the previous 4 bytes, c0

#include <algorithm>
#include <bit>

#include "arith.hpp"
#include "kolmo/codecs.hpp"

namespace kolmo::codec_detail {
namespace {

constexpr int kInputs = 9;  // 8 models + bias
constexpr int kWeightShift = 16;
constexpr int kLearningRate = 3;
constexpr std::uint32_t kLowLimit = 1023;
constexpr std::uint32_t kHighLimit = 255;

int table_bits(std::size_t n) {
    const std::uint64_t want = std::max<std::uint64_t>(1, 2 * 8 * static_cast<std::uint64_t>(n));
    return std::clamp(static_cast<int>(std::bit_width(want - 1)), 12, 22);
}

class Apm {
public:
    Apm() {
        for (std::size_t c = 0; c < t_.size() / 33; ++c)
            for (int k = 0; k < 33; ++k) t_[c * 33 + static_cast<std::size_t>(k)] = static_cast<std::uint16_t>(squash((k - 16) * 128) * 16);
    }
    int refine(int pr, std::size_t cx) {
        const int s = std::clamp(stretch(pr), -2047, 2047) + 2048;
        const int lo = s >> 7, w = s & 127;
        index_ = cx * 33 + static_cast<std::size_t>(lo);
        weight_ = w;
        return (t_[index_] * (128 - w) + t_[index_ + 1] * w) >> 11;
    }
    void update(int y) {
        const int g = y ? 65535 : 0;
        t_[index_] = static_cast<std::uint16_t>(t_[index_] + ((g - t_[index_]) >> 6) * (128 - weight_) / 128);
        t_[index_ + 1] = static_cast<std::uint16_t>(t_[index_ + 1] + ((g - t_[index_ + 1]) >> 6) * weight_ / 128);
    }

private:
    std::array<std::uint16_t, 256 * 33> t_{};
    std::size_t index_ = 0;
    int weight_ = 0;
};

class Predictor {
public:
    explicit Predictor(std::size_t n)
        : bits_(table_bits(n)),
          order1_(1 << 16),
          order2_(std::size_t{1} << bits_),
          order3_(std::size_t{1} << bits_),
          column_(8 * 256),
          magnitude_(64 * 256),
          coarse_(256 * 256) {
        for (auto& set : weights_) set.fill((1 << kWeightShift) / 4);
        begin_byte();
    }

    // 12-bit P(next bit = 1).
    int p() {
        const std::size_t c0 = c0_;
        slot_[0] = &order0_[c0];
        slot_[1] = &order1_[(std::size_t{prev_[0]} << 8) | c0];
        slot_[2] = &order2_[index(h2_, c0)];
        slot_[3] = &order3_[index(h3_, c0)];
        slot_[4] = &position_[static_cast<std::size_t>(j_)];
        slot_[5] = &column_[static_cast<std::size_t>(j_) * 256 + (prev_[0] & ((1u << (8 - j_)) - 1u))];
        slot_[6] = &magnitude_[(static_cast<std::size_t>(prev_[0] >> 5) << 11) | (static_cast<std::size_t>(prev_[1] >> 5) << 8) | c0];
        slot_[7] = &coarse_[(coarse_ctx_ << 8) | c0];

        std::int64_t dot = 0;
        const auto& w = weights_[static_cast<std::size_t>(j_)];
        for (int i = 0; i < kInputs - 1; ++i) {
            const BitCounter& c = *slot_[i];
            x_[i] = c.n ? stretch(static_cast<int>(c.p12())) : 0;
            dot += static_cast<std::int64_t>(x_[i]) * w[static_cast<std::size_t>(i)];
        }
        x_[kInputs - 1] = 256;
        dot += static_cast<std::int64_t>(x_[kInputs - 1]) * w[kInputs - 1];
        pr_mix_ = std::clamp(squash(static_cast<int>(std::clamp<std::int64_t>(dot >> kWeightShift, -2047, 2047))), 1, 4095);
        const int pa = apm_.refine(pr_mix_, c0);
        pr_ = std::clamp((pr_mix_ + 3 * pa) >> 2, 1, 4095);
        return pr_;
    }

    void update(int y) {
        const int err = ((y << 12) - pr_mix_) * kLearningRate;
        auto& w = weights_[static_cast<std::size_t>(j_)];
        for (int i = 0; i < kInputs; ++i)
            w[static_cast<std::size_t>(i)] += static_cast<std::int32_t>((static_cast<std::int64_t>(x_[i]) * err) >> 12);
        apm_.update(y);
        for (int i = 0; i < kInputs - 1; ++i) slot_[i]->update(y, i == 2 || i == 3 ? kHighLimit : kLowLimit);

        c0_ = (c0_ << 1) | static_cast<std::uint32_t>(y);
        if (++j_ == 8) {
            const auto byte = static_cast<std::uint8_t>(c0_ & 0xFF);
            prev_[3] = prev_[2];
            prev_[2] = prev_[1];
            prev_[1] = prev_[0];
            prev_[0] = byte;
            begin_byte();
        }
    }

private:
    void begin_byte() {
        c0_ = 1;
        j_ = 0;
        h2_ = mix(0x2000000u | (std::uint32_t{prev_[1]} << 8) | prev_[0]);
        h3_ = mix(0x3000000u | (std::uint32_t{prev_[2]} << 16) | (std::uint32_t{prev_[1]} << 8) | prev_[0]);
        coarse_ctx_ = static_cast<std::size_t>((prev_[0] >> 6) | ((prev_[1] >> 6) << 2) | ((prev_[2] >> 6) << 4) |
                                               ((prev_[3] >> 6) << 6));
    }
    static std::uint32_t mix(std::uint32_t x) {
        x ^= x >> 16;
        x *= 0x7FEB352Du;
        x ^= x >> 15;
        x *= 0x846CA68Bu;
        return x ^ (x >> 16);
    }
    std::size_t index(std::uint32_t h, std::size_t c0) const {
        return ((h + static_cast<std::uint32_t>(c0) * 0x9E3779B1u) * 0x85EBCA6Bu) >> (32 - bits_);
    }

    int bits_;
    std::array<BitCounter, 256> order0_{};
    std::vector<BitCounter> order1_, order2_, order3_;
    std::array<BitCounter, 8> position_{};
    std::vector<BitCounter> column_, magnitude_, coarse_;
    std::array<std::array<std::int32_t, kInputs>, 8> weights_{};
    Apm apm_;

    std::array<BitCounter*, kInputs - 1> slot_{};
    std::array<int, kInputs> x_{};
    int pr_mix_ = 2048, pr_ = 2048;
    std::uint32_t c0_ = 1;
    int j_ = 0;
    std::array<std::uint8_t, 4> prev_{};
    std::uint32_t h2_ = 0, h3_ = 0;
    std::size_t coarse_ctx_ = 0;
};

std::uint32_t to_p16(int p12) { return static_cast<std::uint32_t>(p12) << 4; }

}  // namespace

std::vector<std::uint8_t> cm_encode(std::span<const std::uint8_t> data) {
    std::vector<std::uint8_t> out;
    out.reserve(data.size() + 16);
    ArithEncoder enc(out);
    Predictor model(data.size());
    for (const std::uint8_t byte : data)
        for (int b = 7; b >= 0; --b) {
            const int bit = (byte >> b) & 1;
            enc.encode(bit, to_p16(model.p()));
            model.update(bit);
        }
    enc.flush();
    return out;
}

std::vector<std::uint8_t> cm_decode(std::span<const std::uint8_t> payload, std::size_t n) {
    std::vector<std::uint8_t> out;
    out.reserve(n);
    ArithDecoder dec(payload);
    Predictor model(n);
    for (std::size_t i = 0; i < n; ++i) {
        int byte = 0;
        for (int b = 0; b < 8; ++b) {
            const int bit = dec.decode(to_p16(model.p()));
            model.update(bit);
            byte = (byte << 1) | bit;
        }
        out.push_back(static_cast<std::uint8_t>(byte));
    }
    return out;
}

}  // namespace kolmo::codec_detail
