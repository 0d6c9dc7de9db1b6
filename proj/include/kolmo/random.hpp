#pragma once

#include <cstdint>
#include <random>

namespace kolmo {

/// Every stochastic generator takes an explicit seed; same seed, same output.
struct Seed {
    std::uint64_t value = 0;

    bool operator==(const Seed&) const = default;
};

/// SplitMix64 finalizer. Used to decorrelate derived seeds.
constexpr std::uint64_t mix64(std::uint64_t x) noexcept {
    x += 0x9E3779B97F4A7C15ull;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
    return x ^ (x >> 31);
}

/// Per-trial / per-purpose seed: hash(seed XOR stream). Results of parallel
/// trials are then independent of scheduling order.
constexpr Seed derive_seed(Seed base, std::uint64_t stream) noexcept {
    return Seed{mix64(base.value ^ mix64(stream + 0x632BE59BD9B4E019ull))};
}

/// mt19937_64 is fully specified by the standard, so the raw 64-bit stream is
/// identical on every platform. Variates are derived here rather than through
/// std:: distributions, whose algorithms are implementation-defined.
class Rng {
public:
    explicit Rng(Seed seed) : engine_(mix64(seed.value)) {}

    std::uint64_t next_u64() { return engine_(); }

    /// Uniform on the open interval (0, 1), 53-bit resolution.
    double uniform_open() { return (static_cast<double>(engine_() >> 11) + 0.5) * 0x1.0p-53; }

    /// Uniform on [0, 1).
    double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

    /// Uniform integer in [0, 2^bits), taken from the top bits of a draw. 1 <= bits <= 32.
    std::uint32_t bits(int bits) {
        return static_cast<std::uint32_t>(engine_() >> (64 - bits));
    }

private:
    std::mt19937_64 engine_;
};

}  // namespace kolmo
