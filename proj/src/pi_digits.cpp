// Decimal digits of pi by Machin's formula on a base-10^9 fixed-point integer:
//   pi = 16 atan(1/5) - 4 atan(1/239)
// Only integer division by small divisors is needed, so the result is exact up
// to the guard limbs.

#include <cstdint>
#include <vector>

#include "kolmo/generators.hpp"

namespace kolmo::gen {
namespace {

constexpr std::uint64_t kBase = 1'000'000'000;
constexpr std::size_t kGuardLimbs = 3;

// limbs[0] is the integer part; limbs[1..] are base-10^9 fractional digits.
using Fixed = std::vector<std::uint32_t>;

// x /= d, skipping the leading zero limbs (index `first` onwards). Returns the
// new first non-zero limb index.
std::size_t divide(Fixed& x, std::uint64_t d, std::size_t first) {
    std::uint64_t rem = 0;
    for (std::size_t i = first; i < x.size(); ++i) {
        const std::uint64_t cur = rem * kBase + x[i];
        x[i] = static_cast<std::uint32_t>(cur / d);
        rem = cur % d;
    }
    while (first < x.size() && x[first] == 0) ++first;
    return first;
}

void add(Fixed& acc, const Fixed& x, std::size_t first) {
    std::uint64_t carry = 0;
    for (std::size_t i = x.size(); i-- > first;) {
        const std::uint64_t s = std::uint64_t{acc[i]} + x[i] + carry;
        acc[i] = static_cast<std::uint32_t>(s % kBase);
        carry = s / kBase;
    }
    for (std::size_t i = first; i-- > 0 && carry;) {
        const std::uint64_t s = std::uint64_t{acc[i]} + carry;
        acc[i] = static_cast<std::uint32_t>(s % kBase);
        carry = s / kBase;
    }
}

void subtract(Fixed& acc, const Fixed& x, std::size_t first) {
    std::int64_t borrow = 0;
    for (std::size_t i = x.size(); i-- > first;) {
        std::int64_t s = std::int64_t{acc[i]} - x[i] - borrow;
        borrow = s < 0 ? 1 : 0;
        acc[i] = static_cast<std::uint32_t>(s + borrow * static_cast<std::int64_t>(kBase));
    }
    for (std::size_t i = first; i-- > 0 && borrow;) {
        std::int64_t s = std::int64_t{acc[i]} - borrow;
        borrow = s < 0 ? 1 : 0;
        acc[i] = static_cast<std::uint32_t>(s + borrow * static_cast<std::int64_t>(kBase));
    }
}

void multiply(Fixed& x, std::uint64_t m) {
    std::uint64_t carry = 0;
    for (std::size_t i = x.size(); i-- > 0;) {
        const std::uint64_t p = std::uint64_t{x[i]} * m + carry;
        x[i] = static_cast<std::uint32_t>(p % kBase);
        carry = p / kBase;
    }
}

// atan(1/inv) = sum_k (-1)^k / ((2k+1) inv^(2k+1))
Fixed arctan_inverse(std::uint64_t inv, std::size_t limbs) {
    Fixed power(limbs, 0), term(limbs, 0), sum(limbs, 0);
    power[0] = 1;
    std::size_t first = divide(power, inv, 0);
    sum = power;
    const std::uint64_t inv2 = inv * inv;
    for (std::uint64_t k = 1; first < limbs; ++k) {
        first = divide(power, inv2, first);
        if (first >= limbs) break;
        term = power;
        const std::size_t tfirst = divide(term, 2 * k + 1, first);
        if (tfirst >= limbs) continue;
        if (k % 2 == 1)
            subtract(sum, term, tfirst);
        else
            add(sum, term, tfirst);
    }
    return sum;
}

}  // namespace

IntegerSeries pi_decimal_digits(std::size_t n) {
    IntegerSeries out;
    if (n == 0) return out;
    const std::size_t limbs = 1 + (n + 8) / 9 + kGuardLimbs;

    Fixed pi = arctan_inverse(5, limbs);
    multiply(pi, 16);
    Fixed b = arctan_inverse(239, limbs);
    multiply(b, 4);
    subtract(pi, b, 0);

    out.values.reserve(n);
    for (std::size_t i = 1; i < limbs && out.values.size() < n; ++i) {
        std::uint32_t limb = pi[i];
        std::int64_t digits[9];
        for (int d = 8; d >= 0; --d) {
            digits[d] = limb % 10;
            limb /= 10;
        }
        for (int d = 0; d < 9 && out.values.size() < n; ++d) out.values.push_back(digits[d]);
    }
    return out;
}

}  // namespace kolmo::gen
