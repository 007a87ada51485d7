#pragma once

#include <cstdint>

#include "sstl/error.hpp"
#include "sstl/rational.hpp"

namespace sstl {

inline constexpr std::int64_t kDefaultFactor = 1000;

// Scales a real value to an integer: round(value × factor), rounding halves
// away from zero. Takes the value as an exact rational; quantizing through
// a double would misround values like 0.0805 whose binary representation
// falls below the true half-way point.
inline std::int64_t quantize(const Rational& value, std::int64_t factor) {
    if (factor <= 0) throw Error("quantization factor must be positive");
    Rational scaled = value * Rational(factor);
    std::int64_t q = scaled.num() / scaled.den();
    std::int64_t r = scaled.num() % scaled.den();
    std::int64_t abs_r = r < 0 ? -r : r;
    if (2 * abs_r >= scaled.den()) q += (scaled.num() < 0) ? -1 : 1;
    return q;
}

inline std::int64_t quantize_text(const std::string& literal, std::int64_t factor) {
    return quantize(Rational::from_decimal(literal), factor);
}

}  // namespace sstl
