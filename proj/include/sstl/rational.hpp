#pragma once

#include <cstdint>
#include <numeric>
#include <string>

#include "sstl/error.hpp"

namespace sstl {

// Exact rational arithmetic for real-time quantities (seconds, interval
// bounds). Time values enter the tool as decimal literals; keeping them as
// int64 fractions makes floor projection and quantization exact, where
// doubles would misplace values like 0.240/0.001 onto the wrong tick.
class Rational {
public:
    constexpr Rational() : num_(0), den_(1) {}
    constexpr Rational(std::int64_t n) : num_(n), den_(1) {}

    Rational(std::int64_t n, std::int64_t d) : num_(n), den_(d) {
        if (den_ == 0) throw Error("rational with zero denominator");
        normalize();
    }

    // Parses an optionally signed decimal literal: "12", "-0.5", "0.0805".
    static Rational from_decimal(const std::string& text) {
        if (text.empty()) throw Error("empty numeric literal");
        std::size_t i = 0;
        bool neg = false;
        if (text[i] == '+' || text[i] == '-') {
            neg = (text[i] == '-');
            ++i;
        }
        std::int64_t num = 0, den = 1;
        bool any_digit = false, seen_dot = false;
        for (; i < text.size(); ++i) {
            char c = text[i];
            if (c == '.') {
                if (seen_dot) throw Error("malformed numeric literal '" + text + "'");
                seen_dot = true;
                continue;
            }
            if (c < '0' || c > '9') throw Error("malformed numeric literal '" + text + "'");
            any_digit = true;
            num = checked_mul(num, 10);
            num = checked_add(num, c - '0');
            if (seen_dot) den = checked_mul(den, 10);
        }
        if (!any_digit) throw Error("malformed numeric literal '" + text + "'");
        return Rational(neg ? -num : num, den);
    }

    std::int64_t num() const { return num_; }
    std::int64_t den() const { return den_; }

    bool is_integer() const { return den_ == 1; }

    // ⌊num/den⌋ with mathematical (round toward -∞) semantics.
    std::int64_t floor() const {
        std::int64_t q = num_ / den_, r = num_ % den_;
        return (r != 0 && num_ < 0) ? q - 1 : q;
    }

    friend Rational operator+(const Rational& a, const Rational& b) {
        return Rational(checked_add(checked_mul(a.num_, b.den_), checked_mul(b.num_, a.den_)),
                        checked_mul(a.den_, b.den_));
    }
    friend Rational operator-(const Rational& a, const Rational& b) {
        return a + Rational(-b.num_, b.den_);
    }
    friend Rational operator*(const Rational& a, const Rational& b) {
        return Rational(checked_mul(a.num_, b.num_), checked_mul(a.den_, b.den_));
    }
    friend Rational operator/(const Rational& a, const Rational& b) {
        if (b.num_ == 0) throw Error("rational division by zero");
        return Rational(checked_mul(a.num_, b.den_), checked_mul(a.den_, b.num_));
    }

    friend bool operator==(const Rational& a, const Rational& b) {
        return a.num_ == b.num_ && a.den_ == b.den_;
    }
    friend bool operator!=(const Rational& a, const Rational& b) { return !(a == b); }
    friend bool operator<(const Rational& a, const Rational& b) {
        return static_cast<__int128>(a.num_) * b.den_ < static_cast<__int128>(b.num_) * a.den_;
    }
    friend bool operator<=(const Rational& a, const Rational& b) { return !(b < a); }
    friend bool operator>(const Rational& a, const Rational& b) { return b < a; }
    friend bool operator>=(const Rational& a, const Rational& b) { return !(a < b); }

    // Exact decimal rendering when the reduced denominator is 2^a·5^b,
    // fractional rendering otherwise.
    std::string to_string() const {
        if (den_ == 1) return std::to_string(num_);
        std::int64_t d = den_;
        std::int64_t scale = 1;
        while (d % 2 == 0) { d /= 2; scale = checked_mul(scale, 2); }
        while (d % 5 == 0) { d /= 5; scale = checked_mul(scale, 5); }
        if (d != 1) return std::to_string(num_) + "/" + std::to_string(den_);
        // num/den == (num * (scale10/den)) / scale10 where scale10 is the
        // smallest power of ten divisible by den.
        std::int64_t scale10 = 1;
        while (scale10 % den_ != 0) scale10 = checked_mul(scale10, 10);
        std::int64_t scaled = checked_mul(num_, scale10 / den_);
        bool neg = scaled < 0;
        std::string digits = std::to_string(neg ? -scaled : scaled);
        std::string width = std::to_string(scale10);
        std::size_t frac_len = width.size() - 1;
        while (digits.size() <= frac_len) digits.insert(digits.begin(), '0');
        digits.insert(digits.size() - frac_len, ".");
        while (digits.back() == '0') digits.pop_back();
        if (digits.back() == '.') digits.pop_back();
        return (neg ? "-" : "") + digits;
    }

private:
    static std::int64_t checked_add(std::int64_t a, std::int64_t b) {
        std::int64_t r;
        if (__builtin_add_overflow(a, b, &r)) throw Error("rational overflow");
        return r;
    }
    static std::int64_t checked_mul(std::int64_t a, std::int64_t b) {
        std::int64_t r;
        if (__builtin_mul_overflow(a, b, &r)) throw Error("rational overflow");
        return r;
    }

    void normalize() {
        if (den_ < 0) {
            num_ = -num_;
            den_ = -den_;
        }
        std::int64_t g = std::gcd(num_ < 0 ? -num_ : num_, den_);
        if (g > 1) {
            num_ /= g;
            den_ /= g;
        }
        if (num_ == 0) den_ = 1;
    }

    std::int64_t num_, den_;
};

}  // namespace sstl
