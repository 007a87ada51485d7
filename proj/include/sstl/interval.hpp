#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "sstl/error.hpp"
#include "sstl/rational.hpp"

namespace sstl {

using Tick = std::int64_t;

// Time window in real seconds, as carried by STL formulas. An absent upper
// bound is the distinguished +∞ marker (never a sentinel number).
struct RealInterval {
    Rational lo;
    std::optional<Rational> hi;  // nullopt == +∞

    RealInterval(Rational lo, std::optional<Rational> hi) : lo(lo), hi(hi) {
        if (lo < Rational(0)) throw Error("interval lower bound must be non-negative");
        if (hi && *hi < lo) throw Error("interval upper bound below lower bound");
    }

    bool is_unbounded() const { return !hi.has_value(); }
    bool is_full() const { return lo == Rational(0) && is_unbounded(); }

    std::string to_string() const {
        return "[" + lo.to_string() + "," + (hi ? hi->to_string() : "inf") + "]";
    }
};

// Time window in ticks, as carried by SSTL formulas after discretization.
struct TickInterval {
    Tick lo;
    std::optional<Tick> hi;  // nullopt == +∞

    TickInterval(Tick lo, std::optional<Tick> hi) : lo(lo), hi(hi) {
        if (lo < 0) throw Error("interval lower bound must be non-negative");
        if (hi && *hi < lo) throw Error("interval upper bound below lower bound");
    }

    bool is_unbounded() const { return !hi.has_value(); }
    bool is_full() const { return lo == 0 && is_unbounded(); }

    std::string to_string() const {
        return "[" + std::to_string(lo) + "," + (hi ? std::to_string(*hi) : "inf") + "]";
    }
};

}  // namespace sstl
