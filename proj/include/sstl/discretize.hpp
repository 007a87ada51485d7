#pragma once

#include <memory>

#include "sstl/formula.hpp"
#include "sstl/rational.hpp"

namespace sstl {

// Projects a real time onto its tick: ⌊t/dt⌋. A time exactly on a tick
// boundary k·dt belongs to tick k (half-open cells [k·dt, (k+1)·dt)).
inline Tick discretize_time(const Rational& t, const Rational& dt) {
    if (!(dt > Rational(0))) throw Error("dt must be positive");
    if (t < Rational(0)) throw Error("time must be non-negative");
    return (t / dt).floor();
}

inline TickInterval discretize_interval(const RealInterval& w, const Rational& dt) {
    Tick lo = discretize_time(w.lo, dt);
    std::optional<Tick> hi;
    if (w.hi) hi = discretize_time(*w.hi, dt);
    if (hi && *hi < lo) throw Error("discretized interval collapsed to hi < lo");
    return TickInterval(lo, hi);
}

// Rewrites every real-second window [a,b] to the tick window [⌊a/dt⌋,⌊b/dt⌋],
// leaving the AST shape untouched. Unbounded windows stay unbounded.
inline FormulaPtr discretize_formula(const FormulaPtr& phi, const Rational& dt) {
    auto copy = std::make_shared<Formula>(*phi);
    copy->kids.clear();
    for (const auto& k : phi->kids) copy->kids.push_back(discretize_formula(k, dt));
    if (phi->real_window) {
        copy->tick_window = discretize_interval(*phi->real_window, dt);
        copy->real_window.reset();
    }
    return copy;
}

}  // namespace sstl
