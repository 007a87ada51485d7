#pragma once

#include <map>
#include <utility>
#include <vector>

#include "sstl/formula.hpp"
#include "sstl/trace.hpp"

namespace sstl {

// Three-valued verdict for finite traces. Inconclusive marks outcomes the
// available prefix cannot force either way: a bounded window running past
// the end of the trace, or an unbounded obligation with no witness yet.
enum class Verdict { True, False, Inconclusive };

inline const char* verdict_text(Verdict v) {
    switch (v) {
        case Verdict::True: return "True";
        case Verdict::False: return "False";
        case Verdict::Inconclusive: return "Inconclusive";
    }
    return "?";
}

inline Verdict v_bool(bool b) { return b ? Verdict::True : Verdict::False; }

inline Verdict v_not(Verdict a) {
    if (a == Verdict::True) return Verdict::False;
    if (a == Verdict::False) return Verdict::True;
    return Verdict::Inconclusive;
}

inline Verdict v_and(Verdict a, Verdict b) {
    if (a == Verdict::False || b == Verdict::False) return Verdict::False;
    if (a == Verdict::True && b == Verdict::True) return Verdict::True;
    return Verdict::Inconclusive;
}

inline Verdict v_or(Verdict a, Verdict b) {
    if (a == Verdict::True || b == Verdict::True) return Verdict::True;
    if (a == Verdict::False && b == Verdict::False) return Verdict::False;
    return Verdict::Inconclusive;
}

inline Verdict v_implies(Verdict a, Verdict b) { return v_or(v_not(a), b); }

namespace detail {

// Evaluates tick-level boolean semantics over a finite trace with one memo
// table per (subformula, tick). Temporal verdicts degrade to Inconclusive
// only when the truncated window genuinely admits both outcomes: a witness
// already inside the trace forces True, and a broken left operand (or an
// in-window violation under Always) forces False regardless of what the
// unseen suffix holds.
class TickEvaluator {
public:
    explicit TickEvaluator(const DiscreteTrace& w) : w_(w) {}

    Verdict eval(const FormulaPtr& f, Tick t) {
        if (t < 0 || static_cast<std::size_t>(t) >= w_.length())
            throw EvalError("tick " + std::to_string(t) + " out of range");
        auto key = std::make_pair(static_cast<const void*>(f.get()), t);
        auto it = memo_.find(key);
        if (it != memo_.end()) return it->second;
        Verdict v = compute(f, t);
        memo_.emplace(key, v);
        return v;
    }

private:
    Verdict compute(const FormulaPtr& f, Tick t) {
        switch (f->kind) {
            case Kind::True: return Verdict::True;
            case Kind::False: return Verdict::False;
            case Kind::Atom: return v_bool(eval_atom(*f->pred, t));
            case Kind::Not: return v_not(eval(f->kids[0], t));
            case Kind::And: return v_and(eval(f->kids[0], t), eval(f->kids[1], t));
            case Kind::Or: return v_or(eval(f->kids[0], t), eval(f->kids[1], t));
            case Kind::Implies: return v_implies(eval(f->kids[0], t), eval(f->kids[1], t));
            case Kind::Until: return eval_until(f->kids[0], f->kids[1], f->tick_window, t);
            case Kind::Eventually: return eval_until(f_true(), f->kids[0], f->tick_window, t);
            case Kind::Always: return eval_always(f->kids[0], f->tick_window, t);
            case Kind::Next:
            case Kind::Release:
            case Kind::Guard:
                throw EvalError("formula is not in the SSTL dialect");
        }
        throw EvalError("unreachable formula kind");
    }

    bool eval_atom(const LinearPredicate& p, Tick t) {
        if (p.factor != w_.factor)
            throw EvalError("predicate quantization factor does not match the trace");
        return p.eval([&](const std::string& name) {
            return w_.at(static_cast<std::size_t>(t), w_.signal_index(name));
        });
    }

    // ∃ t' in the window with φ₂ there and φ₁ from t up to (excluding) t'.
    Verdict eval_until(const FormulaPtr& phi1, const FormulaPtr& phi2,
                       const std::optional<TickInterval>& window, Tick t) {
        Tick last = static_cast<Tick>(w_.length()) - 1;
        Tick lo = t + (window ? window->lo : 0);
        bool bounded = window && window->hi.has_value();
        Tick hi_in_trace = bounded ? std::min(t + *window->hi, last) : last;
        bool extends_past_end = !bounded || t + *window->hi > last;

        Verdict acc = Verdict::False;
        Verdict prefix = Verdict::True;  // φ₁ over [t, k)
        for (Tick k = t; k <= hi_in_trace; ++k) {
            if (k >= lo) {
                acc = v_or(acc, v_and(eval(phi2, k), prefix));
                if (acc == Verdict::True) return acc;
            }
            prefix = v_and(prefix, eval(phi1, k));
            if (prefix == Verdict::False) break;  // no later witness can fire
        }
        if (extends_past_end) {
            // A witness beyond the trace still needs φ₁ on every recorded
            // tick from t on (that is `prefix`); its own value is
            // unknowable, so it can block False but never force True.
            acc = v_or(acc, v_and(Verdict::Inconclusive, prefix));
        }
        return acc;
    }

    // φ at every tick of the window; unseen window ticks block True.
    Verdict eval_always(const FormulaPtr& phi, const std::optional<TickInterval>& window, Tick t) {
        Tick last = static_cast<Tick>(w_.length()) - 1;
        Tick lo = t + (window ? window->lo : 0);
        bool bounded = window && window->hi.has_value();
        Tick hi_in_trace = bounded ? std::min(t + *window->hi, last) : last;
        bool extends_past_end = !bounded || t + *window->hi > last;

        Verdict acc = Verdict::True;
        for (Tick k = lo; k <= hi_in_trace; ++k) {
            acc = v_and(acc, eval(phi, k));
            if (acc == Verdict::False) return acc;
        }
        if (extends_past_end) acc = v_and(acc, Verdict::Inconclusive);
        return acc;
    }

    const DiscreteTrace& w_;
    std::map<std::pair<const void*, Tick>, Verdict> memo_;
};

}  // namespace detail

inline Verdict eval_at(const FormulaPtr& phi, const DiscreteTrace& w, Tick t) {
    validate_dialect(phi, Dialect::SSTL);
    detail::TickEvaluator ev(w);
    return ev.eval(phi, t);
}

// Pointwise eval_at over all ticks sharing one memo table, so each
// (subformula, tick) pair is computed once.
inline std::vector<Verdict> eval_all(const FormulaPtr& phi, const DiscreteTrace& w) {
    validate_dialect(phi, Dialect::SSTL);
    detail::TickEvaluator ev(w);
    std::vector<Verdict> out;
    out.reserve(w.length());
    for (Tick t = 0; t < static_cast<Tick>(w.length()); ++t) out.push_back(ev.eval(phi, t));
    return out;
}

}  // namespace sstl
