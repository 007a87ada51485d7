#pragma once

#include "sstl/discretize.hpp"
#include "sstl/formula.hpp"
#include "sstl/monitor.hpp"
#include "sstl/trace.hpp"

namespace sstl {

namespace detail {

// Dense-time STL evaluation over the piecewise-constant extension of a
// discrete trace: the signal holds trace value k on the real-time cell
// [k·dt, (k+1)·dt). Works directly in rational seconds; independent of the
// tick-level monitor, which it exists to cross-check.
//
// Contract: the evaluation time and every interval bound must be multiples
// of dt. On that grid each subformula's truth is constant on every cell, so
// the dense quantifiers reduce to finitely many cell checks with exact
// endpoints; off-grid bounds would need sub-cell breakpoint tracking, which
// the tool does not claim to support.
class DenseEvaluator {
public:
    explicit DenseEvaluator(const DiscreteTrace& w) : w_(w) {}

    Verdict eval(const FormulaPtr& f, const Rational& t) {
        if (t < Rational(0) || !(t < horizon()))
            throw EvalError("evaluation time outside the trace horizon");
        require_aligned(t, "evaluation time");
        switch (f->kind) {
            case Kind::True: return Verdict::True;
            case Kind::False: return Verdict::False;
            case Kind::Atom: return v_bool(eval_atom(*f->pred, t));
            case Kind::Not: return v_not(eval(f->kids[0], t));
            case Kind::And: return v_and(eval(f->kids[0], t), eval(f->kids[1], t));
            case Kind::Or: return v_or(eval(f->kids[0], t), eval(f->kids[1], t));
            case Kind::Implies: return v_implies(eval(f->kids[0], t), eval(f->kids[1], t));
            case Kind::Until: return eval_until(f->kids[0], f->kids[1], f->real_window, t);
            case Kind::Eventually: return eval_until(f_true(), f->kids[0], f->real_window, t);
            case Kind::Always: return eval_always(f->kids[0], f->real_window, t);
            case Kind::Next:
            case Kind::Release:
            case Kind::Guard:
                throw EvalError("formula is not in the STL dialect");
        }
        throw EvalError("unreachable formula kind");
    }

private:
    Rational horizon() const { return Rational(static_cast<std::int64_t>(w_.length())) * w_.dt; }

    void require_aligned(const Rational& x, const char* what) const {
        if (!(x / w_.dt).is_integer())
            throw EvalError(std::string(what) + " " + x.to_string() +
                            " is not a multiple of dt = " + w_.dt.to_string());
    }

    bool eval_atom(const LinearPredicate& p, const Rational& t) const {
        if (p.factor != w_.factor)
            throw EvalError("predicate quantization factor does not match the trace");
        auto cell = static_cast<std::size_t>((t / w_.dt).floor());
        return p.eval(
            [&](const std::string& name) { return w_.at(cell, w_.signal_index(name)); });
    }

    // ∃ t' ∈ [t+a, t+b] with φ₂ at t' and φ₁ throughout [t, t'). Truths are
    // cell-constant, so the weakest witness inside any candidate cell is its
    // left edge, and the candidates are the cells the closed window meets.
    Verdict eval_until(const FormulaPtr& phi1, const FormulaPtr& phi2,
                       const std::optional<RealInterval>& window, const Rational& t) {
        Rational lo_time = t + (window ? window->lo : Rational(0));
        std::optional<Rational> hi_time;
        if (window && window->hi) hi_time = t + *window->hi;
        require_aligned(lo_time, "window start");
        if (hi_time) require_aligned(*hi_time, "window end");

        Rational step = w_.dt;
        bool past_end = !hi_time || !(*hi_time < horizon());
        Verdict acc = Verdict::False;
        Verdict prefix = Verdict::True;  // φ₁ over [t, s)
        for (Rational s = t; s < horizon(); s = s + step) {
            bool in_window = !(s < lo_time) && (!hi_time || s <= *hi_time);
            if (in_window) {
                acc = v_or(acc, v_and(eval(phi2, s), prefix));
                if (acc == Verdict::True) return acc;
            }
            if (hi_time && !(s < *hi_time)) break;  // whole closed window scanned
            prefix = v_and(prefix, eval(phi1, s));
            if (prefix == Verdict::False) break;
        }
        if (past_end) acc = v_or(acc, v_and(Verdict::Inconclusive, prefix));
        return acc;
    }

    // ∀ t' ∈ [t+a, t+b]: φ at t'.
    Verdict eval_always(const FormulaPtr& phi, const std::optional<RealInterval>& window,
                        const Rational& t) {
        Rational lo_time = t + (window ? window->lo : Rational(0));
        std::optional<Rational> hi_time;
        if (window && window->hi) hi_time = t + *window->hi;
        require_aligned(lo_time, "window start");
        if (hi_time) require_aligned(*hi_time, "window end");

        Rational step = w_.dt;
        bool past_end = !hi_time || !(*hi_time < horizon());
        Verdict acc = Verdict::True;
        for (Rational s = lo_time; s < horizon(); s = s + step) {
            if (hi_time && *hi_time < s) break;
            acc = v_and(acc, eval(phi, s));
            if (acc == Verdict::False) return acc;
        }
        if (past_end) acc = v_and(acc, Verdict::Inconclusive);
        return acc;
    }

    const DiscreteTrace& w_;
};

}  // namespace detail

// Dense-time oracle verdict for an STL formula at real time t over the
// piecewise-constant extension of w. Requires t and all interval bounds to
// sit on the tick grid.
inline Verdict stl_oracle(const FormulaPtr& phi, const DiscreteTrace& w, const Rational& t) {
    validate_dialect(phi, Dialect::STL);
    detail::DenseEvaluator ev(w);
    return ev.eval(phi, t);
}

}  // namespace sstl
