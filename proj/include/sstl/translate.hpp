#pragma once

#include <optional>
#include <vector>

#include "sstl/formula.hpp"

namespace sstl {

// One bounded temporal operator occurrence = one obligation. The registry
// fixes each obligation's window and the static bound W = Σ (b−a+1): at any
// position, at most w_β overlapping entries of occurrence β can have their
// window open, so W caps the number of simultaneously live obligations.
struct Obligation {
    int id;
    Tick a;
    std::optional<Tick> b;  // nullopt == +∞ upper bound

    bool bounded() const { return b.has_value(); }
    Tick width() const { return bounded() ? *b - a + 1 : 0; }

    // Counter value past which every guard of this obligation is constant.
    Tick counter_cap() const { return bounded() ? *b + 1 : a; }
};

class ObligationRegistry {
public:
    int fresh(Tick a, std::optional<Tick> b) {
        int id = static_cast<int>(list_.size());
        list_.push_back(Obligation{id, a, b});
        return id;
    }

    const Obligation& info(int id) const {
        if (id < 0 || static_cast<std::size_t>(id) >= list_.size())
            throw EvalError("unknown obligation id " + std::to_string(id));
        return list_[static_cast<std::size_t>(id)];
    }

    Tick total_width() const {
        Tick w = 0;
        for (const auto& o : list_) w += o.width();
        return w;
    }

    std::size_t size() const { return list_.size(); }
    auto begin() const { return list_.begin(); }
    auto end() const { return list_.end(); }

private:
    std::vector<Obligation> list_;
};

// Guard encoding choice: Conceptual emits the two-sided within guard,
// Impl emits only one-sided guards (the model-checkable form).
enum class Encoding { Conceptual, Impl };

namespace detail {

// Window of a bounded SSTL operator. A full [0,∞) window (or none) means
// the operator translates unchanged.
inline bool needs_guard(const std::optional<TickInterval>& w) {
    return w.has_value() && !w->is_full();
}

inline GuardAtom window_guard(const TickInterval& w, int id) {
    if (w.hi) return GuardAtom::within(w.lo, *w.hi, id);
    return GuardAtom::lower(w.lo, id);
}

// Bounded Until under either encoding. Conceptual: the witness carries a
// two-sided within guard. Implementable: split guards, with the upper bound
// on both sides; the left occurrence caps how long the obligation may be
// deferred, and the witness needs the upper bound too or a match one tick
// past the window would be admitted.
inline FormulaPtr translate_until(FormulaPtr a, FormulaPtr b, const TickInterval& w,
                                  ObligationRegistry& reg, Encoding enc) {
    int id = reg.fresh(w.lo, w.hi);
    if (enc == Encoding::Conceptual)
        return f_until(std::move(a), f_and(std::move(b), f_guard(window_guard(w, id))), {}, id);
    FormulaPtr witness = std::move(b);
    if (w.lo > 0 || !w.hi) witness = f_and(std::move(witness), f_guard(GuardAtom::lower(w.lo, id)));
    if (w.hi) witness = f_and(std::move(witness), f_guard(GuardAtom::upper(*w.hi, id)));
    FormulaPtr left = std::move(a);
    if (w.hi) {
        FormulaPtr upper = f_guard(GuardAtom::upper(*w.hi, id));
        left = (left->kind == Kind::True) ? std::move(upper) : f_and(std::move(left), std::move(upper));
    }
    return f_until(std::move(left), std::move(witness), {}, id);
}

inline FormulaPtr translate_rec(const FormulaPtr& f, ObligationRegistry& reg, Encoding enc) {
    switch (f->kind) {
        case Kind::True: return f_true();
        case Kind::False: return f_false();
        case Kind::Atom: return f_atom(*f->pred);  // state bijection keeps atoms as-is
        case Kind::Not: return f_not(translate_rec(f->kids[0], reg, enc));
        // Obligation ids follow left-to-right formula order, so the two kid
        // translations are sequenced instead of nested in the call.
        case Kind::And: {
            FormulaPtr a = translate_rec(f->kids[0], reg, enc);
            FormulaPtr b = translate_rec(f->kids[1], reg, enc);
            return f_and(std::move(a), std::move(b));
        }
        case Kind::Or: {
            FormulaPtr a = translate_rec(f->kids[0], reg, enc);
            FormulaPtr b = translate_rec(f->kids[1], reg, enc);
            return f_or(std::move(a), std::move(b));
        }
        case Kind::Implies: {
            FormulaPtr a = translate_rec(f->kids[0], reg, enc);
            FormulaPtr b = translate_rec(f->kids[1], reg, enc);
            return f_implies(std::move(a), std::move(b));
        }
        case Kind::Until: {
            FormulaPtr a = translate_rec(f->kids[0], reg, enc);
            FormulaPtr b = translate_rec(f->kids[1], reg, enc);
            if (!needs_guard(f->tick_window)) return f_until(std::move(a), std::move(b));
            return translate_until(std::move(a), std::move(b), *f->tick_window, reg, enc);
        }
        case Kind::Eventually: {
            FormulaPtr kid = translate_rec(f->kids[0], reg, enc);
            if (!needs_guard(f->tick_window)) return f_eventually(std::move(kid));
            if (enc == Encoding::Impl)
                return translate_until(f_true(), std::move(kid), *f->tick_window, reg, enc);
            const TickInterval& w = *f->tick_window;
            int id = reg.fresh(w.lo, w.hi);
            return f_eventually(f_and(std::move(kid), f_guard(window_guard(w, id))), {}, id);
        }
        case Kind::Always: {
            FormulaPtr kid = translate_rec(f->kids[0], reg, enc);
            if (!needs_guard(f->tick_window)) return f_always(std::move(kid));
            if (enc == Encoding::Impl) {
                // □_[a,b] φ == ¬◊_[a,b] ¬φ, with the ◊ itself a ⊤-Until.
                FormulaPtr dia = translate_until(f_true(), f_not(std::move(kid)),
                                                 *f->tick_window, reg, enc);
                return f_not(std::move(dia));
            }
            const TickInterval& w = *f->tick_window;
            int id = reg.fresh(w.lo, w.hi);
            return f_always(f_implies(f_guard(window_guard(w, id)), std::move(kid)), {}, id);
        }
        case Kind::Next:
        case Kind::Release:
        case Kind::Guard:
            throw EvalError("formula is not in the SSTL dialect");
    }
    throw EvalError("unreachable formula kind");
}

}  // namespace detail

// τ with the conceptual within[a,b] guard encoding.
inline FormulaPtr translate(const FormulaPtr& phi, ObligationRegistry& reg) {
    validate_dialect(phi, Dialect::SSTL);
    FormulaPtr out = detail::translate_rec(phi, reg, Encoding::Conceptual);
    validate_dialect(out, Dialect::LTLP);
    return out;
}

inline FormulaPtr translate(const FormulaPtr& phi) {
    ObligationRegistry reg;
    return translate(phi, reg);
}

// τ with the implementable split-guard encoding: bounded Until directly,
// bounded ◊ as a ⊤-Until, bounded □ as ¬◊¬.
inline FormulaPtr translate_impl(const FormulaPtr& phi, ObligationRegistry& reg) {
    validate_dialect(phi, Dialect::SSTL);
    FormulaPtr out = detail::translate_rec(phi, reg, Encoding::Impl);
    validate_dialect(out, Dialect::LTLP);
    return out;
}

inline FormulaPtr translate_impl(const FormulaPtr& phi) {
    ObligationRegistry reg;
    return translate_impl(phi, reg);
}

}  // namespace sstl
