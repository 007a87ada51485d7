#pragma once

#include "sstl/formula.hpp"

namespace sstl {

namespace detail {

inline FormulaPtr nnf_pos(const FormulaPtr& f);
inline FormulaPtr nnf_neg(const FormulaPtr& f);

inline FormulaPtr nnf_pos(const FormulaPtr& f) {
    switch (f->kind) {
        case Kind::True:
        case Kind::False:
        case Kind::Atom:
        case Kind::Guard: return f;
        case Kind::Not: return nnf_neg(f->kids[0]);
        case Kind::And: return f_and(nnf_pos(f->kids[0]), nnf_pos(f->kids[1]));
        case Kind::Or: return f_or(nnf_pos(f->kids[0]), nnf_pos(f->kids[1]));
        case Kind::Implies: return f_or(nnf_neg(f->kids[0]), nnf_pos(f->kids[1]));
        case Kind::Next: return f_next(nnf_pos(f->kids[0]));
        case Kind::Until:
            return f_until(nnf_pos(f->kids[0]), nnf_pos(f->kids[1]), {}, f->obligation_id);
        case Kind::Release:
            return f_release(nnf_pos(f->kids[0]), nnf_pos(f->kids[1]), f->obligation_id);
        case Kind::Eventually:  // F φ == ⊤ U φ
            return f_until(f_true(), nnf_pos(f->kids[0]), {}, f->obligation_id);
        case Kind::Always:  // G φ == ⊥ R φ
            return f_release(f_false(), nnf_pos(f->kids[0]), f->obligation_id);
    }
    throw EvalError("unreachable formula kind");
}

inline FormulaPtr nnf_neg(const FormulaPtr& f) {
    switch (f->kind) {
        case Kind::True: return f_false();
        case Kind::False: return f_true();
        case Kind::Atom:
        case Kind::Guard: return f_not(f);
        case Kind::Not: return nnf_pos(f->kids[0]);
        case Kind::And: return f_or(nnf_neg(f->kids[0]), nnf_neg(f->kids[1]));
        case Kind::Or: return f_and(nnf_neg(f->kids[0]), nnf_neg(f->kids[1]));
        case Kind::Implies: return f_and(nnf_pos(f->kids[0]), nnf_neg(f->kids[1]));
        case Kind::Next: return f_next(nnf_neg(f->kids[0]));
        case Kind::Until:
            return f_release(nnf_neg(f->kids[0]), nnf_neg(f->kids[1]), f->obligation_id);
        case Kind::Release:
            return f_until(nnf_neg(f->kids[0]), nnf_neg(f->kids[1]), {}, f->obligation_id);
        case Kind::Eventually:  // ¬F φ == ⊥ R ¬φ
            return f_release(f_false(), nnf_neg(f->kids[0]), f->obligation_id);
        case Kind::Always:  // ¬G φ == ⊤ U ¬φ
            return f_until(f_true(), nnf_neg(f->kids[0]), {}, f->obligation_id);
    }
    throw EvalError("unreachable formula kind");
}

}  // namespace detail

// Negation normal form over the automata core: literals (atoms and guards,
// possibly under one Not), ∧, ∨, X, U, R. F and G expand to ⊤-Until and
// ⊥-Release. Obligation ids ride along through dualization: the dual
// operator starts at the same positions, so its guards keep the same j₀.
inline FormulaPtr nnf(const FormulaPtr& f) {
    validate_dialect(f, Dialect::LTLP);
    return detail::nnf_pos(f);
}

// NNF of ¬φ.
inline FormulaPtr negate(const FormulaPtr& f) {
    validate_dialect(f, Dialect::LTLP);
    return detail::nnf_neg(f);
}

inline bool is_literal(const FormulaPtr& f) {
    if (f->kind == Kind::True || f->kind == Kind::False || f->kind == Kind::Atom ||
        f->kind == Kind::Guard)
        return true;
    return f->kind == Kind::Not &&
           (f->kids[0]->kind == Kind::Atom || f->kids[0]->kind == Kind::Guard);
}

}  // namespace sstl
