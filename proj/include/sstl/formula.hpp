#pragma once

#include <memory>
#include <optional>
#include <vector>

#include "sstl/error.hpp"
#include "sstl/interval.hpp"
#include "sstl/predicate.hpp"

namespace sstl {

enum class Dialect { STL, SSTL, LTLP };

// One AST covers the three dialects. STL carries real-second windows, SSTL
// carries tick windows, and LTLP carries no windows at all (its timing lives
// in Guard atoms over the position counter). Release never appears in parsed
// input; it exists for negation normal form inside the automata pipeline.
enum class Kind {
    True,
    False,
    Atom,
    Guard,
    Not,
    And,
    Or,
    Implies,
    Next,
    Until,
    Release,
    Eventually,
    Always,
};

struct Formula;
using FormulaPtr = std::shared_ptr<const Formula>;

struct Formula {
    Kind kind;
    std::optional<LinearPredicate> pred;        // Atom
    std::optional<GuardAtom> guard;             // Guard
    std::vector<FormulaPtr> kids;               // operands, in order
    std::optional<RealInterval> real_window;    // STL temporal bounds
    std::optional<TickInterval> tick_window;    // SSTL temporal bounds
    std::optional<int> obligation_id;           // anchors j₀ on translated operators

    bool has_window() const { return real_window || tick_window; }
    bool is_temporal() const {
        return kind == Kind::Next || kind == Kind::Until || kind == Kind::Release ||
               kind == Kind::Eventually || kind == Kind::Always;
    }
};

inline FormulaPtr f_true() { return std::make_shared<Formula>(Formula{Kind::True, {}, {}, {}, {}, {}, {}}); }
inline FormulaPtr f_false() { return std::make_shared<Formula>(Formula{Kind::False, {}, {}, {}, {}, {}, {}}); }

inline FormulaPtr f_atom(LinearPredicate p) {
    return std::make_shared<Formula>(Formula{Kind::Atom, std::move(p), {}, {}, {}, {}, {}});
}

inline FormulaPtr f_guard(GuardAtom g) {
    return std::make_shared<Formula>(Formula{Kind::Guard, {}, g, {}, {}, {}, {}});
}

inline FormulaPtr f_not(FormulaPtr x) {
    return std::make_shared<Formula>(Formula{Kind::Not, {}, {}, {std::move(x)}, {}, {}, {}});
}

inline FormulaPtr f_and(FormulaPtr a, FormulaPtr b) {
    return std::make_shared<Formula>(Formula{Kind::And, {}, {}, {std::move(a), std::move(b)}, {}, {}, {}});
}

inline FormulaPtr f_or(FormulaPtr a, FormulaPtr b) {
    return std::make_shared<Formula>(Formula{Kind::Or, {}, {}, {std::move(a), std::move(b)}, {}, {}, {}});
}

inline FormulaPtr f_implies(FormulaPtr a, FormulaPtr b) {
    return std::make_shared<Formula>(
        Formula{Kind::Implies, {}, {}, {std::move(a), std::move(b)}, {}, {}, {}});
}

inline FormulaPtr f_next(FormulaPtr x) {
    return std::make_shared<Formula>(Formula{Kind::Next, {}, {}, {std::move(x)}, {}, {}, {}});
}

inline FormulaPtr f_until(FormulaPtr a, FormulaPtr b, std::optional<TickInterval> w = {},
                          std::optional<int> obligation = {}) {
    return std::make_shared<Formula>(
        Formula{Kind::Until, {}, {}, {std::move(a), std::move(b)}, {}, w, obligation});
}

inline FormulaPtr f_until_real(FormulaPtr a, FormulaPtr b, std::optional<RealInterval> w) {
    return std::make_shared<Formula>(
        Formula{Kind::Until, {}, {}, {std::move(a), std::move(b)}, w, {}, {}});
}

inline FormulaPtr f_release(FormulaPtr a, FormulaPtr b, std::optional<int> obligation = {}) {
    return std::make_shared<Formula>(
        Formula{Kind::Release, {}, {}, {std::move(a), std::move(b)}, {}, {}, obligation});
}

inline FormulaPtr f_eventually(FormulaPtr x, std::optional<TickInterval> w = {},
                               std::optional<int> obligation = {}) {
    return std::make_shared<Formula>(
        Formula{Kind::Eventually, {}, {}, {std::move(x)}, {}, w, obligation});
}

inline FormulaPtr f_eventually_real(FormulaPtr x, std::optional<RealInterval> w) {
    return std::make_shared<Formula>(Formula{Kind::Eventually, {}, {}, {std::move(x)}, w, {}, {}});
}

inline FormulaPtr f_always(FormulaPtr x, std::optional<TickInterval> w = {},
                           std::optional<int> obligation = {}) {
    return std::make_shared<Formula>(
        Formula{Kind::Always, {}, {}, {std::move(x)}, {}, w, obligation});
}

inline FormulaPtr f_always_real(FormulaPtr x, std::optional<RealInterval> w) {
    return std::make_shared<Formula>(Formula{Kind::Always, {}, {}, {std::move(x)}, w, {}, {}});
}

inline std::size_t node_count(const FormulaPtr& f) {
    std::size_t n = 1;
    for (const auto& k : f->kids) n += node_count(k);
    return n;
}

inline bool structurally_equal(const FormulaPtr& a, const FormulaPtr& b) {
    if (a->kind != b->kind) return false;
    if (a->pred.has_value() != b->pred.has_value()) return false;
    if (a->pred && !(*a->pred == *b->pred)) return false;
    if (a->guard.has_value() != b->guard.has_value()) return false;
    if (a->guard && !(*a->guard == *b->guard)) return false;
    if (a->obligation_id != b->obligation_id) return false;
    if (a->real_window.has_value() != b->real_window.has_value()) return false;
    if (a->real_window &&
        (a->real_window->lo != b->real_window->lo || a->real_window->hi != b->real_window->hi))
        return false;
    if (a->tick_window.has_value() != b->tick_window.has_value()) return false;
    if (a->tick_window &&
        (a->tick_window->lo != b->tick_window->lo || a->tick_window->hi != b->tick_window->hi))
        return false;
    if (a->kids.size() != b->kids.size()) return false;
    for (std::size_t i = 0; i < a->kids.size(); ++i)
        if (!structurally_equal(a->kids[i], b->kids[i])) return false;
    return true;
}

// Checks the dialect invariants: STL windows are real-valued, SSTL windows
// tick-valued, LTLP windowless with Next/Guard permitted only there.
inline void validate_dialect(const FormulaPtr& f, Dialect d) {
    if (f->real_window && d != Dialect::STL) throw EvalError("real-second window outside STL dialect");
    if (f->tick_window && d != Dialect::SSTL) throw EvalError("tick window outside SSTL dialect");
    if (f->kind == Kind::Next && d != Dialect::LTLP) throw EvalError("Next outside LTLP dialect");
    if (f->kind == Kind::Guard && d != Dialect::LTLP) throw EvalError("guard atom outside LTLP dialect");
    if (f->kind == Kind::Release && d != Dialect::LTLP) throw EvalError("Release outside LTLP dialect");
    for (const auto& k : f->kids) validate_dialect(k, d);
}

}  // namespace sstl
