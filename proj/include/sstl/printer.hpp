#pragma once

#include <string>

#include "sstl/formula.hpp"
#include "sstl/rational.hpp"

namespace sstl {

namespace detail {

// Binding strength, loosest to tightest: -> < || < && < U < unary < atoms.
inline int precedence(Kind k) {
    switch (k) {
        case Kind::Implies: return 1;
        case Kind::Or: return 2;
        case Kind::And: return 3;
        case Kind::Until:
        case Kind::Release: return 4;
        case Kind::Not:
        case Kind::Next:
        case Kind::Eventually:
        case Kind::Always: return 5;
        default: return 6;
    }
}

inline std::string coeff_text(std::int64_t scaled, std::int64_t factor) {
    return Rational(scaled, factor).to_string();
}

inline std::string predicate_text(const LinearPredicate& p) {
    std::string out;
    for (std::size_t i = 0; i < p.terms.size(); ++i) {
        std::int64_t c = p.terms[i].coeff;
        bool neg = c < 0;
        std::int64_t mag = neg ? -c : c;
        if (i == 0) {
            if (neg) out += "-";
        } else {
            out += neg ? " - " : " + ";
        }
        if (mag != p.factor) out += coeff_text(mag, p.factor) + "*";
        out += p.terms[i].signal;
    }
    out += " ";
    out += rel_text(p.rel);
    out += " ";
    out += coeff_text(p.offset, p.factor);
    return out;
}

inline std::string guard_text(const GuardAtom& g) {
    switch (g.kind) {
        case GuardAtom::Kind::WithinBoth:
            return "within[" + std::to_string(g.a) + "," + std::to_string(g.b) + "]@" +
                   std::to_string(g.obligation_id);
        case GuardAtom::Kind::LowerOnly:
            return "j>=j0@" + std::to_string(g.obligation_id) + "+" + std::to_string(g.a);
        case GuardAtom::Kind::UpperOnly:
            return "j<=j0@" + std::to_string(g.obligation_id) + "+" + std::to_string(g.b);
    }
    return "?";
}

inline std::string window_text(const Formula& f) {
    if (f.real_window) {
        if (f.real_window->is_full()) return "";
        return "[" + f.real_window->lo.to_string() + "," +
               (f.real_window->hi ? f.real_window->hi->to_string() : "inf") + "]";
    }
    if (f.tick_window) {
        if (f.tick_window->is_full()) return "";
        return "[" + std::to_string(f.tick_window->lo) + "," +
               (f.tick_window->hi ? std::to_string(*f.tick_window->hi) : "inf") + "]";
    }
    return "";
}

inline std::string print_rec(const FormulaPtr& f, int parent_prec) {
    int prec = precedence(f->kind);
    std::string body;
    switch (f->kind) {
        case Kind::True: body = "true"; break;
        case Kind::False: body = "false"; break;
        case Kind::Atom: body = predicate_text(*f->pred); break;
        case Kind::Guard: body = guard_text(*f->guard); break;
        case Kind::Not: body = "!" + print_rec(f->kids[0], prec); break;
        case Kind::Next: body = "X " + print_rec(f->kids[0], prec); break;
        case Kind::Eventually:
            body = "F" + window_text(*f) + " " + print_rec(f->kids[0], prec);
            break;
        case Kind::Always:
            body = "G" + window_text(*f) + " " + print_rec(f->kids[0], prec);
            break;
        case Kind::And:
            body = print_rec(f->kids[0], prec) + " && " + print_rec(f->kids[1], prec + 1);
            break;
        case Kind::Or:
            body = print_rec(f->kids[0], prec) + " || " + print_rec(f->kids[1], prec + 1);
            break;
        case Kind::Implies:
            body = print_rec(f->kids[0], prec + 1) + " -> " + print_rec(f->kids[1], prec);
            break;
        case Kind::Until:
            body = print_rec(f->kids[0], prec + 1) + " U" + window_text(*f) + " " +
                   print_rec(f->kids[1], prec);
            break;
        case Kind::Release:
            body = print_rec(f->kids[0], prec + 1) + " R " + print_rec(f->kids[1], prec);
            break;
    }
    if (prec < parent_prec) return "(" + body + ")";
    return body;
}

}  // namespace detail

inline std::string to_string(const FormulaPtr& f) { return detail::print_rec(f, 0); }

}  // namespace sstl
