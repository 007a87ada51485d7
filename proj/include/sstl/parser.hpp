#pragma once

#include <cctype>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "sstl/formula.hpp"
#include "sstl/quantize.hpp"

namespace sstl {

namespace detail {

enum class Tok {
    Ident, Number, LParen, RParen, LBracket, RBracket, Comma, Star, Plus, Minus,
    At, Bang, AndAnd, OrOr, Arrow, Lt, Le, Eq, Ge, Gt, End,
};

struct Token {
    Tok kind;
    std::string text;
    int line, col;
};

inline std::vector<Token> lex(const std::string& src) {
    std::vector<Token> out;
    int line = 1, col = 1;
    std::size_t i = 0;
    auto push = [&](Tok k, std::string t) { out.push_back({k, std::move(t), line, col}); };
    while (i < src.size()) {
        char c = src[i];
        if (c == '\n') { ++line; col = 1; ++i; continue; }
        if (std::isspace(static_cast<unsigned char>(c))) { ++col; ++i; continue; }
        int start_col = col;
        auto advance = [&](std::size_t n) { i += n; col += static_cast<int>(n); };
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            std::size_t j = i;
            while (j < src.size() &&
                   (std::isalnum(static_cast<unsigned char>(src[j])) || src[j] == '_'))
                ++j;
            out.push_back({Tok::Ident, src.substr(i, j - i), line, start_col});
            col += static_cast<int>(j - i);
            i = j;
            continue;
        }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            std::size_t j = i;
            bool dot = false;
            while (j < src.size() &&
                   (std::isdigit(static_cast<unsigned char>(src[j])) || (src[j] == '.' && !dot))) {
                if (src[j] == '.') dot = true;
                ++j;
            }
            out.push_back({Tok::Number, src.substr(i, j - i), line, start_col});
            col += static_cast<int>(j - i);
            i = j;
            continue;
        }
        auto two = src.substr(i, 2);
        if (two == "&&") { push(Tok::AndAnd, two); advance(2); continue; }
        if (two == "||") { push(Tok::OrOr, two); advance(2); continue; }
        if (two == "->") { push(Tok::Arrow, two); advance(2); continue; }
        if (two == "<=") { push(Tok::Le, two); advance(2); continue; }
        if (two == ">=") { push(Tok::Ge, two); advance(2); continue; }
        if (two == "==") { push(Tok::Eq, two); advance(2); continue; }
        switch (c) {
            case '(': push(Tok::LParen, "("); break;
            case ')': push(Tok::RParen, ")"); break;
            case '[': push(Tok::LBracket, "["); break;
            case ']': push(Tok::RBracket, "]"); break;
            case ',': push(Tok::Comma, ","); break;
            case '*': push(Tok::Star, "*"); break;
            case '+': push(Tok::Plus, "+"); break;
            case '-': push(Tok::Minus, "-"); break;
            case '@': push(Tok::At, "@"); break;
            case '!': push(Tok::Bang, "!"); break;
            case '<': push(Tok::Lt, "<"); break;
            case '=': push(Tok::Eq, "="); break;
            case '>': push(Tok::Gt, ">"); break;
            default:
                throw ParseError(std::string("unexpected character '") + c + "'", line, start_col);
        }
        advance(1);
    }
    out.push_back({Tok::End, "", line, col});
    return out;
}

inline const std::set<std::string> kReserved = {"true", "false", "U", "G", "F", "X",
                                                "inf", "within", "j", "j0"};

class FormulaParser {
public:
    FormulaParser(std::vector<Token> toks, Dialect dialect, std::int64_t factor,
                  const std::optional<std::vector<std::string>>& known_signals)
        : toks_(std::move(toks)), dialect_(dialect), factor_(factor) {
        if (known_signals)
            signals_.emplace(known_signals->begin(), known_signals->end());
    }

    FormulaPtr parse() {
        FormulaPtr f = parse_implies();
        expect(Tok::End, "end of input");
        return f;
    }

private:
    const Token& peek() const { return toks_[pos_]; }
    Token take() { return toks_[pos_++]; }
    bool at(Tok k) const { return peek().kind == k; }
    bool at_ident(const char* word) const { return at(Tok::Ident) && peek().text == word; }

    [[noreturn]] void fail(const std::string& msg) const {
        throw ParseError(msg + ", got '" + (peek().kind == Tok::End ? "<end>" : peek().text) + "'",
                         peek().line, peek().col);
    }

    Token expect(Tok k, const char* what) {
        if (!at(k)) fail(std::string("expected ") + what);
        return take();
    }

    // -> is right-associative and binds loosest.
    FormulaPtr parse_implies() {
        FormulaPtr lhs = parse_or();
        if (at(Tok::Arrow)) {
            take();
            return f_implies(std::move(lhs), parse_implies());
        }
        return lhs;
    }

    FormulaPtr parse_or() {
        FormulaPtr lhs = parse_and();
        while (at(Tok::OrOr)) {
            take();
            lhs = f_or(std::move(lhs), parse_and());
        }
        return lhs;
    }

    FormulaPtr parse_and() {
        FormulaPtr lhs = parse_until();
        while (at(Tok::AndAnd)) {
            take();
            lhs = f_and(std::move(lhs), parse_until());
        }
        return lhs;
    }

    // U is right-associative and binds tighter than &&.
    FormulaPtr parse_until() {
        FormulaPtr lhs = parse_unary();
        if (at_ident("U")) {
            take();
            auto [rw, tw] = parse_window();
            FormulaPtr rhs = parse_until();
            if (dialect_ == Dialect::STL) return f_until_real(std::move(lhs), std::move(rhs), rw);
            return f_until(std::move(lhs), std::move(rhs), tw);
        }
        return lhs;
    }

    FormulaPtr parse_unary() {
        if (at(Tok::Bang)) {
            take();
            return f_not(parse_unary());
        }
        if (at_ident("G")) {
            take();
            auto [rw, tw] = parse_window();
            FormulaPtr kid = parse_unary();
            if (dialect_ == Dialect::STL) return f_always_real(std::move(kid), rw);
            return f_always(std::move(kid), tw);
        }
        if (at_ident("F")) {
            take();
            auto [rw, tw] = parse_window();
            FormulaPtr kid = parse_unary();
            if (dialect_ == Dialect::STL) return f_eventually_real(std::move(kid), rw);
            return f_eventually(std::move(kid), tw);
        }
        if (at_ident("X")) {
            if (dialect_ != Dialect::LTLP) fail("X is only available in the LTLP dialect");
            take();
            return f_next(parse_unary());
        }
        return parse_primary();
    }

    FormulaPtr parse_primary() {
        if (at(Tok::LParen)) {
            take();
            FormulaPtr f = parse_implies();
            expect(Tok::RParen, "')'");
            return f;
        }
        if (at_ident("true")) {
            take();
            return f_true();
        }
        if (at_ident("false")) {
            take();
            return f_false();
        }
        if (at_ident("within")) return parse_within_guard();
        if (at_ident("j")) return parse_split_guard();
        return parse_predicate();
    }

    // within[a,b]@k
    FormulaPtr parse_within_guard() {
        if (dialect_ != Dialect::LTLP) fail("guard atoms are only available in the LTLP dialect");
        take();
        expect(Tok::LBracket, "'['");
        Tick a = parse_tick_bound();
        expect(Tok::Comma, "','");
        Tick b = parse_tick_bound();
        expect(Tok::RBracket, "']'");
        expect(Tok::At, "'@'");
        int id = static_cast<int>(parse_tick_bound());
        return f_guard(GuardAtom::within(a, b, id));
    }

    // j>=j0@k+a  |  j<=j0@k+b
    FormulaPtr parse_split_guard() {
        if (dialect_ != Dialect::LTLP) fail("guard atoms are only available in the LTLP dialect");
        take();
        bool lower;
        if (at(Tok::Ge)) lower = true;
        else if (at(Tok::Le)) lower = false;
        else fail("expected '>=' or '<=' after 'j'");
        take();
        if (!at_ident("j0")) fail("expected 'j0'");
        take();
        expect(Tok::At, "'@'");
        int id = static_cast<int>(parse_tick_bound());
        expect(Tok::Plus, "'+'");
        Tick bound = parse_tick_bound();
        return f_guard(lower ? GuardAtom::lower(bound, id) : GuardAtom::upper(bound, id));
    }

    Tick parse_tick_bound() {
        Token t = expect(Tok::Number, "integer");
        if (t.text.find('.') != std::string::npos)
            throw ParseError("expected integer, got '" + t.text + "'", t.line, t.col);
        return std::stoll(t.text);
    }

    // [lo,hi] temporal bound; absent means [0,inf). STL bounds are reals,
    // SSTL bounds non-negative integers; LTLP operators take no bounds.
    std::pair<std::optional<RealInterval>, std::optional<TickInterval>> parse_window() {
        if (!at(Tok::LBracket)) return {std::nullopt, std::nullopt};
        if (dialect_ == Dialect::LTLP) fail("LTLP temporal operators take no interval");
        Token open = take();
        if (dialect_ == Dialect::STL) {
            Rational lo = parse_real_bound();
            expect(Tok::Comma, "','");
            std::optional<Rational> hi;
            if (at_ident("inf")) take();
            else hi = parse_real_bound();
            expect(Tok::RBracket, "']'");
            try {
                return {RealInterval(lo, hi), std::nullopt};
            } catch (const Error& e) {
                throw ParseError(e.what(), open.line, open.col);
            }
        }
        Tick lo = parse_tick_bound();
        expect(Tok::Comma, "','");
        std::optional<Tick> hi;
        if (at_ident("inf")) take();
        else hi = parse_tick_bound();
        expect(Tok::RBracket, "']'");
        try {
            return {std::nullopt, TickInterval(lo, hi)};
        } catch (const Error& e) {
            throw ParseError(e.what(), open.line, open.col);
        }
    }

    Rational parse_real_bound() {
        Token t = expect(Tok::Number, "number");
        return Rational::from_decimal(t.text);
    }

    // term (('+'|'-') term)* REL signed-number, where term is
    // [number '*'] SIG with an optional leading '-'.
    FormulaPtr parse_predicate() {
        std::vector<LinearPredicate::Term> terms;
        terms.push_back(parse_term(false));
        while (at(Tok::Plus) || at(Tok::Minus)) {
            bool negate = at(Tok::Minus);
            take();
            terms.push_back(parse_term(negate));
        }
        Rel rel;
        if (at(Tok::Lt)) rel = Rel::Lt;
        else if (at(Tok::Le)) rel = Rel::Le;
        else if (at(Tok::Eq)) rel = Rel::Eq;
        else if (at(Tok::Ge)) rel = Rel::Ge;
        else if (at(Tok::Gt)) rel = Rel::Gt;
        else fail("expected relational operator");
        take();
        bool neg_off = false;
        if (at(Tok::Minus)) { take(); neg_off = true; }
        Token off = expect(Tok::Number, "number");
        std::int64_t offset = quantize_text(off.text, factor_);
        if (neg_off) offset = -offset;
        return f_atom(LinearPredicate(std::move(terms), offset, rel, factor_));
    }

    LinearPredicate::Term parse_term(bool pre_negated) {
        bool neg = pre_negated;
        if (at(Tok::Minus)) { take(); neg = !neg; }
        std::int64_t coeff = factor_;  // coefficient 1, scaled
        if (at(Tok::Number)) {
            Token c = take();
            coeff = quantize_text(c.text, factor_);
            expect(Tok::Star, "'*'");
        }
        Token sig = expect(Tok::Ident, "signal name");
        if (kReserved.count(sig.text))
            throw ParseError("'" + sig.text + "' is reserved and cannot name a signal",
                             sig.line, sig.col);
        if (signals_ && !signals_->count(sig.text))
            throw ParseError("unknown signal name '" + sig.text + "'", sig.line, sig.col);
        return {sig.text, neg ? -coeff : coeff};
    }

    std::vector<Token> toks_;
    Dialect dialect_;
    std::int64_t factor_;
    std::optional<std::set<std::string>> signals_;
    std::size_t pos_ = 0;
};

// The pretty-printer emits guard atoms with their obligation id, but the
// operator that anchors the id is implicit in the text. It is recovered as
// the lowest anchoring temporal operator (U, R, F, G) whose subtree covers
// every guard carrying that id, which is exactly where the translator
// placed it.
inline void count_guard_ids(const FormulaPtr& f, std::map<int, int>& counts) {
    if (f->kind == Kind::Guard) ++counts[f->guard->obligation_id];
    for (const auto& k : f->kids) count_guard_ids(k, counts);
}

inline FormulaPtr rebind_obligations_root(const FormulaPtr& f) {
    std::map<int, int> total;
    count_guard_ids(f, total);
    if (total.empty()) return f;

    struct Binder {
        const std::map<int, int>& total;
        std::set<int> open;

        FormulaPtr walk(const FormulaPtr& f) {
            auto copy = std::make_shared<Formula>(*f);
            copy->kids.clear();
            for (const auto& k : f->kids) copy->kids.push_back(walk(k));

            bool anchoring = f->kind == Kind::Until || f->kind == Kind::Release ||
                             f->kind == Kind::Eventually || f->kind == Kind::Always;
            if (!anchoring) return copy;

            std::map<int, int> sub;
            count_guard_ids(copy, sub);
            std::optional<int> anchor;
            for (const auto& [id, n] : sub) {
                if (!open.count(id) || n != total.at(id)) continue;
                if (anchor)
                    throw ParseError("guard ids " + std::to_string(*anchor) + " and " +
                                     std::to_string(id) + " both anchor at one operator");
                anchor = id;
            }
            if (anchor) {
                copy->obligation_id = *anchor;
                open.erase(*anchor);
            }
            return copy;
        }
    };

    Binder binder{total, {}};
    for (const auto& [id, n] : total) binder.open.insert(id);
    return binder.walk(f);
}

}  // namespace detail

// Parses formula text in the given dialect. Numeric constants are quantized
// by `factor`. When `known_signals` is provided, signal names outside it are
// rejected at parse time.
inline FormulaPtr parse_formula(const std::string& text, Dialect dialect,
                                std::int64_t factor = kDefaultFactor,
                                const std::optional<std::vector<std::string>>& known_signals = {}) {
    detail::FormulaParser p(detail::lex(text), dialect, factor, known_signals);
    FormulaPtr f = p.parse();
    if (dialect == Dialect::LTLP) f = detail::rebind_obligations_root(f);
    validate_dialect(f, dialect);
    return f;
}

}  // namespace sstl
