#pragma once

#include <cctype>
#include <cstdint>
#include <map>
#include <memory>
#include <random>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "sstl/error.hpp"
#include "sstl/quantize.hpp"
#include "sstl/rational.hpp"
#include "sstl/trace.hpp"

namespace sstl {

// ---------------------------------------------------------------------------
// Integer expressions over model variables. Comparisons and boolean
// connectives yield 0/1, so guards are just expressions tested for nonzero.
// ---------------------------------------------------------------------------
struct ModelExpr;
using ModelExprPtr = std::shared_ptr<const ModelExpr>;

struct ModelExpr {
    enum class Op {
        Const,
        Var,
        Neg,
        Not,
        Add,
        Sub,
        Mul,
        Mod,
        Eq,
        Ne,
        Lt,
        Le,
        Gt,
        Ge,
        And,
        Or,
    };

    Op op;
    std::int64_t value = 0;  // Const
    int var = -1;            // Var, index into the variable list
    ModelExprPtr a, b;
};

inline ModelExprPtr m_const(std::int64_t v) {
    return std::make_shared<ModelExpr>(ModelExpr{ModelExpr::Op::Const, v, -1, nullptr, nullptr});
}
inline ModelExprPtr m_var(int idx) {
    return std::make_shared<ModelExpr>(ModelExpr{ModelExpr::Op::Var, 0, idx, nullptr, nullptr});
}
inline ModelExprPtr m_unary(ModelExpr::Op op, ModelExprPtr x) {
    return std::make_shared<ModelExpr>(ModelExpr{op, 0, -1, std::move(x), nullptr});
}
inline ModelExprPtr m_binary(ModelExpr::Op op, ModelExprPtr x, ModelExprPtr y) {
    return std::make_shared<ModelExpr>(ModelExpr{op, 0, -1, std::move(x), std::move(y)});
}

using SysState = std::vector<std::int64_t>;

inline std::int64_t eval_expr(const ModelExprPtr& e, const SysState& s) {
    switch (e->op) {
        case ModelExpr::Op::Const: return e->value;
        case ModelExpr::Op::Var: return s[static_cast<std::size_t>(e->var)];
        case ModelExpr::Op::Neg: return -eval_expr(e->a, s);
        case ModelExpr::Op::Not: return eval_expr(e->a, s) == 0 ? 1 : 0;
        case ModelExpr::Op::Add: return eval_expr(e->a, s) + eval_expr(e->b, s);
        case ModelExpr::Op::Sub: return eval_expr(e->a, s) - eval_expr(e->b, s);
        case ModelExpr::Op::Mul: return eval_expr(e->a, s) * eval_expr(e->b, s);
        case ModelExpr::Op::Mod: {
            std::int64_t d = eval_expr(e->b, s);
            if (d == 0) throw ModelError("modulo by zero");
            return eval_expr(e->a, s) % d;
        }
        case ModelExpr::Op::Eq: return eval_expr(e->a, s) == eval_expr(e->b, s) ? 1 : 0;
        case ModelExpr::Op::Ne: return eval_expr(e->a, s) != eval_expr(e->b, s) ? 1 : 0;
        case ModelExpr::Op::Lt: return eval_expr(e->a, s) < eval_expr(e->b, s) ? 1 : 0;
        case ModelExpr::Op::Le: return eval_expr(e->a, s) <= eval_expr(e->b, s) ? 1 : 0;
        case ModelExpr::Op::Gt: return eval_expr(e->a, s) > eval_expr(e->b, s) ? 1 : 0;
        case ModelExpr::Op::Ge: return eval_expr(e->a, s) >= eval_expr(e->b, s) ? 1 : 0;
        case ModelExpr::Op::And:
            return eval_expr(e->a, s) != 0 && eval_expr(e->b, s) != 0 ? 1 : 0;
        case ModelExpr::Op::Or: return eval_expr(e->a, s) != 0 || eval_expr(e->b, s) != 0 ? 1 : 0;
    }
    throw ModelError("unreachable expression op");
}

// ---------------------------------------------------------------------------
// Finite-state tick-driven model. Each process block applies exactly one
// enabled rule per tick (or stutters when none is enabled); all chosen
// updates across processes read the old state and are applied together.
// Processes must write disjoint variable sets, so a round is well-defined.
// ---------------------------------------------------------------------------
struct VarDecl {
    std::string name;
    std::int64_t lo, hi, init;
};

struct ModelRule {
    ModelExprPtr guard;
    std::vector<std::pair<int, ModelExprPtr>> updates;  // var index := expr
};

struct ModelProcess {
    std::string name;
    std::vector<ModelRule> rules;
};

struct TransitionSystem {
    std::vector<VarDecl> vars;
    std::vector<ModelProcess> procs;

    int var_index(const std::string& name) const {
        for (std::size_t i = 0; i < vars.size(); ++i)
            if (vars[i].name == name) return static_cast<int>(i);
        return -1;
    }

    SysState initial_state() const {
        SysState s;
        s.reserve(vars.size());
        for (const auto& v : vars) s.push_back(v.init);
        return s;
    }

    std::vector<std::string> signal_names() const {
        std::vector<std::string> out;
        out.reserve(vars.size());
        for (const auto& v : vars) out.push_back(v.name);
        return out;
    }
};

namespace detail {

inline void check_domains(const TransitionSystem& sys, const SysState& s) {
    for (std::size_t i = 0; i < sys.vars.size(); ++i) {
        const VarDecl& v = sys.vars[i];
        if (s[i] < v.lo || s[i] > v.hi)
            throw ModelError("variable '" + v.name + "' left its domain [" +
                             std::to_string(v.lo) + ".." + std::to_string(v.hi) +
                             "] with value " + std::to_string(s[i]));
    }
}

// Enabled rule indices per process; an empty list means the process stutters.
inline std::vector<std::vector<std::size_t>> enabled_choices(const TransitionSystem& sys,
                                                             const SysState& s) {
    std::vector<std::vector<std::size_t>> out(sys.procs.size());
    for (std::size_t p = 0; p < sys.procs.size(); ++p)
        for (std::size_t r = 0; r < sys.procs[p].rules.size(); ++r)
            if (eval_expr(sys.procs[p].rules[r].guard, s) != 0) out[p].push_back(r);
    return out;
}

inline SysState apply_round(const TransitionSystem& sys, const SysState& s,
                            const std::vector<std::size_t>& pick,
                            const std::vector<std::vector<std::size_t>>& choices) {
    SysState next = s;
    for (std::size_t p = 0; p < sys.procs.size(); ++p) {
        if (choices[p].empty()) continue;  // stutter
        const ModelRule& rule = sys.procs[p].rules[choices[p][pick[p]]];
        for (const auto& [idx, expr] : rule.updates)
            next[static_cast<std::size_t>(idx)] = eval_expr(expr, s);
    }
    check_domains(sys, next);
    return next;
}

}  // namespace detail

// All one-round successors, ordered by rule index per process. Always
// nonempty: when every process stutters the state loops to itself.
inline std::vector<SysState> successors(const TransitionSystem& sys, const SysState& s) {
    auto choices = detail::enabled_choices(sys, s);
    std::vector<std::size_t> pick(sys.procs.size(), 0);
    std::vector<SysState> out;
    while (true) {
        out.push_back(detail::apply_round(sys, s, pick, choices));
        std::size_t p = 0;
        for (; p < pick.size(); ++p) {
            if (choices[p].size() > 1 && pick[p] + 1 < choices[p].size()) {
                ++pick[p];
                for (std::size_t q = 0; q < p; ++q) pick[q] = 0;
                break;
            }
            pick[p] = 0;
        }
        if (p == pick.size()) break;
    }
    return out;
}

// Seeded random walk. The trace carries the model's variables as signals,
// values scaled by `factor`; row 0 is the initial valuation. Nondeterminism
// is resolved with rng() % alternatives, which keeps runs reproducible
// across platforms for a given seed.
inline DiscreteTrace simulate(const TransitionSystem& sys, std::size_t ticks, std::uint64_t seed,
                              Rational dt = Rational(1), std::int64_t factor = kDefaultFactor) {
    if (ticks == 0) throw ModelError("simulation needs at least one tick");
    std::mt19937_64 rng(seed);
    DiscreteTrace tr;
    tr.dt = dt;
    tr.factor = factor;
    tr.signals = sys.signal_names();

    SysState s = sys.initial_state();
    detail::check_domains(sys, s);
    for (std::size_t t = 0; t < ticks; ++t) {
        std::vector<std::int64_t> row;
        row.reserve(s.size());
        for (std::int64_t v : s) row.push_back(v * factor);
        tr.values.push_back(std::move(row));
        if (t + 1 == ticks) break;
        auto choices = detail::enabled_choices(sys, s);
        std::vector<std::size_t> pick(sys.procs.size(), 0);
        for (std::size_t p = 0; p < pick.size(); ++p)
            if (choices[p].size() > 1)
                pick[p] = static_cast<std::size_t>(rng() % choices[p].size());
        s = detail::apply_round(sys, s, pick, choices);
    }
    return tr;
}

// ---------------------------------------------------------------------------
// ModelSpec text format:
//
//   var phase in [0..12] init 0;
//   trans cycle: choose {
//     guard phase <= 1 -> updates { phase := phase + 1 }
//   | guard phase = 2  -> updates { phase := 3, NS_green := 0 }
//   };
//   trans other: guard x < 5 -> updates { x := x + 1 };
//
// Each `trans NAME:` declares one process block; a bare rule is a one-rule
// block and `choose { rule | rule | ... }` lists nondeterministic
// alternatives. Comments run from '#' to end of line.
// ---------------------------------------------------------------------------
namespace detail {

class ModelParser {
public:
    explicit ModelParser(const std::string& text) : text_(text) {}

    TransitionSystem parse() {
        TransitionSystem sys;
        skip_ws();
        while (!eof()) {
            if (try_word("var"))
                parse_var(sys);
            else if (try_word("trans"))
                parse_process(sys);
            else
                fail("expected 'var' or 'trans'");
            skip_ws();
        }
        if (sys.vars.empty()) fail("model declares no variables");
        check_write_sets(sys);
        return sys;
    }

private:
    void parse_var(TransitionSystem& sys) {
        std::string name = ident("variable name");
        if (sys.var_index(name) >= 0) fail("duplicate variable '" + name + "'");
        expect_word("in");
        expect('[');
        std::int64_t lo = integer();
        expect('.');
        expect('.');
        std::int64_t hi = integer();
        expect(']');
        if (lo > hi) fail("empty domain for '" + name + "'");
        expect_word("init");
        std::int64_t init = integer();
        if (init < lo || init > hi) fail("init value for '" + name + "' outside its domain");
        expect(';');
        sys.vars.push_back({name, lo, hi, init});
    }

    void parse_process(TransitionSystem& sys) {
        ModelProcess proc;
        proc.name = ident("process name");
        for (const auto& p : sys.procs)
            if (p.name == proc.name) fail("duplicate process '" + proc.name + "'");
        expect(':');
        skip_ws();
        if (try_word("choose")) {
            expect('{');
            proc.rules.push_back(parse_rule(sys));
            skip_ws();
            while (peek() == '|') {
                get();
                proc.rules.push_back(parse_rule(sys));
                skip_ws();
            }
            expect('}');
        } else {
            proc.rules.push_back(parse_rule(sys));
        }
        expect(';');
        sys.procs.push_back(std::move(proc));
    }

    ModelRule parse_rule(TransitionSystem& sys) {
        ModelRule rule;
        expect_word("guard");
        rule.guard = parse_expr(sys);
        expect('-');
        expect('>');
        expect_word("updates");
        expect('{');
        skip_ws();
        if (peek() != '}') {
            while (true) {
                std::string name = ident("variable name");
                int idx = sys.var_index(name);
                if (idx < 0) fail("unknown variable '" + name + "'");
                for (const auto& [seen, expr] : rule.updates)
                    if (seen == idx) fail("variable '" + name + "' assigned twice in one rule");
                expect(':');
                expect('=');
                rule.updates.emplace_back(idx, parse_expr(sys));
                skip_ws();
                if (peek() != ',') break;
                get();
            }
        }
        expect('}');
        return rule;
    }

    // expr := or-chain over comparisons over +,-,*,% over unary over primary
    ModelExprPtr parse_expr(TransitionSystem& sys) { return parse_or(sys); }

    ModelExprPtr parse_or(TransitionSystem& sys) {
        ModelExprPtr e = parse_and(sys);
        skip_ws();
        while (peek() == '|' && peek(1) == '|') {
            get();
            get();
            e = m_binary(ModelExpr::Op::Or, std::move(e), parse_and(sys));
            skip_ws();
        }
        return e;
    }

    ModelExprPtr parse_and(TransitionSystem& sys) {
        ModelExprPtr e = parse_cmp(sys);
        skip_ws();
        while (peek() == '&' && peek(1) == '&') {
            get();
            get();
            e = m_binary(ModelExpr::Op::And, std::move(e), parse_cmp(sys));
            skip_ws();
        }
        return e;
    }

    ModelExprPtr parse_cmp(TransitionSystem& sys) {
        ModelExprPtr e = parse_sum(sys);
        skip_ws();
        char c = peek();
        if (c == '=' || c == '!' || c == '<' || c == '>') {
            ModelExpr::Op op;
            if (c == '=') {
                get();
                if (peek() == '=') get();
                op = ModelExpr::Op::Eq;
            } else if (c == '!') {
                if (peek(1) != '=') return e;  // bare '!' belongs to unary, not here
                get();
                get();
                op = ModelExpr::Op::Ne;
            } else if (c == '<') {
                get();
                op = ModelExpr::Op::Lt;
                if (peek() == '=') {
                    get();
                    op = ModelExpr::Op::Le;
                }
            } else {
                get();
                op = ModelExpr::Op::Gt;
                if (peek() == '=') {
                    get();
                    op = ModelExpr::Op::Ge;
                }
            }
            return m_binary(op, std::move(e), parse_sum(sys));
        }
        return e;
    }

    ModelExprPtr parse_sum(TransitionSystem& sys) {
        ModelExprPtr e = parse_term(sys);
        skip_ws();
        while (peek() == '+' || (peek() == '-' && peek(1) != '>')) {
            char c = get();
            e = m_binary(c == '+' ? ModelExpr::Op::Add : ModelExpr::Op::Sub, std::move(e),
                         parse_term(sys));
            skip_ws();
        }
        return e;
    }

    ModelExprPtr parse_term(TransitionSystem& sys) {
        ModelExprPtr e = parse_unary(sys);
        skip_ws();
        while (peek() == '*' || peek() == '%') {
            char c = get();
            e = m_binary(c == '*' ? ModelExpr::Op::Mul : ModelExpr::Op::Mod, std::move(e),
                         parse_unary(sys));
            skip_ws();
        }
        return e;
    }

    ModelExprPtr parse_unary(TransitionSystem& sys) {
        skip_ws();
        if (peek() == '!' && peek(1) != '=') {
            get();
            return m_unary(ModelExpr::Op::Not, parse_unary(sys));
        }
        if (peek() == '-') {
            get();
            return m_unary(ModelExpr::Op::Neg, parse_unary(sys));
        }
        return parse_primary(sys);
    }

    ModelExprPtr parse_primary(TransitionSystem& sys) {
        skip_ws();
        if (peek() == '(') {
            get();
            ModelExprPtr e = parse_expr(sys);
            expect(')');
            return e;
        }
        if (std::isdigit(static_cast<unsigned char>(peek()))) return m_const(integer());
        std::string name = ident("variable or number");
        int idx = sys.var_index(name);
        if (idx < 0) fail("unknown variable '" + name + "'");
        return m_var(idx);
    }

    void check_write_sets(const TransitionSystem& sys) {
        std::map<int, std::string> writer;
        for (const auto& proc : sys.procs) {
            std::set<int> mine;
            for (const auto& rule : proc.rules)
                for (const auto& [idx, expr] : rule.updates) mine.insert(idx);
            for (int idx : mine) {
                auto it = writer.find(idx);
                if (it != writer.end() && it->second != proc.name)
                    fail("variable '" + sys.vars[static_cast<std::size_t>(idx)].name +
                         "' written by both '" + it->second + "' and '" + proc.name + "'");
                writer[idx] = proc.name;
            }
        }
    }

    // --- lexing helpers ---
    bool eof() const { return pos_ >= text_.size(); }
    char peek(std::size_t ahead = 0) const {
        return pos_ + ahead < text_.size() ? text_[pos_ + ahead] : '\0';
    }
    char get() {
        char c = text_[pos_++];
        if (c == '\n') ++line_;
        return c;
    }
    void skip_ws() {
        while (!eof()) {
            char c = peek();
            if (c == '#') {
                while (!eof() && peek() != '\n') get();
            } else if (std::isspace(static_cast<unsigned char>(c))) {
                get();
            } else {
                break;
            }
        }
    }
    void expect(char c) {
        skip_ws();
        if (eof() || peek() != c) fail(std::string("expected '") + c + "'");
        get();
    }
    bool try_word(const std::string& w) {
        skip_ws();
        std::size_t end = pos_ + w.size();
        if (text_.compare(pos_, w.size(), w) != 0) return false;
        if (end < text_.size()) {
            char c = text_[end];
            if (std::isalnum(static_cast<unsigned char>(c)) || c == '_') return false;
        }
        pos_ = end;
        return true;
    }
    void expect_word(const std::string& w) {
        if (!try_word(w)) fail("expected '" + w + "'");
    }
    std::string ident(const std::string& what) {
        skip_ws();
        std::string out;
        while (!eof()) {
            char c = peek();
            if (std::isalnum(static_cast<unsigned char>(c)) || c == '_')
                out += get();
            else
                break;
        }
        if (out.empty() || std::isdigit(static_cast<unsigned char>(out[0])))
            fail("expected " + what);
        return out;
    }
    std::int64_t integer() {
        skip_ws();
        bool neg = false;
        if (peek() == '-') {
            neg = true;
            get();
        }
        if (!std::isdigit(static_cast<unsigned char>(peek()))) fail("expected integer");
        std::int64_t v = 0;
        while (std::isdigit(static_cast<unsigned char>(peek()))) v = v * 10 + (get() - '0');
        return neg ? -v : v;
    }
    [[noreturn]] void fail(const std::string& msg) const {
        throw ModelError("model line " + std::to_string(line_) + ": " + msg);
    }

    const std::string& text_;
    std::size_t pos_ = 0;
    int line_ = 1;
};

}  // namespace detail

inline TransitionSystem parse_model(const std::string& text) {
    return detail::ModelParser(text).parse();
}

}  // namespace sstl
