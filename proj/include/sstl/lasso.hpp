#pragma once

#include <algorithm>
#include <cstdint>
#include <string>
#include <vector>

#include "sstl/eval_ltlp.hpp"
#include "sstl/formula.hpp"
#include "sstl/quantize.hpp"

namespace sstl {

// Ultimately periodic word: rows [0, loop_start) are the stem, rows
// [loop_start, size) repeat forever. Values are scaled integers like a
// DiscreteTrace's.
struct LassoWord {
    std::vector<std::string> signals;
    std::vector<std::vector<std::int64_t>> rows;
    std::size_t loop_start = 0;
    std::int64_t factor = kDefaultFactor;

    Tick period() const { return static_cast<Tick>(rows.size() - loop_start); }

    Tick fold(Tick j) const {
        Tick n = static_cast<Tick>(rows.size());
        if (j < n) return j;
        Tick s = static_cast<Tick>(loop_start);
        return s + (j - s) % (n - s);
    }

    std::int64_t at(Tick j, const std::string& signal) const {
        for (std::size_t i = 0; i < signals.size(); ++i)
            if (signals[i] == signal) return rows[static_cast<std::size_t>(fold(j))][i];
        throw EvalError("unknown signal '" + signal + "'");
    }
};

namespace detail {

// Elapsed distance past which a guard's value no longer changes.
inline Tick guard_cap(const GuardAtom& g) {
    switch (g.kind) {
        case GuardAtom::Kind::WithinBoth: return g.b + 1;
        case GuardAtom::Kind::LowerOnly: return g.a;
        case GuardAtom::Kind::UpperOnly: return g.b + 1;
    }
    return 0;
}

inline Tick max_guard_cap(const FormulaPtr& f) {
    Tick m = 0;
    if (f->kind == Kind::Guard) m = guard_cap(*f->guard);
    for (const auto& k : f->kids) m = std::max(m, max_guard_cap(k));
    return m;
}

// Exact two-valued evaluation on an infinite lasso word. Past the loop
// start and past every bound guard's stabilization point, subformula values
// are periodic in the loop length, so each temporal operator only needs to
// scan one further full period before its answer is forced.
class LassoEvaluator {
public:
    LassoEvaluator(FormulaPtr psi, const LassoWord& w) : psi_(std::move(psi)), w_(&w) {
        validate_dialect(psi_, Dialect::LTLP);
        if (w_->rows.empty() || w_->loop_start >= w_->rows.size())
            throw EvalError("lasso word needs a nonempty loop");
        for (const auto& r : w_->rows)
            if (r.size() != w_->signals.size())
                throw EvalError("lasso row width does not match signal count");
        maxcap_ = max_guard_cap(psi_);
    }

    bool eval(Tick j, J0Env env = {}) {
        if (j < 0) throw EvalError("negative position");
        return eval_rec(psi_, j, env);
    }

private:
    Tick scan_limit(Tick j, const J0Env& env) const {
        Tick s = std::max(j, static_cast<Tick>(w_->loop_start));
        for (const auto& [id, j0] : env) s = std::max(s, j0 + maxcap_);
        return s + static_cast<Tick>(w_->rows.size() - w_->loop_start);
    }

    bool eval_rec(const FormulaPtr& f, Tick j, J0Env& env) {
        switch (f->kind) {
            case Kind::True: return true;
            case Kind::False: return false;
            case Kind::Atom: {
                if (f->pred->factor != w_->factor)
                    throw EvalError("predicate and word use different scale factors");
                return f->pred->eval([&](const std::string& s) { return w_->at(j, s); });
            }
            case Kind::Guard: {
                auto it = env.find(f->guard->obligation_id);
                if (it == env.end())
                    throw EvalError("guard references unbound obligation id " +
                                    std::to_string(f->guard->obligation_id));
                return f->guard->eval(j - it->second);
            }
            case Kind::Not: return !eval_rec(f->kids[0], j, env);
            case Kind::And: return eval_rec(f->kids[0], j, env) && eval_rec(f->kids[1], j, env);
            case Kind::Or: return eval_rec(f->kids[0], j, env) || eval_rec(f->kids[1], j, env);
            case Kind::Implies:
                return !eval_rec(f->kids[0], j, env) || eval_rec(f->kids[1], j, env);
            case Kind::Next: return eval_rec(f->kids[0], j + 1, env);
            case Kind::Until: {
                ScopedBind bind(env, f->obligation_id, j);
                Tick limit = scan_limit(j, env);
                for (Tick k = j; k < limit; ++k) {
                    if (eval_rec(f->kids[1], k, env)) return true;
                    if (!eval_rec(f->kids[0], k, env)) return false;
                }
                return false;
            }
            case Kind::Release: {
                ScopedBind bind(env, f->obligation_id, j);
                Tick limit = scan_limit(j, env);
                for (Tick k = j; k < limit; ++k) {
                    if (!eval_rec(f->kids[1], k, env)) return false;
                    if (eval_rec(f->kids[0], k, env)) return true;
                }
                return true;
            }
            case Kind::Eventually: {
                ScopedBind bind(env, f->obligation_id, j);
                Tick limit = scan_limit(j, env);
                for (Tick k = j; k < limit; ++k)
                    if (eval_rec(f->kids[0], k, env)) return true;
                return false;
            }
            case Kind::Always: {
                ScopedBind bind(env, f->obligation_id, j);
                Tick limit = scan_limit(j, env);
                for (Tick k = j; k < limit; ++k)
                    if (!eval_rec(f->kids[0], k, env)) return false;
                return true;
            }
        }
        throw EvalError("unreachable formula kind");
    }

    FormulaPtr psi_;
    const LassoWord* w_;
    Tick maxcap_ = 0;
};

}  // namespace detail

inline bool eval_lasso(const FormulaPtr& psi, const LassoWord& w, Tick j = 0,
                       const J0Env& env = {}) {
    detail::LassoEvaluator e(psi, w);
    return e.eval(j, env);
}

}  // namespace sstl
