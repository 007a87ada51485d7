#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "sstl/formula.hpp"
#include "sstl/monitor.hpp"
#include "sstl/trace.hpp"

namespace sstl {

// Binding environment for guard atoms: obligation id → entry position j₀.
using J0Env = std::map<int, Tick>;

namespace detail {

// Window bounds recovered from the guard atoms an obligation node carries.
// `b` empty means no upper guard, so witnesses past the end of the trace can
// never be ruled out.
struct EffWindow {
    Tick a = 0;
    std::optional<Tick> b;
};

// Scoped j₀ binding for an obligation node's subtree.
struct ScopedBind {
    std::map<int, Tick>& env;
    std::optional<int> id;
    std::optional<Tick> old;

    ScopedBind(std::map<int, Tick>& e, std::optional<int> i, Tick j) : env(e), id(i) {
        if (!id) return;
        auto it = env.find(*id);
        if (it != env.end()) old = it->second;
        env[*id] = j;
    }
    ~ScopedBind() {
        if (!id) return;
        if (old)
            env[*id] = *old;
        else
            env.erase(*id);
    }
};

inline void collect_guard_bounds(const FormulaPtr& f, int id, EffWindow& w) {
    if (f->kind == Kind::Guard && f->guard->obligation_id == id) {
        switch (f->guard->kind) {
            case GuardAtom::Kind::WithinBoth:
                w.a = std::max(w.a, f->guard->a);
                w.b = w.b ? std::min(*w.b, f->guard->b) : f->guard->b;
                break;
            case GuardAtom::Kind::LowerOnly:
                w.a = std::max(w.a, f->guard->a);
                break;
            case GuardAtom::Kind::UpperOnly:
                w.b = w.b ? std::min(*w.b, f->guard->b) : f->guard->b;
                break;
        }
    }
    for (const auto& k : f->kids) collect_guard_bounds(k, id, w);
}

}  // namespace detail

// Three-valued evaluation of LTL_P over a finite trace. Guard atoms are
// crisp; they read the entry position of their obligation from the
// environment, which is bound when evaluation enters the obligation's
// operator node. Temporal operators follow the same finite-trace
// conventions as the SSTL monitor, with one refinement: when an obligation
// node carries an upper guard, the beyond-end residual is dropped once no
// position past the trace could satisfy it, so translated formulas reach
// the same conclusive verdicts the direct monitor does.
//
// The evaluator also records every (obligation node, entry position) pair
// it visits; live_obligations(j) counts how many recorded windows contain
// position j, which the static Σ(b−a+1) bound caps.
class LtlpEvaluator {
public:
    LtlpEvaluator(FormulaPtr psi, const DiscreteTrace& w) : psi_(std::move(psi)), w_(&w) {
        validate_dialect(psi_, Dialect::LTLP);
        index_free(psi_);
        index_windows(psi_);
    }

    Verdict eval(Tick j, J0Env env = {}) {
        if (j < 0 || j >= length())
            throw EvalError("position " + std::to_string(j) + " outside trace of length " +
                            std::to_string(length()));
        return eval_rec(psi_, j, env);
    }

    // Count of recorded obligation entries whose window [j0+a, j0+b] contains
    // position j. Only upper-bounded obligations have a window to be in.
    int live_obligations(Tick j) const {
        int n = 0;
        for (const auto& [node, j0] : episodes_) {
            const detail::EffWindow& ew = windows_.at(node);
            if (!ew.b) continue;
            if (j0 + ew.a <= j && j <= j0 + *ew.b) ++n;
        }
        return n;
    }

    Tick length() const { return static_cast<Tick>(w_->length()); }

private:
    using MemoKey = std::tuple<const void*, Tick, std::vector<Tick>>;

    std::set<int> index_free(const FormulaPtr& f) {
        std::set<int> s;
        for (const auto& k : f->kids) {
            std::set<int> ks = index_free(k);
            s.insert(ks.begin(), ks.end());
        }
        if (f->kind == Kind::Guard) s.insert(f->guard->obligation_id);
        if (f->obligation_id) s.erase(*f->obligation_id);
        free_[f.get()] = std::vector<int>(s.begin(), s.end());
        return s;
    }

    void index_windows(const FormulaPtr& f) {
        if (f->obligation_id) {
            detail::EffWindow ew;
            detail::collect_guard_bounds(f, *f->obligation_id, ew);
            windows_[f.get()] = ew;
        }
        for (const auto& k : f->kids) index_windows(k);
    }

    MemoKey make_key(const Formula* f, Tick j, const J0Env& env) const {
        std::vector<Tick> bound;
        for (int id : free_.at(f)) {
            auto it = env.find(id);
            bound.push_back(it == env.end() ? -1 : it->second);
        }
        return {f, j, std::move(bound)};
    }

    Verdict eval_rec(const FormulaPtr& f, Tick j, J0Env& env) {
        MemoKey key = make_key(f.get(), j, env);
        auto hit = memo_.find(key);
        if (hit != memo_.end()) return hit->second;
        Verdict v = compute(f, j, env);
        memo_.emplace(std::move(key), v);
        return v;
    }

    Verdict compute(const FormulaPtr& f, Tick j, J0Env& env) {
        switch (f->kind) {
            case Kind::True: return Verdict::True;
            case Kind::False: return Verdict::False;
            case Kind::Atom: return eval_atom(*f->pred, j);
            case Kind::Guard: {
                auto it = env.find(f->guard->obligation_id);
                if (it == env.end())
                    throw EvalError("guard references unbound obligation id " +
                                    std::to_string(f->guard->obligation_id));
                return f->guard->eval(j - it->second) ? Verdict::True : Verdict::False;
            }
            case Kind::Not: return v_not(eval_rec(f->kids[0], j, env));
            case Kind::And: return v_and(eval_rec(f->kids[0], j, env), eval_rec(f->kids[1], j, env));
            case Kind::Or: return v_or(eval_rec(f->kids[0], j, env), eval_rec(f->kids[1], j, env));
            case Kind::Implies:
                return v_implies(eval_rec(f->kids[0], j, env), eval_rec(f->kids[1], j, env));
            case Kind::Next:
                return j + 1 < length() ? eval_rec(f->kids[0], j + 1, env) : Verdict::Inconclusive;
            case Kind::Until: return eval_until(f, j, env);
            case Kind::Eventually: return eval_eventually(f, j, env);
            case Kind::Always: return eval_always(f, j, env);
            case Kind::Release: return eval_release(f, j, env);
        }
        throw EvalError("unreachable formula kind");
    }

    Verdict eval_atom(const LinearPredicate& p, Tick j) const {
        if (p.factor != w_->factor)
            throw EvalError("predicate and trace use different scale factors");
        bool v = p.eval([&](const std::string& s) {
            return w_->at(static_cast<std::size_t>(j), w_->signal_index(s));
        });
        return v ? Verdict::True : Verdict::False;
    }

    // Absolute position past which an upper guard rules out any witness, or
    // nullopt when witnesses beyond the trace stay possible.
    std::optional<Tick> witness_cap(const FormulaPtr& f, Tick j) {
        if (!f->obligation_id) return {};
        const detail::EffWindow& ew = windows_.at(f.get());
        if (!ew.b) return {};
        return j + *ew.b;
    }

    void record_entry(const FormulaPtr& f, Tick j) {
        if (f->obligation_id) episodes_.insert({f.get(), j});
    }

    Verdict eval_until(const FormulaPtr& f, Tick j, J0Env& env) {
        record_entry(f, j);
        std::optional<Tick> cap = witness_cap(f, j);
        detail::ScopedBind bind(env, f->obligation_id, j);
        Verdict acc = Verdict::False;
        Verdict prefix = Verdict::True;
        for (Tick k = j; k < length(); ++k) {
            acc = v_or(acc, v_and(eval_rec(f->kids[1], k, env), prefix));
            if (acc == Verdict::True) return acc;
            prefix = v_and(prefix, eval_rec(f->kids[0], k, env));
            if (prefix == Verdict::False) return acc;
        }
        if (!cap || *cap >= length()) acc = v_or(acc, v_and(Verdict::Inconclusive, prefix));
        return acc;
    }

    Verdict eval_eventually(const FormulaPtr& f, Tick j, J0Env& env) {
        record_entry(f, j);
        std::optional<Tick> cap = witness_cap(f, j);
        detail::ScopedBind bind(env, f->obligation_id, j);
        Verdict acc = Verdict::False;
        for (Tick k = j; k < length(); ++k) {
            acc = v_or(acc, eval_rec(f->kids[0], k, env));
            if (acc == Verdict::True) return acc;
        }
        if (!cap || *cap >= length()) acc = v_or(acc, Verdict::Inconclusive);
        return acc;
    }

    Verdict eval_always(const FormulaPtr& f, Tick j, J0Env& env) {
        record_entry(f, j);
        std::optional<Tick> cap = witness_cap(f, j);
        detail::ScopedBind bind(env, f->obligation_id, j);
        Verdict acc = Verdict::True;
        for (Tick k = j; k < length(); ++k) {
            acc = v_and(acc, eval_rec(f->kids[0], k, env));
            if (acc == Verdict::False) return acc;
        }
        if (!cap || *cap >= length()) acc = v_and(acc, Verdict::Inconclusive);
        return acc;
    }

    // α R β: β must hold at every position until (and including) one where α
    // holds. The beyond-end tail is never conclusively released, so it
    // contributes Inconclusive; no guard refinement here, which can leave a
    // negated translated formula Inconclusive where False would be provable.
    Verdict eval_release(const FormulaPtr& f, Tick j, J0Env& env) {
        record_entry(f, j);
        detail::ScopedBind bind(env, f->obligation_id, j);
        Verdict acc = Verdict::True;
        Verdict released = Verdict::False;
        for (Tick k = j; k < length(); ++k) {
            acc = v_and(acc, v_or(eval_rec(f->kids[1], k, env), released));
            if (acc == Verdict::False) return acc;
            released = v_or(released, eval_rec(f->kids[0], k, env));
            if (released == Verdict::True) return acc;
        }
        return v_and(acc, Verdict::Inconclusive);
    }

    FormulaPtr psi_;
    const DiscreteTrace* w_;
    std::map<const Formula*, std::vector<int>> free_;
    std::map<const Formula*, detail::EffWindow> windows_;
    std::set<std::pair<const Formula*, Tick>> episodes_;
    std::map<MemoKey, Verdict> memo_;
};

inline Verdict eval_ltlp(const FormulaPtr& psi, const DiscreteTrace& w, Tick j,
                         const J0Env& env = {}) {
    LtlpEvaluator e(psi, w);
    return e.eval(j, env);
}

// Evaluates ψ at position 0 and reports how many obligation windows the run
// left open at position j.
inline int live_obligation_count(const FormulaPtr& psi, const DiscreteTrace& w, Tick j) {
    LtlpEvaluator e(psi, w);
    e.eval(0);
    return e.live_obligations(j);
}

}  // namespace sstl
