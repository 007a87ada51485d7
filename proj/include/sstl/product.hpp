#pragma once

#include <algorithm>
#include <compare>
#include <cstdint>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "sstl/buchi.hpp"
#include "sstl/error.hpp"
#include "sstl/lasso.hpp"
#include "sstl/nnf.hpp"
#include "sstl/quantize.hpp"
#include "sstl/system.hpp"
#include "sstl/translate.hpp"

namespace sstl {

struct SearchLimits {
    long long max_states = 5'000'000;
    long long max_depth = 200'000;
};

// One node of the synchronous product: a system state, the automaton state
// consumed at the same tick, and one saturating elapsed-tick counter per
// obligation (slot order = ascending obligation id).
struct ProductState {
    SysState sys;
    int aut = 0;
    std::vector<Tick> counters;

    auto operator<=>(const ProductState&) const = default;
};

// Ultimately periodic run of the product witnessing an accepting cycle. The
// cycle is nonempty and contains at least one accepting automaton state.
struct Counterexample {
    std::vector<ProductState> prefix;
    std::vector<ProductState> cycle;
    std::vector<std::string> signals;
    std::int64_t factor = kDefaultFactor;

    // Projection to the system signals, as an infinite word the lasso
    // evaluator understands.
    LassoWord to_word() const {
        LassoWord w;
        w.signals = signals;
        w.factor = factor;
        w.loop_start = prefix.size();
        auto push = [&](const ProductState& ps) {
            std::vector<std::int64_t> row;
            row.reserve(ps.sys.size());
            for (std::int64_t v : ps.sys) row.push_back(v * factor);
            w.rows.push_back(std::move(row));
        };
        for (const ProductState& ps : prefix) push(ps);
        for (const ProductState& ps : cycle) push(ps);
        return w;
    }

    std::string to_text() const {
        std::ostringstream os;
        Tick tick = 0;
        auto line = [&](const ProductState& ps) {
            os << "  tick " << tick++ << ":";
            for (std::size_t i = 0; i < signals.size(); ++i)
                os << " " << signals[i] << "=" << ps.sys[i];
            os << "  [aut " << ps.aut;
            for (Tick c : ps.counters) os << " c" << c;
            os << "]\n";
        };
        os << "prefix:\n";
        if (prefix.empty()) os << "  (empty)\n";
        for (const ProductState& ps : prefix) line(ps);
        os << "cycle (repeats forever):\n";
        for (const ProductState& ps : cycle) line(ps);
        return os.str();
    }
};

// ---------------------------------------------------------------------------
// Lazy product graph. States are interned on first touch; successor
// generation walks automaton edges, counter updates, then system moves, so
// exploration order is reproducible. Counter update per obligation id:
//
//   not mentioned by the target state  -> 0   (dead counter, normalized)
//   continued across the step boundary -> c+1 (saturated at its cap)
//   freshly spawnable at the target    -> 0
//
// An id both continued and fresh is genuinely ambiguous (the tableau merged
// distinct episodes into one formula), so both updates are explored. That
// over-approximates the run set: emptiness stays sound, and reported cycles
// are replay-checked before verify believes them.
// ---------------------------------------------------------------------------
class ProductGraph {
public:
    ProductGraph(const TransitionSystem& sys, const BuchiAutomaton& aut,
                 long long max_states = SearchLimits{}.max_states)
        : sys_(sys), aut_(aut), max_states_(max_states) {
        for (const auto& [id, cap] : aut_.obligation_caps) {
            slot_of_[id] = static_cast<int>(slot_ids_.size());
            slot_ids_.push_back(id);
            slot_caps_.push_back(cap);
        }
        check_labels_resolve();
    }

    const TransitionSystem& system() const { return sys_; }
    const BuchiAutomaton& automaton() const { return aut_; }
    long long num_states() const { return static_cast<long long>(states_.size()); }
    const ProductState& state(int i) const { return states_[static_cast<std::size_t>(i)]; }

    bool accepting(int i) const {
        return aut_.states[static_cast<std::size_t>(state(i).aut)].accepting;
    }

    std::vector<int> initial_ids() {
        std::vector<int> out;
        SysState s0 = sys_.initial_state();
        std::vector<Tick> zero(slot_ids_.size(), 0);
        for (int qi : aut_.initial) {
            const BuchiState& q = aut_.states[static_cast<std::size_t>(qi)];
            if (!label_holds(q, s0, zero)) continue;
            out.push_back(intern(ProductState{s0, qi, zero}));
        }
        return out;
    }

    std::vector<int> successors_of(int i) {
        ProductState ps = state(i);  // copy: states_ may grow during interning
        const BuchiState& q = aut_.states[static_cast<std::size_t>(ps.aut)];
        std::vector<SysState> moves = successors(sys_, ps.sys);
        std::vector<int> out;
        for (int qi2 : q.succ) {
            const BuchiState& q2 = aut_.states[static_cast<std::size_t>(qi2)];
            for (const auto& c2 : counter_updates(q, ps.counters, q2)) {
                for (const SysState& s2 : moves) {
                    if (!label_holds(q2, s2, c2)) continue;
                    out.push_back(intern(ProductState{s2, qi2, c2}));
                }
            }
        }
        return out;
    }

private:
    int intern(ProductState&& ps) {
        auto it = index_.find(ps);
        if (it != index_.end()) return it->second;
        if (num_states() >= max_states_)
            throw ResourceLimitError("product state budget exhausted", num_states());
        int id = static_cast<int>(states_.size());
        index_.emplace(ps, id);
        states_.push_back(std::move(ps));
        return id;
    }

    bool label_holds(const BuchiState& q, const SysState& s,
                     const std::vector<Tick>& counters) const {
        for (const FormulaPtr& lit : q.label) {
            bool neg = lit->kind == Kind::Not;
            const FormulaPtr& base = neg ? lit->kids[0] : lit;
            bool v;
            if (base->kind == Kind::Atom) {
                const LinearPredicate& p = *base->pred;
                v = p.eval([&](const std::string& name) {
                    return s[static_cast<std::size_t>(sys_.var_index(name))] * p.factor;
                });
            } else {
                int slot = slot_of_.at(base->guard->obligation_id);
                v = base->guard->eval(counters[static_cast<std::size_t>(slot)]);
            }
            if (v == neg) return false;
        }
        return true;
    }

    std::vector<std::vector<Tick>> counter_updates(const BuchiState& q,
                                                   const std::vector<Tick>& c,
                                                   const BuchiState& q2) const {
        std::vector<std::vector<Tick>> options(slot_ids_.size());
        bool any_branch = false;
        for (std::size_t k = 0; k < slot_ids_.size(); ++k) {
            int id = slot_ids_[k];
            if (!std::binary_search(q2.mentioned.begin(), q2.mentioned.end(), id)) {
                options[k] = {0};
                continue;
            }
            std::vector<Tick>& opts = options[k];
            if (std::binary_search(q.continued.begin(), q.continued.end(), id))
                opts.push_back(std::min<Tick>(c[k] + 1, slot_caps_[k]));
            if (std::binary_search(q2.fresh.begin(), q2.fresh.end(), id) &&
                (opts.empty() || opts[0] != 0))
                opts.push_back(0);
            if (opts.empty()) opts.push_back(0);
            any_branch = any_branch || opts.size() > 1;
        }
        if (!any_branch) {
            std::vector<Tick> single(slot_ids_.size());
            for (std::size_t k = 0; k < slot_ids_.size(); ++k) single[k] = options[k][0];
            return {std::move(single)};
        }
        std::vector<std::vector<Tick>> out;
        std::vector<std::size_t> pick(slot_ids_.size(), 0);
        for (;;) {
            std::vector<Tick> combo(slot_ids_.size());
            for (std::size_t k = 0; k < slot_ids_.size(); ++k) combo[k] = options[k][pick[k]];
            out.push_back(std::move(combo));
            std::size_t k = 0;
            while (k < pick.size() && ++pick[k] == options[k].size()) pick[k++] = 0;
            if (k == pick.size()) break;
        }
        return out;
    }

    void check_labels_resolve() const {
        for (const BuchiState& q : aut_.states) {
            for (const FormulaPtr& lit : q.label) {
                const FormulaPtr& base = lit->kind == Kind::Not ? lit->kids[0] : lit;
                if (base->kind != Kind::Atom) continue;
                for (const auto& term : base->pred->terms)
                    if (sys_.var_index(term.signal) < 0)
                        throw ModelError("formula signal '" + term.signal +
                                         "' is not a model variable");
            }
        }
    }

    const TransitionSystem& sys_;
    const BuchiAutomaton& aut_;
    long long max_states_;
    std::vector<int> slot_ids_;
    std::vector<Tick> slot_caps_;
    std::map<int, int> slot_of_;
    std::vector<ProductState> states_;
    std::map<ProductState, int> index_;
};

inline ProductGraph product(const TransitionSystem& sys, const BuchiAutomaton& aut,
                            long long max_states = SearchLimits{}.max_states) {
    return ProductGraph(sys, aut, max_states);
}

// ---------------------------------------------------------------------------
// Accepting-cycle search: iterative nested depth-first search. The outer
// (blue) pass keeps the current path cyan; an edge back into the cyan set
// closing through an accepting endpoint is a cycle right away. At each
// accepting state's postorder the inner (red) pass looks for a path back
// into the cyan set; red marks persist across inner passes.
// ---------------------------------------------------------------------------
namespace detail {

struct DfsFrame {
    int id;
    std::vector<int> succ;
    std::size_t next = 0;
    bool expanded = false;
};

}  // namespace detail

inline std::optional<Counterexample> find_accepting_cycle(
    ProductGraph& pg, long long max_depth = SearchLimits{}.max_depth) {
    enum class Color : unsigned char { White, Cyan, Blue };
    std::vector<Color> color;
    std::vector<char> red;
    std::vector<long long> path_pos;  // 1-based position on the blue path, 0 = off path
    auto ensure = [&](int id) {
        std::size_t need = static_cast<std::size_t>(id) + 1;
        if (color.size() < need) {
            color.resize(need, Color::White);
            red.resize(need, 0);
            path_pos.resize(need, 0);
        }
    };

    std::vector<int> path;
    auto build = [&](long long cycle_from, const std::vector<int>& red_tail) {
        Counterexample ce;
        ce.signals = pg.system().signal_names();
        for (long long i = 0; i < cycle_from; ++i)
            ce.prefix.push_back(pg.state(path[static_cast<std::size_t>(i)]));
        for (std::size_t i = static_cast<std::size_t>(cycle_from); i < path.size(); ++i)
            ce.cycle.push_back(pg.state(path[i]));
        for (std::size_t i = 1; i + 1 < red_tail.size(); ++i)
            ce.cycle.push_back(pg.state(red_tail[i]));
        return ce;
    };

    for (int root : pg.initial_ids()) {
        ensure(root);
        if (color[static_cast<std::size_t>(root)] != Color::White) continue;

        std::vector<detail::DfsFrame> blue;
        blue.push_back({root, {}, 0, false});
        color[static_cast<std::size_t>(root)] = Color::Cyan;
        path.push_back(root);
        path_pos[static_cast<std::size_t>(root)] = static_cast<long long>(path.size());

        while (!blue.empty()) {
            detail::DfsFrame& f = blue.back();
            if (!f.expanded) {
                f.succ = pg.successors_of(f.id);
                f.expanded = true;
            }
            if (f.next < f.succ.size()) {
                int v = f.succ[f.next++];
                ensure(v);
                Color cv = color[static_cast<std::size_t>(v)];
                if (cv == Color::Cyan && (pg.accepting(f.id) || pg.accepting(v)))
                    return build(path_pos[static_cast<std::size_t>(v)] - 1, {});
                if (cv == Color::White) {
                    if (static_cast<long long>(path.size()) >= max_depth)
                        throw ResourceLimitError("search depth budget exhausted",
                                                 pg.num_states());
                    color[static_cast<std::size_t>(v)] = Color::Cyan;
                    path.push_back(v);
                    path_pos[static_cast<std::size_t>(v)] = static_cast<long long>(path.size());
                    blue.push_back({v, {}, 0, false});
                }
                continue;
            }

            if (pg.accepting(f.id) && !red[static_cast<std::size_t>(f.id)]) {
                std::vector<detail::DfsFrame> rstack;
                std::vector<int> rpath;
                red[static_cast<std::size_t>(f.id)] = 1;
                rstack.push_back({f.id, {}, 0, false});
                rpath.push_back(f.id);
                while (!rstack.empty()) {
                    detail::DfsFrame& rf = rstack.back();
                    if (!rf.expanded) {
                        rf.succ = pg.successors_of(rf.id);
                        rf.expanded = true;
                    }
                    if (rf.next < rf.succ.size()) {
                        int v = rf.succ[rf.next++];
                        ensure(v);
                        if (color[static_cast<std::size_t>(v)] == Color::Cyan) {
                            rpath.push_back(v);
                            return build(path_pos[static_cast<std::size_t>(v)] - 1, rpath);
                        }
                        if (!red[static_cast<std::size_t>(v)]) {
                            if (static_cast<long long>(path.size() + rpath.size()) >= max_depth)
                                throw ResourceLimitError("search depth budget exhausted",
                                                         pg.num_states());
                            red[static_cast<std::size_t>(v)] = 1;
                            rpath.push_back(v);
                            rstack.push_back({v, {}, 0, false});
                        }
                        continue;
                    }
                    rstack.pop_back();
                    rpath.pop_back();
                }
            }

            color[static_cast<std::size_t>(f.id)] = Color::Blue;
            path_pos[static_cast<std::size_t>(f.id)] = 0;
            path.pop_back();
            blue.pop_back();
        }
    }
    return std::nullopt;
}

// ---------------------------------------------------------------------------
// verify: model-check a tick-dialect formula against a system. The formula
// is translated to the guard encoding, negated, turned into an automaton,
// and the product is searched for an accepting lasso. A found lasso is
// replayed through the exact lasso evaluator before it is believed; replay
// can only fail for formulas whose obligations admit overlapping episodes,
// where the one-counter-per-obligation product is an over-approximation.
// ---------------------------------------------------------------------------
enum class VerifyStatus { Satisfied, Violated, ResourceLimit };

inline const char* verify_status_text(VerifyStatus s) {
    switch (s) {
        case VerifyStatus::Satisfied: return "Satisfied";
        case VerifyStatus::Violated: return "Violated";
        case VerifyStatus::ResourceLimit: return "ResourceLimit";
    }
    return "?";
}

struct VerifyResult {
    VerifyStatus status;
    std::optional<Counterexample> counterexample;
    long long states_explored = 0;
    std::string message;
};

inline VerifyResult verify(const TransitionSystem& sys, const FormulaPtr& phi,
                           Encoding encoding = Encoding::Impl, SearchLimits limits = {}) {
    ObligationRegistry reg;
    FormulaPtr tau = encoding == Encoding::Impl ? translate_impl(phi, reg) : translate(phi, reg);
    FormulaPtr psi = negate(tau);
    BuchiAutomaton aut = ltl_to_buchi(psi);
    ProductGraph pg(sys, aut, limits.max_states);
    try {
        std::optional<Counterexample> ce = find_accepting_cycle(pg, limits.max_depth);
        if (!ce) return {VerifyStatus::Satisfied, std::nullopt, pg.num_states(), ""};
        if (!eval_lasso(psi, ce->to_word()))
            throw EvalError(
                "candidate counterexample failed replay: the formula's window "
                "obligations overlap, which the counter encoding cannot track exactly");
        return {VerifyStatus::Violated, std::move(ce), pg.num_states(), "accepting lasso found"};
    } catch (const ResourceLimitError& e) {
        return {VerifyStatus::ResourceLimit, std::nullopt, e.states_explored, e.what()};
    }
}

}  // namespace sstl
