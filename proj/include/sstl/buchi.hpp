#pragma once

#include <algorithm>
#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "sstl/formula.hpp"
#include "sstl/nnf.hpp"
#include "sstl/printer.hpp"

namespace sstl {

// State-labeled Büchi automaton. A run over a word is a sequence of states,
// starting at an initial state and following succ edges, where the word's
// position j satisfies every literal in label(q_j). Guard literals are
// evaluated against elapsed-tick counters maintained by the product, using
// the per-state obligation bookkeeping below.
struct BuchiState {
    std::vector<FormulaPtr> label;  // literals: atoms and guards, possibly negated
    std::vector<int> succ;
    bool initial = false;
    bool accepting = false;

    // Obligation ids queued across the step boundary: an episode entering
    // this state from a predecessor that lists the id here keeps its j₀.
    std::vector<int> continued;
    // Obligation ids whose operator was decomposed at this state, so a new
    // episode (elapsed 0) may start here. An id in both continued (on the
    // incoming edge) and fresh is ambiguous; the product explores both.
    std::vector<int> fresh;
    // Obligation ids still referenced by this state's pending formulas;
    // counters of other ids are dead and get normalized.
    std::vector<int> mentioned;
};

struct BuchiAutomaton {
    std::vector<BuchiState> states;
    std::vector<int> initial;
    std::map<int, Tick> obligation_caps;  // id → counter saturation value
    std::size_t acceptance_sets = 0;      // before degeneralization
};

namespace detail {

// Interning gives formulas set-friendly integer identities. The canonical
// key appends the obligation id, which the printed form carries only inside
// guard atoms.
class FormulaTable {
public:
    int intern(const FormulaPtr& f) {
        std::string key = to_string(f);
        if (f->obligation_id) key += " #" + std::to_string(*f->obligation_id);
        auto it = index_.find(key);
        if (it != index_.end()) return it->second;
        int id = static_cast<int>(items_.size());
        items_.push_back(f);
        index_.emplace(std::move(key), id);
        return id;
    }

    const FormulaPtr& at(int i) const { return items_[static_cast<std::size_t>(i)]; }
    int size() const { return static_cast<int>(items_.size()); }

    // Lookup for formulas the expansion is known to have interned already.
    int id_of(const FormulaPtr& f) const {
        std::string key = to_string(f);
        if (f->obligation_id) key += " #" + std::to_string(*f->obligation_id);
        auto it = index_.find(key);
        if (it == index_.end()) throw EvalError("formula missing from tableau table");
        return it->second;
    }

private:
    std::vector<FormulaPtr> items_;
    std::map<std::string, int> index_;
};

inline void collect_guard_caps(const FormulaPtr& f, std::map<int, Tick>& caps) {
    if (f->kind == Kind::Guard) {
        Tick cap = 0;
        switch (f->guard->kind) {
            case GuardAtom::Kind::WithinBoth: cap = f->guard->b + 1; break;
            case GuardAtom::Kind::LowerOnly: cap = f->guard->a; break;
            case GuardAtom::Kind::UpperOnly: cap = f->guard->b + 1; break;
        }
        Tick& slot = caps[f->guard->obligation_id];
        slot = std::max(slot, cap);
    }
    for (const auto& k : f->kids) collect_guard_caps(k, caps);
}

inline void collect_mentioned_ids(const FormulaPtr& f, std::set<int>& ids) {
    if (f->kind == Kind::Guard) ids.insert(f->guard->obligation_id);
    if (f->obligation_id) ids.insert(*f->obligation_id);
    for (const auto& k : f->kids) collect_mentioned_ids(k, ids);
}

// ---------------------------------------------------------------------------
// Tableau expansion. Each node carries the classic New/Old/Next sets plus a
// `fresh` set: obligation ids whose operator entered New by decomposition at
// this node (as opposed to arriving from a predecessor's Next set). Nodes
// are merged on equal (Old, Next); merged nodes union their incoming edges
// and fresh tags.
// ---------------------------------------------------------------------------
class TableauBuilder {
public:
    static constexpr int kInit = -1;

    explicit TableauBuilder(const FormulaPtr& psi) {
        TNode root;
        root.id = next_id_++;
        root.incoming.insert(kInit);
        add_to_new(root, psi);
        expand(std::move(root));
    }

    struct TNode {
        int id = 0;
        std::set<int> incoming;
        std::set<int> nw, old, nxt;
        std::set<int> fresh;
    };

    const std::vector<TNode>& nodes() const { return done_; }
    const FormulaTable& table() const { return table_; }

private:
    void add_to_new(TNode& n, const FormulaPtr& f) {
        int h = table_.intern(f);
        if (f->obligation_id) n.fresh.insert(*f->obligation_id);
        if (!n.old.count(h)) n.nw.insert(h);
    }

    bool contradicts(const TNode& n, const FormulaPtr& f) {
        int neg = f->kind == Kind::Not ? table_.intern(f->kids[0]) : table_.intern(f_not(f));
        return n.old.count(neg) != 0;
    }

    void expand(TNode node) {
        if (node.nw.empty()) {
            for (TNode& nd : done_) {
                if (nd.old == node.old && nd.nxt == node.nxt) {
                    nd.incoming.insert(node.incoming.begin(), node.incoming.end());
                    nd.fresh.insert(node.fresh.begin(), node.fresh.end());
                    return;
                }
            }
            done_.push_back(node);
            TNode succ;
            succ.id = next_id_++;
            succ.incoming.insert(node.id);
            succ.nw = node.nxt;  // Next-copy: continuations, deliberately untagged
            expand(std::move(succ));
            return;
        }

        int h = *node.nw.begin();
        node.nw.erase(node.nw.begin());
        const FormulaPtr f = table_.at(h);

        switch (f->kind) {
            case Kind::True:
                // Recorded like any processed formula: the fairness test
                // asks whether an Until's witness is in Old, and a trivial
                // witness must count as discharged.
                node.old.insert(h);
                expand(std::move(node));
                return;
            case Kind::False: return;  // inconsistent node, drop
            case Kind::Atom:
            case Kind::Guard:
            case Kind::Not:
                if (contradicts(node, f)) return;
                node.old.insert(h);
                expand(std::move(node));
                return;
            case Kind::And: {
                node.old.insert(h);
                add_to_new(node, f->kids[0]);
                add_to_new(node, f->kids[1]);
                expand(std::move(node));
                return;
            }
            case Kind::Or: {
                node.old.insert(h);
                TNode other = node;
                other.id = next_id_++;  // branches are distinct nodes for edge wiring
                add_to_new(node, f->kids[0]);
                add_to_new(other, f->kids[1]);
                expand(std::move(node));
                expand(std::move(other));
                return;
            }
            case Kind::Next: {
                node.old.insert(h);
                node.nxt.insert(table_.intern(f->kids[0]));
                expand(std::move(node));
                return;
            }
            case Kind::Until: {  // αUβ == β ∨ (α ∧ X(αUβ))
                node.old.insert(h);
                TNode witness = node;
                witness.id = next_id_++;
                add_to_new(node, f->kids[0]);
                node.nxt.insert(h);
                add_to_new(witness, f->kids[1]);
                expand(std::move(node));
                expand(std::move(witness));
                return;
            }
            case Kind::Release: {  // αRβ == (β ∧ α) ∨ (β ∧ X(αRβ))
                node.old.insert(h);
                TNode both = node;
                both.id = next_id_++;
                add_to_new(node, f->kids[1]);
                node.nxt.insert(h);
                add_to_new(both, f->kids[0]);
                add_to_new(both, f->kids[1]);
                expand(std::move(node));
                expand(std::move(both));
                return;
            }
            case Kind::Implies:
            case Kind::Eventually:
            case Kind::Always:
                throw EvalError("tableau input must be in negation normal form");
        }
        throw EvalError("unreachable formula kind");
    }

    FormulaTable table_;
    std::vector<TNode> done_;
    int next_id_ = 0;
};

}  // namespace detail

// LTL_P → Büchi via tableau expansion, generalized acceptance per Until
// subformula (a node is fair for αUβ when it does not owe the Until or has
// its witness β), then counting degeneralization.
inline BuchiAutomaton ltl_to_buchi(const FormulaPtr& psi_in) {
    validate_dialect(psi_in, Dialect::LTLP);
    FormulaPtr psi = nnf(psi_in);

    detail::TableauBuilder tb(psi);
    const auto& nodes = tb.nodes();
    const auto& table = tb.table();

    // Acceptance sets, one per Until formula reachable in any node.
    std::set<int> until_set;
    for (const auto& nd : nodes)
        for (int h : nd.old)
            if (table.at(h)->kind == Kind::Until) until_set.insert(h);
    std::vector<int> untils(until_set.begin(), until_set.end());
    std::size_t m = untils.size();

    // fair[k][set j]: node k satisfies acceptance set j.
    std::vector<std::vector<bool>> fair(nodes.size(), std::vector<bool>(m, false));
    for (std::size_t k = 0; k < nodes.size(); ++k) {
        for (std::size_t j = 0; j < m; ++j) {
            int u = untils[j];
            int beta = table.id_of(table.at(u)->kids[1]);
            fair[k][j] = !nodes[k].old.count(u) || nodes[k].old.count(beta) != 0;
        }
    }

    std::map<int, std::size_t> node_index;  // tableau id → position
    for (std::size_t k = 0; k < nodes.size(); ++k) node_index[nodes[k].id] = k;

    BuchiAutomaton aut;
    aut.acceptance_sets = m;
    detail::collect_guard_caps(psi, aut.obligation_caps);

    // Degeneralize: state (node k, counter i), i ∈ [0, m]; i == m is
    // accepting and restarts the climb. With m == 0 every state accepts.
    std::size_t copies = m + 1;
    auto state_id = [&](std::size_t k, std::size_t i) {
        return static_cast<int>(k * copies + i);
    };

    aut.states.resize(nodes.size() * copies);
    for (std::size_t k = 0; k < nodes.size(); ++k) {
        const auto& nd = nodes[k];
        BuchiState proto;
        for (int h : nd.old) {
            const FormulaPtr& f = table.at(h);
            if (f->kind == Kind::Atom || f->kind == Kind::Guard || f->kind == Kind::Not)
                proto.label.push_back(f);
        }
        proto.fresh.assign(nd.fresh.begin(), nd.fresh.end());
        std::set<int> cont;
        for (int h : nd.nxt) {
            const FormulaPtr& f = table.at(h);
            if (f->obligation_id) cont.insert(*f->obligation_id);
        }
        proto.continued.assign(cont.begin(), cont.end());
        std::set<int> ment;
        for (int h : nd.old) detail::collect_mentioned_ids(table.at(h), ment);
        for (int h : nd.nxt) detail::collect_mentioned_ids(table.at(h), ment);
        proto.mentioned.assign(ment.begin(), ment.end());

        for (std::size_t i = 0; i < copies; ++i) {
            BuchiState st = proto;
            st.accepting = (m == 0) || (i == m);
            aut.states[static_cast<std::size_t>(state_id(k, i))] = std::move(st);
        }
    }

    for (std::size_t k2 = 0; k2 < nodes.size(); ++k2) {
        for (int from : nodes[k2].incoming) {
            if (from == detail::TableauBuilder::kInit) {
                for (std::size_t i = 0; i < 1; ++i) {
                    int sid = state_id(k2, 0);
                    aut.states[static_cast<std::size_t>(sid)].initial = true;
                    aut.initial.push_back(sid);
                }
                continue;
            }
            auto it = node_index.find(from);
            if (it == node_index.end())
                throw EvalError("tableau edge from a node that was never finalized");
            std::size_t k1 = it->second;
            for (std::size_t i = 0; i < copies; ++i) {
                std::size_t base = (i == m) ? 0 : i;
                std::size_t j = base;
                while (j < m && fair[k2][j]) ++j;
                aut.states[static_cast<std::size_t>(state_id(k1, i))].succ.push_back(
                    state_id(k2, j));
            }
        }
    }

    return aut;
}

}  // namespace sstl
