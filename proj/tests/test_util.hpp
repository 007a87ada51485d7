#pragma once

#include <sstl/sstl.hpp>

#include <array>
#include <cstdint>
#include <random>
#include <set>
#include <string>
#include <utility>
#include <vector>

namespace testutil {

inline sstl::DiscreteTrace trace_from_scaled(std::vector<std::string> signals,
                                             std::vector<std::vector<std::int64_t>> rows,
                                             sstl::Rational dt = sstl::Rational(1)) {
    sstl::DiscreteTrace tr;
    tr.dt = dt;
    tr.factor = sstl::kDefaultFactor;
    tr.signals = std::move(signals);
    tr.values = std::move(rows);
    return tr;
}

// 11-tick two-signal trace shared by the monitor and translation tests:
// x1 starts positive and dips below zero at tick 9, x2 crosses zero upward
// at tick 7.
inline sstl::DiscreteTrace reference_trace() {
    return trace_from_scaled({"x1", "x2"},
                             {{1000, -1000},
                              {1000, -1000},
                              {1000, -800},
                              {500, -600},
                              {800, -500},
                              {200, -100},
                              {1000, -150},
                              {500, 600},
                              {200, 1000},
                              {-1000, 1000},
                              {-700, 800}});
}

inline sstl::FormulaPtr atom(const std::string& signal, sstl::Rel rel, std::int64_t threshold) {
    return sstl::f_atom(sstl::LinearPredicate({{signal, sstl::kDefaultFactor}},
                                              threshold * sstl::kDefaultFactor, rel,
                                              sstl::kDefaultFactor));
}

inline std::size_t atom_count(const sstl::FormulaPtr& f) {
    std::size_t n = f->kind == sstl::Kind::Atom ? 1 : 0;
    for (const auto& k : f->kids) n += atom_count(k);
    return n;
}

// ---------------------------------------------------------------------------
// Random formula and trace generation for the property suites. All draws go
// through one mt19937_64 so a single seed reproduces a whole suite.
// ---------------------------------------------------------------------------
class Gen {
public:
    Gen(std::uint64_t seed, std::vector<std::string> signals)
        : rng_(seed), signals_(std::move(signals)) {}

    std::mt19937_64& rng() { return rng_; }

    int pick(int n) { return static_cast<int>(rng_() % static_cast<std::uint64_t>(n)); }

    sstl::FormulaPtr random_atom() {
        const std::string& s = signals_[static_cast<std::size_t>(pick(
            static_cast<int>(signals_.size())))];
        static const sstl::Rel rels[] = {sstl::Rel::Lt, sstl::Rel::Le, sstl::Rel::Eq,
                                         sstl::Rel::Ge, sstl::Rel::Gt};
        return atom(s, rels[pick(5)], pick(5) - 2);
    }

    std::optional<sstl::TickInterval> random_tick_window() {
        int c = pick(4);
        if (c == 0) return std::nullopt;
        sstl::Tick a = pick(3);
        if (c == 1) return sstl::TickInterval(a, std::nullopt);
        return sstl::TickInterval(a, a + pick(4));
    }

    sstl::FormulaPtr random_sstl(int depth) {
        if (depth == 0) {
            int c = pick(6);
            if (c == 0) return sstl::f_true();
            if (c == 1) return sstl::f_false();
            return random_atom();
        }
        switch (pick(8)) {
            case 0: return random_atom();
            case 1: return sstl::f_not(random_sstl(depth - 1));
            case 2: return sstl::f_and(random_sstl(depth - 1), random_sstl(depth - 1));
            case 3: return sstl::f_or(random_sstl(depth - 1), random_sstl(depth - 1));
            case 4: return sstl::f_implies(random_sstl(depth - 1), random_sstl(depth - 1));
            case 5:
                return sstl::f_until(random_sstl(depth - 1), random_sstl(depth - 1),
                                     random_tick_window());
            case 6: return sstl::f_eventually(random_sstl(depth - 1), random_tick_window());
            default: return sstl::f_always(random_sstl(depth - 1), random_tick_window());
        }
    }

    std::optional<sstl::RealInterval> random_real_window(const sstl::Rational& dt) {
        int c = pick(4);
        if (c == 0) return std::nullopt;
        sstl::Rational lo = sstl::Rational(pick(4)) * dt;
        if (c == 1) return sstl::RealInterval(lo, std::nullopt);
        return sstl::RealInterval(lo, lo + sstl::Rational(pick(4)) * dt);
    }

    // Interval bounds stay on multiples of dt, which is the grid the dense
    // oracle supports.
    sstl::FormulaPtr random_stl(int depth, const sstl::Rational& dt) {
        if (depth == 0) {
            int c = pick(6);
            if (c == 0) return sstl::f_true();
            if (c == 1) return sstl::f_false();
            return random_atom();
        }
        switch (pick(8)) {
            case 0: return random_atom();
            case 1: return sstl::f_not(random_stl(depth - 1, dt));
            case 2: return sstl::f_and(random_stl(depth - 1, dt), random_stl(depth - 1, dt));
            case 3: return sstl::f_or(random_stl(depth - 1, dt), random_stl(depth - 1, dt));
            case 4: return sstl::f_implies(random_stl(depth - 1, dt), random_stl(depth - 1, dt));
            case 5:
                return sstl::f_until_real(random_stl(depth - 1, dt), random_stl(depth - 1, dt),
                                          random_real_window(dt));
            case 6:
                return sstl::f_eventually_real(random_stl(depth - 1, dt), random_real_window(dt));
            default:
                return sstl::f_always_real(random_stl(depth - 1, dt), random_real_window(dt));
        }
    }

    sstl::DiscreteTrace random_trace(std::size_t len, sstl::Rational dt) {
        std::vector<std::vector<std::int64_t>> rows(len);
        for (auto& row : rows) {
            row.reserve(signals_.size());
            for (std::size_t i = 0; i < signals_.size(); ++i)
                row.push_back(static_cast<std::int64_t>(pick(6) - 2) * sstl::kDefaultFactor);
        }
        return trace_from_scaled(signals_, std::move(rows), dt);
    }

private:
    std::mt19937_64 rng_;
    std::vector<std::string> signals_;
};

// ---------------------------------------------------------------------------
// Lasso words paired with a transition system that generates exactly that
// word: a program counter cycles through the rows and jumps back to the
// loop start, so the system's single run is the word itself. Useful for
// checking automaton language membership with the product machinery.
// ---------------------------------------------------------------------------
struct LassoCase {
    sstl::LassoWord word;
    sstl::TransitionSystem system;
};

inline LassoCase make_lasso(const std::vector<std::array<int, 2>>& rows, std::size_t loop_start) {
    const int n = static_cast<int>(rows.size());
    std::string m;
    m += "var pc in [0.." + std::to_string(n - 1) + "] init 0;\n";
    m += "var x in [0..1] init " + std::to_string(rows[0][0]) + ";\n";
    m += "var y in [0..1] init " + std::to_string(rows[0][1]) + ";\n";
    m += "trans step: choose {\n";
    for (int i = 0; i < n; ++i) {
        const int nxt = i + 1 < n ? i + 1 : static_cast<int>(loop_start);
        m += "  guard pc = " + std::to_string(i) + " -> updates { pc := " + std::to_string(nxt) +
             ", x := " + std::to_string(rows[static_cast<std::size_t>(nxt)][0]) +
             ", y := " + std::to_string(rows[static_cast<std::size_t>(nxt)][1]) + " }";
        m += i + 1 < n ? " |\n" : "\n";
    }
    m += "};\n";

    LassoCase c{sstl::LassoWord{}, sstl::parse_model(m)};
    c.word.signals = {"x", "y"};
    c.word.loop_start = loop_start;
    for (const auto& r : rows)
        c.word.rows.push_back({r[0] * sstl::kDefaultFactor, r[1] * sstl::kDefaultFactor});
    return c;
}

// Every lasso over two boolean signals with prefix plus cycle at most
// `max_total` rows.
inline std::vector<LassoCase> enumerate_lassos(int max_total = 4) {
    std::vector<LassoCase> out;
    for (int total = 1; total <= max_total; ++total) {
        std::vector<std::array<int, 2>> rows(static_cast<std::size_t>(total));
        const std::int64_t combos = 1LL << (2 * total);
        for (std::int64_t bits = 0; bits < combos; ++bits) {
            for (int i = 0; i < total; ++i) {
                rows[static_cast<std::size_t>(i)][0] = static_cast<int>(bits >> (2 * i)) & 1;
                rows[static_cast<std::size_t>(i)][1] = static_cast<int>(bits >> (2 * i + 1)) & 1;
            }
            for (int cyc = 1; cyc <= total; ++cyc)
                out.push_back(make_lasso(rows, static_cast<std::size_t>(total - cyc)));
        }
    }
    return out;
}

// All negation-normal-form formulas over the atoms x >= 1 and y >= 1 with at
// most two atom occurrences and at most two temporal operators, built in
// layers and deduplicated on printed form.
inline std::vector<sstl::FormulaPtr> enumerate_ltlp() {
    using namespace sstl;
    const FormulaPtr px = atom("x", Rel::Ge, 1);
    const FormulaPtr py = atom("y", Rel::Ge, 1);
    const std::vector<FormulaPtr> lits = {f_true(), f_false(), px, f_not(px), py, f_not(py)};

    std::vector<FormulaPtr> base = lits;
    for (const FormulaPtr& a : {px, f_not(px)})
        for (const FormulaPtr& b : {py, f_not(py)}) {
            base.push_back(f_and(a, b));
            base.push_back(f_or(a, b));
        }

    std::vector<FormulaPtr> t1;
    for (const FormulaPtr& a : base) {
        t1.push_back(f_next(a));
        t1.push_back(f_eventually(a));
        t1.push_back(f_always(a));
    }
    for (const FormulaPtr& a : lits)
        for (const FormulaPtr& b : lits) {
            t1.push_back(f_until(a, b));
            t1.push_back(f_release(a, b));
        }

    std::vector<FormulaPtr> u1;
    for (const FormulaPtr& a : lits) {
        u1.push_back(f_next(a));
        u1.push_back(f_eventually(a));
        u1.push_back(f_always(a));
    }

    std::vector<FormulaPtr> t2;
    for (const FormulaPtr& a : t1) {
        if (atom_count(a) > 2) continue;
        t2.push_back(f_next(a));
        t2.push_back(f_eventually(a));
        t2.push_back(f_always(a));
    }
    for (const FormulaPtr& u : u1)
        for (const FormulaPtr& l : lits) {
            if (atom_count(u) + atom_count(l) > 2) continue;
            t2.push_back(f_until(u, l));
            t2.push_back(f_until(l, u));
            t2.push_back(f_release(u, l));
            t2.push_back(f_release(l, u));
            t2.push_back(f_and(u, l));
            t2.push_back(f_or(u, l));
        }
    for (const FormulaPtr& a : u1)
        for (const FormulaPtr& b : u1) {
            if (atom_count(a) + atom_count(b) > 2) continue;
            t2.push_back(f_and(a, b));
            t2.push_back(f_or(a, b));
        }

    std::vector<FormulaPtr> all;
    std::set<std::string> seen;
    for (const auto* layer : {&base, &t1, &t2})
        for (const FormulaPtr& f : *layer)
            if (seen.insert(to_string(f)).second) all.push_back(f);
    return all;
}

// Language membership of one concrete lasso word, decided with the product
// machinery: the paired system generates exactly this word, so the product
// has an accepting cycle iff the automaton accepts the word.
inline bool buchi_accepts(const sstl::BuchiAutomaton& aut, const LassoCase& c) {
    sstl::ProductGraph pg(c.system, aut, 1'000'000);
    return sstl::find_accepting_cycle(pg, 1'000'000).has_value();
}

}  // namespace testutil
