#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "sstl/error.hpp"
#include "sstl/interval.hpp"

namespace sstl {

enum class Rel { Lt, Le, Eq, Ge, Gt };

inline const char* rel_text(Rel r) {
    switch (r) {
        case Rel::Lt: return "<";
        case Rel::Le: return "<=";
        case Rel::Eq: return "=";
        case Rel::Ge: return ">=";
        case Rel::Gt: return ">";
    }
    return "?";
}

inline bool rel_holds(Rel r, __int128 lhs, __int128 rhs) {
    switch (r) {
        case Rel::Lt: return lhs < rhs;
        case Rel::Le: return lhs <= rhs;
        case Rel::Eq: return lhs == rhs;
        case Rel::Ge: return lhs >= rhs;
        case Rel::Gt: return lhs > rhs;
    }
    return false;
}

// Relational condition  c1·x1 + ... + cn·xn ⋈ b  over signal values.
// Coefficients and offset are stored scaled by `factor`, and signal values
// arrive scaled by the same factor, so the comparison is evaluated exactly
// at factor² scale in wide integers.
struct LinearPredicate {
    struct Term {
        std::string signal;
        std::int64_t coeff;  // scaled by factor
    };

    std::vector<Term> terms;
    std::int64_t offset;  // scaled by factor
    Rel rel;
    std::int64_t factor;

    LinearPredicate(std::vector<Term> terms, std::int64_t offset, Rel rel, std::int64_t factor)
        : terms(std::move(terms)), offset(offset), rel(rel), factor(factor) {
        if (this->terms.empty()) throw Error("predicate needs at least one signal term");
        if (factor <= 0) throw Error("predicate factor must be positive");
    }

    bool eval(const std::function<std::int64_t(const std::string&)>& scaled_value) const {
        __int128 lhs = 0;
        for (const Term& t : terms) lhs += static_cast<__int128>(t.coeff) * scaled_value(t.signal);
        __int128 rhs = static_cast<__int128>(offset) * factor;
        return rel_holds(rel, lhs, rhs);
    }

    bool operator==(const LinearPredicate& o) const {
        if (terms.size() != o.terms.size() || offset != o.offset || rel != o.rel ||
            factor != o.factor)
            return false;
        for (std::size_t i = 0; i < terms.size(); ++i)
            if (terms[i].signal != o.terms[i].signal || terms[i].coeff != o.terms[i].coeff)
                return false;
        return true;
    }
};

// Tick-window guard over the implicit position counter, parameterized by the
// entry position j₀ of the obligation it belongs to. Evaluated against the
// elapsed distance j − j₀.
struct GuardAtom {
    enum class Kind { WithinBoth, LowerOnly, UpperOnly };

    Kind kind;
    Tick a = 0;  // WithinBoth, LowerOnly
    Tick b = 0;  // WithinBoth, UpperOnly
    int obligation_id = 0;

    static GuardAtom within(Tick a, Tick b, int id) {
        if (a > b) throw Error("guard window with a > b");
        return GuardAtom{Kind::WithinBoth, a, b, id};
    }
    static GuardAtom lower(Tick a, int id) { return GuardAtom{Kind::LowerOnly, a, 0, id}; }
    static GuardAtom upper(Tick b, int id) { return GuardAtom{Kind::UpperOnly, 0, b, id}; }

    bool eval(Tick elapsed) const {
        switch (kind) {
            case Kind::WithinBoth: return a <= elapsed && elapsed <= b;
            case Kind::LowerOnly: return elapsed >= a;
            case Kind::UpperOnly: return elapsed <= b;
        }
        return false;
    }

    bool operator==(const GuardAtom& o) const {
        return kind == o.kind && a == o.a && b == o.b && obligation_id == o.obligation_id;
    }
};

}  // namespace sstl
