#include <catch2/catch_amalgamated.hpp>

#include "test_util.hpp"

using namespace sstl;
using namespace testutil;

namespace {

std::vector<Verdict> row(const std::string& text, const DiscreteTrace& w) {
    return eval_all(parse_formula(text, Dialect::SSTL, w.factor), w);
}

std::vector<Verdict> verdicts(const std::string& pattern) {
    std::vector<Verdict> out;
    for (char c : pattern) {
        if (c == '1') out.push_back(Verdict::True);
        else if (c == '0') out.push_back(Verdict::False);
        else out.push_back(Verdict::Inconclusive);
    }
    return out;
}

}  // namespace

// Two signals that trade signs near the end of the recording: x1 starts
// positive and dips below zero at tick 9, x2 starts negative and recovers
// at tick 7. The crossing exercises every branch of the until evaluation.
TEST_CASE("crossing trace rows") {
    DiscreteTrace w = reference_trace();
    REQUIRE(w.length() == 11);

    CHECK(row("x1 >= 0", w) == verdicts("11111111100"));
    CHECK(row("x2 >= 0", w) == verdicts("00000001111"));

    // Once x2 has recovered, the until holds vacuously at every later tick;
    // before that, the x1 prefix survives long enough to reach tick 7.
    CHECK(row("x1 >= 0 U x2 >= 0", w) == verdicts("11111111111"));

    // With the witness confined to [t+5, t+10] the x1 failure at tick 9
    // blocks every start from 5 on, and no later witness can rescue it.
    CHECK(row("x1 >= 0 U[5,10] x2 >= 0", w) == verdicts("11111000000"));
}

TEST_CASE("bounded eventually matches its until expansion") {
    DiscreteTrace w = reference_trace();
    CHECK(row("F[5,10] x2 >= 0", w) == row("true U[5,10] x2 >= 0", w));
    CHECK(row("F[2,4] x1 < 0", w) == row("true U[2,4] x1 < 0", w));
}

TEST_CASE("eventually and always are duals under negation") {
    Gen gen(20260816, {"x", "y"});
    for (int i = 0; i < 200; ++i) {
        DiscreteTrace w = gen.random_trace(2 + gen.pick(9), Rational(1));
        FormulaPtr body = gen.random_sstl(2);
        std::optional<TickInterval> window = gen.random_tick_window();
        FormulaPtr ev = f_eventually(body, window);
        FormulaPtr du = f_not(f_always(f_not(body), window));
        CAPTURE(to_string(ev), w.length());
        CHECK(eval_all(ev, w) == eval_all(du, w));
    }
}

TEST_CASE("zero-width until degenerates to its right operand") {
    Gen gen(7, {"x", "y"});
    for (int i = 0; i < 100; ++i) {
        DiscreteTrace w = gen.random_trace(1 + gen.pick(8), Rational(1));
        FormulaPtr left = gen.random_sstl(1);
        FormulaPtr right = gen.random_sstl(1);
        FormulaPtr u = f_until(left, right, TickInterval(0, 0));
        CHECK(eval_all(u, w) == eval_all(right, w));
    }
}

TEST_CASE("truncated windows degrade to inconclusive only when both outcomes stay open") {
    DiscreteTrace w = trace_from_scaled({"x"}, {{1000}, {1000}, {1000}});

    // No witness inside the trace, nothing rules one out after it.
    CHECK(eval_at(parse_formula("F[0,5] x < 0", Dialect::SSTL), w, 0) ==
          Verdict::Inconclusive);
    // Every recorded tick satisfies the body but the window runs past the end.
    CHECK(eval_at(parse_formula("G[0,5] x >= 0", Dialect::SSTL), w, 0) ==
          Verdict::Inconclusive);
    CHECK(eval_at(parse_formula("G x >= 0", Dialect::SSTL), w, 0) ==
          Verdict::Inconclusive);
    // A witness already inside the trace settles the question.
    CHECK(eval_at(parse_formula("F[0,5] x >= 0", Dialect::SSTL), w, 0) == Verdict::True);
    // A violation inside the window settles always, truncation or not.
    DiscreteTrace broken = trace_from_scaled({"x"}, {{1000}, {-1000}, {1000}});
    CHECK(eval_at(parse_formula("G[0,5] x >= 0", Dialect::SSTL), broken, 0) ==
          Verdict::False);
    // A failed left operand kills until before the window even opens.
    CHECK(eval_at(parse_formula("x >= 0 U[4,9] x < 0", Dialect::SSTL), broken, 0) ==
          Verdict::False);
    // Window entirely inside the trace is conclusive both ways.
    CHECK(eval_at(parse_formula("F[0,1] x < 0", Dialect::SSTL), w, 0) == Verdict::False);
}

TEST_CASE("verdict algebra is three-valued") {
    const Verdict T = Verdict::True, F = Verdict::False, I = Verdict::Inconclusive;
    CHECK(v_not(I) == I);
    CHECK(v_and(I, F) == F);
    CHECK(v_and(I, T) == I);
    CHECK(v_or(I, T) == T);
    CHECK(v_or(I, F) == I);
    CHECK(v_implies(F, I) == T);
    CHECK(v_implies(I, F) == I);
    CHECK(v_implies(T, I) == I);
}

TEST_CASE("evaluation guards its inputs") {
    DiscreteTrace w = trace_from_scaled({"x"}, {{1000}, {0}});
    FormulaPtr phi = parse_formula("x >= 0", Dialect::SSTL);
    CHECK_THROWS_AS(eval_at(phi, w, 2), EvalError);
    CHECK_THROWS_AS(eval_at(phi, w, -1), EvalError);

    DiscreteTrace coarse = w;
    coarse.factor = 1;
    CHECK_THROWS_AS(eval_at(phi, coarse, 0), EvalError);

    FormulaPtr other = parse_formula("y >= 0", Dialect::SSTL);
    CHECK_THROWS_AS(eval_at(other, w, 0), EvalError);

    FormulaPtr ltlp = parse_formula("X (x >= 0)", Dialect::LTLP);
    CHECK_THROWS_AS(eval_at(ltlp, w, 0), EvalError);
}

TEST_CASE("eval_all agrees with tick-by-tick evaluation") {
    Gen gen(99, {"x", "y"});
    for (int i = 0; i < 50; ++i) {
        DiscreteTrace w = gen.random_trace(1 + gen.pick(10), Rational(1));
        FormulaPtr phi = gen.random_sstl(3);
        std::vector<Verdict> all = eval_all(phi, w);
        REQUIRE(all.size() == w.length());
        for (Tick t = 0; t < static_cast<Tick>(w.length()); ++t)
            CHECK(all[static_cast<std::size_t>(t)] == eval_at(phi, w, t));
    }
}
