#include <catch2/catch_amalgamated.hpp>

#include "test_util.hpp"

using namespace sstl;
using namespace testutil;

namespace {

std::string conceptual(const std::string& text) {
    return to_string(translate(parse_formula(text, Dialect::SSTL)));
}

std::string impl(const std::string& text) {
    return to_string(translate_impl(parse_formula(text, Dialect::SSTL)));
}

}  // namespace

TEST_CASE("bounded until gains a witness guard") {
    const std::string phi = "x1 >= 0 U[5,10] x2 >= 0";
    CHECK(conceptual(phi) == "x1 >= 0 U (x2 >= 0 && within[5,10]@0)");
    CHECK(impl(phi) == "(x1 >= 0 && j<=j0@0+10) U (x2 >= 0 && j>=j0@0+5 && j<=j0@0+10)");
}

TEST_CASE("window shapes drop the guards they do not need") {
    // Lower bound zero: nothing defers the witness, only the deadline stays.
    CHECK(conceptual("F[0,3] x >= 0") == "F (x >= 0 && within[0,3]@0)");
    CHECK(impl("F[0,3] x >= 0") == "j<=j0@0+3 U (x >= 0 && j<=j0@0+3)");
    // No upper bound: nothing caps the wait, only the delay guard stays.
    CHECK(conceptual("F[2,inf] x >= 0") == "F (x >= 0 && j>=j0@0+2)");
    CHECK(impl("F[2,inf] x >= 0") == "true U (x >= 0 && j>=j0@0+2)");
    // Always keeps its own shape conceptually and dualizes to until otherwise.
    CHECK(conceptual("G[1,2] x >= 0") == "G (within[1,2]@0 -> x >= 0)");
    CHECK(impl("G[1,2] x >= 0") ==
          "!(j<=j0@0+2 U (!x >= 0 && j>=j0@0+1 && j<=j0@0+2))");
}

TEST_CASE("full windows translate unchanged") {
    for (const char* text : {"x >= 0 U[0,inf] y >= 0", "x >= 0 U y >= 0",
                             "F x >= 0", "G x >= 0"}) {
        ObligationRegistry reg;
        FormulaPtr out = translate(parse_formula(text, Dialect::SSTL), reg);
        CHECK(reg.size() == 0);
        ObligationRegistry reg2;
        FormulaPtr out2 = translate_impl(parse_formula(text, Dialect::SSTL), reg2);
        CHECK(reg2.size() == 0);
        CHECK(structurally_equal(out, out2));
    }
    CHECK(conceptual("x >= 0 U[0,inf] y >= 0") == "x >= 0 U y >= 0");
}

TEST_CASE("registry records one obligation per bounded operator") {
    ObligationRegistry reg;
    FormulaPtr phi = parse_formula("F[1,2] x >= 0 && G[0,5] y >= 0", Dialect::SSTL);
    FormulaPtr psi = translate(phi, reg);
    REQUIRE(reg.size() == 2);
    CHECK(reg.info(0).a == 1);
    CHECK(*reg.info(0).b == 2);
    CHECK(reg.info(0).width() == 2);
    CHECK(reg.info(0).counter_cap() == 3);
    CHECK(reg.info(1).a == 0);
    CHECK(*reg.info(1).b == 5);
    CHECK(reg.info(1).width() == 6);
    CHECK(reg.total_width() == 8);
    CHECK_THROWS_AS(reg.info(2), EvalError);
    CHECK_NOTHROW(validate_dialect(psi, Dialect::LTLP));

    ObligationRegistry open_reg;
    translate(parse_formula("F[2,inf] x >= 0", Dialect::SSTL), open_reg);
    REQUIRE(open_reg.size() == 1);
    CHECK(!open_reg.info(0).bounded());
    CHECK(open_reg.info(0).width() == 0);
    CHECK(open_reg.info(0).counter_cap() == 2);
}

TEST_CASE("guard atoms evaluate elapsed distance") {
    GuardAtom g = GuardAtom::within(5, 10, 0);
    CHECK(!g.eval(4));
    CHECK(g.eval(5));
    CHECK(g.eval(10));
    CHECK(!g.eval(11));
    CHECK(GuardAtom::lower(2, 0).eval(2));
    CHECK(!GuardAtom::lower(2, 0).eval(1));
    CHECK(GuardAtom::upper(3, 0).eval(0));
    CHECK(!GuardAtom::upper(3, 0).eval(4));
    CHECK_THROWS_AS(GuardAtom::within(3, 2, 0), Error);
}

TEST_CASE("translation preserves every verdict") {
    Gen gen(424242, {"x", "y"});
    int inconclusive_seen = 0;
    for (int i = 0; i < 300; ++i) {
        DiscreteTrace w = gen.random_trace(1 + gen.pick(9), Rational(1));
        FormulaPtr phi = gen.random_sstl(3);
        FormulaPtr tau_c = translate(phi);
        FormulaPtr tau_i = translate_impl(phi);
        CAPTURE(to_string(phi), w.length());
        for (Tick t = 0; t < static_cast<Tick>(w.length()); ++t) {
            Verdict direct = eval_at(phi, w, t);
            if (direct == Verdict::Inconclusive) ++inconclusive_seen;
            CHECK(eval_ltlp(tau_c, w, t) == direct);
            CHECK(eval_ltlp(tau_i, w, t) == direct);
        }
    }
    // The sample has to exercise the truncation path, not just settled runs.
    CHECK(inconclusive_seen > 0);
}

TEST_CASE("live obligations never exceed the static bound") {
    Gen gen(17, {"x", "y"});
    for (int i = 0; i < 150; ++i) {
        DiscreteTrace w = gen.random_trace(1 + gen.pick(9), Rational(1));
        FormulaPtr phi = gen.random_sstl(3);
        using Xlate = FormulaPtr (*)(const FormulaPtr&, ObligationRegistry&);
        for (Xlate xlate : {static_cast<Xlate>(&translate_impl), static_cast<Xlate>(&translate)}) {
            ObligationRegistry reg;
            FormulaPtr psi = xlate(phi, reg);
            for (Tick t = 0; t < static_cast<Tick>(w.length()); ++t)
                CHECK(live_obligation_count(psi, w, t) <= reg.total_width());
        }
    }
}

TEST_CASE("translation rejects non-discrete input") {
    FormulaPtr stl = parse_formula("F[0.5,1] x >= 0", Dialect::STL);
    CHECK_THROWS_AS(translate(stl), EvalError);
    FormulaPtr ltlp = parse_formula("X (x >= 0)", Dialect::LTLP);
    CHECK_THROWS_AS(translate_impl(ltlp), EvalError);
}
