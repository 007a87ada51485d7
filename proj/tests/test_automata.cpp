#include <catch2/catch_amalgamated.hpp>

#include "test_util.hpp"

using namespace sstl;
using namespace testutil;

namespace {

FormulaPtr ltlp(const std::string& text) { return parse_formula(text, Dialect::LTLP); }

const char* kPulse4 =
    "var pc in [0..3] init 0;\n"
    "var x in [0..1] init 1;\n"
    "trans step: choose {\n"
    "  guard pc = 0 -> updates { pc := 1, x := 0 }\n"
    "| guard pc = 1 -> updates { pc := 2, x := 0 }\n"
    "| guard pc = 2 -> updates { pc := 3, x := 0 }\n"
    "| guard pc = 3 -> updates { pc := 0, x := 1 }\n"
    "};\n";

}  // namespace

TEST_CASE("automaton acceptance on hand-built lassos") {
    // Rows are (x, y) pairs; the tail from loop_start repeats forever.
    LassoCase never = make_lasso({{0, 0}}, 0);
    LassoCase late = make_lasso({{0, 0}, {1, 0}}, 1);
    LassoCase once = make_lasso({{1, 0}, {0, 0}}, 1);
    LassoCase alt = make_lasso({{1, 1}, {0, 1}}, 0);

    FormulaPtr fx = ltlp("F (x >= 1)");
    BuchiAutomaton afx = ltl_to_buchi(fx);
    CHECK(!buchi_accepts(afx, never));
    CHECK(buchi_accepts(afx, late));
    CHECK(buchi_accepts(afx, once));

    FormulaPtr gx = ltlp("G (x >= 1)");
    BuchiAutomaton agx = ltl_to_buchi(gx);
    CHECK(!buchi_accepts(agx, never));
    CHECK(!buchi_accepts(agx, once));
    CHECK(buchi_accepts(agx, make_lasso({{1, 0}}, 0)));

    FormulaPtr until = ltlp("x >= 1 U y >= 1");
    BuchiAutomaton au = ltl_to_buchi(until);
    CHECK(buchi_accepts(au, alt));
    CHECK(!buchi_accepts(au, once));
    CHECK(buchi_accepts(au, make_lasso({{1, 0}, {0, 1}}, 1)));

    FormulaPtr nx = ltlp("X (x >= 1)");
    BuchiAutomaton anx = ltl_to_buchi(nx);
    CHECK(buchi_accepts(anx, late));
    CHECK(!buchi_accepts(anx, once));

    FormulaPtr gfx = ltlp("G F (x >= 1)");
    BuchiAutomaton agfx = ltl_to_buchi(gfx);
    CHECK(!buchi_accepts(agfx, once));
    CHECK(buchi_accepts(agfx, late));
}

TEST_CASE("acceptance agrees with exact lasso evaluation on an operator sweep") {
    std::vector<FormulaPtr> lits = {f_true(), f_false(), ltlp("x >= 1"),
                                    ltlp("!x >= 1"), ltlp("y >= 1"), ltlp("!y >= 1")};
    std::vector<FormulaPtr> formulas;
    for (const FormulaPtr& a : lits) {
        formulas.push_back(f_next(a));
        formulas.push_back(f_eventually(a));
        formulas.push_back(f_always(a));
        for (const FormulaPtr& b : lits) {
            formulas.push_back(f_until(a, b));
            formulas.push_back(f_release(a, b));
        }
    }
    std::vector<LassoCase> lassos = enumerate_lassos(3);
    REQUIRE(lassos.size() == 228);
    for (const FormulaPtr& psi : formulas) {
        BuchiAutomaton aut = ltl_to_buchi(psi);
        int mismatches = 0;
        for (const LassoCase& c : lassos)
            if (buchi_accepts(aut, c) != eval_lasso(psi, c.word)) ++mismatches;
        CAPTURE(to_string(psi));
        CHECK(mismatches == 0);
    }
}

// With counter guards the product is an over-approximation: a state that is
// both an episode entry and a continuation offers a spurious reset branch,
// so it may accept words the exact evaluator rejects (the verifier replays
// candidates to filter those). What it must never do is miss a word the
// exact evaluator accepts; a missed word would surface as a wrong Satisfied.
TEST_CASE("guarded automata never drop an accepting word") {
    std::vector<FormulaPtr> formulas = {
        translate_impl(parse_formula("F[0,2] x >= 1", Dialect::SSTL)),
        translate_impl(parse_formula("F[1,3] y >= 1", Dialect::SSTL)),
        translate_impl(parse_formula("G[0,2] x >= 1", Dialect::SSTL)),
        translate_impl(parse_formula("G[1,2] x >= 1", Dialect::SSTL)),
        translate_impl(parse_formula("x >= 1 U[1,2] y >= 1", Dialect::SSTL)),
        translate_impl(parse_formula("G (x >= 1 -> F[0,1] y >= 1)", Dialect::SSTL)),
        translate_impl(parse_formula("F[2,inf] x >= 1", Dialect::SSTL)),
    };
    for (const FormulaPtr& psi : formulas) {
        BuchiAutomaton aut = ltl_to_buchi(psi);
        for (const LassoCase& c : enumerate_lassos(3)) {
            if (!eval_lasso(psi, c.word)) continue;
            CAPTURE(to_string(psi), c.word.rows.size(), c.word.loop_start);
            CHECK(buchi_accepts(aut, c));
        }
    }
}

TEST_CASE("bounded response on a pulse process") {
    TransitionSystem sys = parse_model(kPulse4);
    FormulaPtr fits = parse_formula("G (F[0,3] x = 1)", Dialect::SSTL,
                                    kDefaultFactor, sys.signal_names());
    VerifyResult ok = verify(sys, fits);
    CHECK(ok.status == VerifyStatus::Satisfied);
    CHECK(!ok.counterexample.has_value());

    FormulaPtr tight = parse_formula("G (F[0,2] x = 1)", Dialect::SSTL,
                                     kDefaultFactor, sys.signal_names());
    VerifyResult bad = verify(sys, tight);
    REQUIRE(bad.status == VerifyStatus::Violated);
    REQUIRE(bad.counterexample.has_value());
    REQUIRE(!bad.counterexample->cycle.empty());

    // The reported lasso must itself witness the violation.
    LassoWord word = bad.counterexample->to_word();
    FormulaPtr tau = translate_impl(tight);
    CHECK(eval_lasso(negate(tau), word));
    CHECK(!eval_lasso(tau, word));
}

TEST_CASE("fairness counterexample starves the waiting direction") {
    TransitionSystem sys = *builtin_model("traffic_light");
    FormulaPtr phi = parse_formula("G (F (NS_green = 1))", Dialect::SSTL,
                                   kDefaultFactor, sys.signal_names());
    VerifyResult r = verify(sys, phi);
    REQUIRE(r.status == VerifyStatus::Violated);
    REQUIRE(r.counterexample.has_value());
    const Counterexample& ce = *r.counterexample;
    std::size_t ns = 0;
    while (ce.signals[ns] != "NS_green") ++ns;
    for (const ProductState& ps : ce.cycle) CHECK(ps.sys[ns] == 0);
}

TEST_CASE("state budget is enforced") {
    TransitionSystem sys = *builtin_model("traffic_light");
    FormulaPtr phi = parse_formula("G (F (NS_green = 1))", Dialect::SSTL,
                                   kDefaultFactor, sys.signal_names());
    VerifyResult r = verify(sys, phi, Encoding::Impl, SearchLimits{3, 200'000});
    CHECK(r.status == VerifyStatus::ResourceLimit);
    CHECK(!r.message.empty());
}

TEST_CASE("verification is deterministic") {
    TransitionSystem sys = *builtin_model("pedestrian_crossing");
    FormulaPtr phi = parse_formula("G ((cars_green = 1 && waiting_peds >= 2) -> F[2,5] (walk_signal = 1))",
                                   Dialect::SSTL, kDefaultFactor, sys.signal_names());
    VerifyResult a = verify(sys, phi);
    VerifyResult b = verify(sys, phi);
    REQUIRE(a.status == VerifyStatus::Violated);
    CHECK(a.status == b.status);
    CHECK(a.states_explored == b.states_explored);
    REQUIRE(a.counterexample.has_value());
    REQUIRE(b.counterexample.has_value());
    CHECK(a.counterexample->prefix == b.counterexample->prefix);
    CHECK(a.counterexample->cycle == b.counterexample->cycle);
}

TEST_CASE("conceptual and implementable encodings give the same verdicts") {
    TransitionSystem sys = parse_model(kPulse4);
    for (const char* text : {"G (F[0,3] x = 1)", "G (F[0,2] x = 1)", "F[0,4] x = 1",
                             "G (x = 1 -> F[4,4] x = 1)"}) {
        FormulaPtr phi = parse_formula(text, Dialect::SSTL, kDefaultFactor,
                                       sys.signal_names());
        CAPTURE(text);
        CHECK(verify(sys, phi, Encoding::Impl).status ==
              verify(sys, phi, Encoding::Conceptual).status);
    }
}
