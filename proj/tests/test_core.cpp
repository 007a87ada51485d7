#include <catch2/catch_amalgamated.hpp>

#include "test_util.hpp"

using namespace sstl;

TEST_CASE("rational decimal parsing is exact") {
    CHECK(Rational::from_decimal("0.001") == Rational(1, 1000));
    CHECK(Rational::from_decimal("1.5") == Rational(3, 2));
    CHECK(Rational::from_decimal("-0.25") == Rational(-1, 4));
    CHECK(Rational::from_decimal("+0.5") == Rational(1, 2));
    CHECK(Rational::from_decimal("10") == Rational(10));
    CHECK(Rational::from_decimal("0.0805") == Rational(161, 2000));
    CHECK_THROWS_AS(Rational::from_decimal(""), Error);
    CHECK_THROWS_AS(Rational::from_decimal("."), Error);
    CHECK_THROWS_AS(Rational::from_decimal("1.2.3"), Error);
    CHECK_THROWS_AS(Rational::from_decimal("abc"), Error);
    CHECK_THROWS_AS(Rational::from_decimal("92233720368547758080"), Error);
}

TEST_CASE("rational arithmetic and normalization") {
    CHECK(Rational(2, 4) == Rational(1, 2));
    CHECK(Rational(1, -2) == Rational(-1, 2));
    CHECK(Rational(0, 7).den() == 1);
    CHECK_THROWS_AS(Rational(1, 0), Error);

    CHECK(Rational(1, 3) + Rational(1, 6) == Rational(1, 2));
    CHECK(Rational(1, 3) * Rational(3, 4) == Rational(1, 4));
    CHECK(Rational(1, 2) / Rational(1, 8) == Rational(4));
    CHECK(Rational(1, 2) - Rational(3, 4) == Rational(-1, 4));
    CHECK_THROWS_AS(Rational(1, 2) / Rational(0), Error);

    CHECK(Rational(7, 2).floor() == 3);
    CHECK(Rational(-7, 2).floor() == -4);
    CHECK(Rational(-6, 3).floor() == -2);
    CHECK(Rational(1, 3) < Rational(1, 2));
    CHECK(Rational(-1, 2) < Rational(-1, 3));
    CHECK(Rational(240, 1000) / Rational(1, 1000) == Rational(240));
}

TEST_CASE("rational rendering") {
    CHECK(Rational(1, 2).to_string() == "0.5");
    CHECK(Rational(-1, 4).to_string() == "-0.25");
    CHECK(Rational(210, 1000).to_string() == "0.21");
    CHECK(Rational(1, 3).to_string() == "1/3");
    CHECK(Rational(5).to_string() == "5");
    for (const char* text : {"0.001", "-12.75", "3", "0.21"})
        CHECK(Rational::from_decimal(Rational::from_decimal(text).to_string()) ==
              Rational::from_decimal(text));
}

TEST_CASE("quantization rounds halves away from zero") {
    CHECK(quantize(Rational(1, 2), 1000) == 500);
    CHECK(quantize_text("0.0805", 1000) == 81);
    CHECK(quantize_text("-0.0805", 1000) == -81);
    CHECK(quantize_text("0.0004", 1000) == 0);
    CHECK(quantize_text("0.0005", 1000) == 1);
    CHECK(quantize_text("-0.0005", 1000) == -1);
    CHECK(quantize_text("1", 1000) == 1000);
    CHECK_THROWS_AS(quantize(Rational(1), 0), Error);
}

TEST_CASE("interval construction rules") {
    CHECK_THROWS_AS(RealInterval(Rational(1, 2), Rational(1, 4)), Error);
    CHECK_THROWS_AS(RealInterval(Rational(-1), std::nullopt), Error);
    CHECK(RealInterval(Rational(0), std::nullopt).is_full());
    CHECK(!RealInterval(Rational(1), std::nullopt).is_full());
    CHECK(RealInterval(Rational(1), std::nullopt).is_unbounded());
    CHECK_THROWS_AS(TickInterval(5, 4), Error);
    CHECK_THROWS_AS(TickInterval(-1, std::nullopt), Error);
}

TEST_CASE("parser round-trips through the printer") {
    const std::vector<std::pair<Dialect, std::string>> cases = {
        {Dialect::SSTL, "x >= 0"},
        {Dialect::SSTL, "!(x < 1) && y = 2"},
        {Dialect::SSTL, "x >= 0 U[5,10] y >= 0"},
        {Dialect::SSTL, "F[0,3] x > 1 || G y <= 2"},
        {Dialect::SSTL, "true U (false -> x >= 0)"},
        {Dialect::SSTL, "G[2,inf] (x >= 1 -> F y > 0)"},
        {Dialect::SSTL, "2 * x - 3 * y <= -1"},
        {Dialect::STL, "F[0.5,1.5] x >= 0"},
        {Dialect::STL, "G[0.25,inf] y < 1"},
        {Dialect::STL, "x >= 0 U[0.001,0.24] y >= 0.5"},
        {Dialect::LTLP, "X (x >= 0)"},
        {Dialect::LTLP, "G (x >= 1 -> y >= 1 U x < 1)"},
    };
    for (const auto& [dialect, text] : cases) {
        CAPTURE(text);
        FormulaPtr f = parse_formula(text, dialect);
        FormulaPtr g = parse_formula(to_string(f), dialect);
        CHECK(structurally_equal(f, g));
    }
}

TEST_CASE("parser precedence") {
    auto same = [](const std::string& a, const std::string& b) {
        return structurally_equal(parse_formula(a, Dialect::SSTL),
                                  parse_formula(b, Dialect::SSTL));
    };
    CHECK(same("x >= 0 && y >= 0 || z >= 0", "(x >= 0 && y >= 0) || z >= 0"));
    CHECK(same("x >= 0 -> y >= 0 -> z >= 0", "x >= 0 -> (y >= 0 -> z >= 0)"));
    CHECK(same("x >= 0 && y >= 0 U z >= 0", "x >= 0 && (y >= 0 U z >= 0)"));
    CHECK(same("x >= 0 U y >= 0 U z >= 0", "x >= 0 U (y >= 0 U z >= 0)"));
    CHECK(same("!x >= 0 && y >= 0", "(!x >= 0) && y >= 0"));
    CHECK(same("G F x >= 0", "G (F x >= 0)"));
}

TEST_CASE("parser reports positions and rejects bad input") {
    try {
        parse_formula("x >= 0 &&", Dialect::SSTL);
        FAIL("expected a parse error");
    } catch (const ParseError& e) {
        CHECK(e.line == 1);
        CHECK(e.column >= 9);
    }
    CHECK_THROWS_AS(parse_formula("x >=", Dialect::SSTL), ParseError);
    CHECK_THROWS_AS(parse_formula("F[3,2] x >= 0", Dialect::SSTL), ParseError);
    CHECK_THROWS_AS(parse_formula("F[0.5,1] x >= 0", Dialect::SSTL), ParseError);
    CHECK_THROWS_AS(parse_formula("X x >= 0", Dialect::SSTL), ParseError);
    CHECK_THROWS_AS(parse_formula("F[1,2] x >= 0", Dialect::LTLP), ParseError);
    CHECK_THROWS_AS(parse_formula("true U", Dialect::SSTL), ParseError);
    CHECK_THROWS_AS(parse_formula("inf >= 0", Dialect::SSTL), ParseError);
}

TEST_CASE("parser checks signal names when given a model's signature") {
    std::vector<std::string> known = {"x", "y"};
    CHECK_NOTHROW(parse_formula("x >= 0 && y < 1", Dialect::SSTL, kDefaultFactor, known));
    CHECK_THROWS_AS(parse_formula("z >= 0", Dialect::SSTL, kDefaultFactor, known), ParseError);
}

TEST_CASE("guard atoms parse back from printed form") {
    FormulaPtr phi = parse_formula("x >= 0 U[5,10] y >= 0", Dialect::SSTL);
    for (FormulaPtr psi : {translate(phi), translate_impl(phi)}) {
        CAPTURE(to_string(psi));
        FormulaPtr back = parse_formula(to_string(psi), Dialect::LTLP);
        CHECK(structurally_equal(psi, back));
    }
}

TEST_CASE("time discretization floors onto the tick grid") {
    CHECK(discretize_time(Rational(240, 1000), Rational(1, 1000)) == 240);
    CHECK(discretize_time(Rational(1, 3), Rational(1, 4)) == 1);
    CHECK(discretize_time(Rational(0), Rational(1, 2)) == 0);

    TickInterval w = discretize_interval(RealInterval(Rational(18, 100), Rational(24, 100)),
                                         Rational(1, 1000));
    CHECK(w.lo == 180);
    CHECK(*w.hi == 240);
    TickInterval u =
        discretize_interval(RealInterval(Rational(3, 2), std::nullopt), Rational(1, 2));
    CHECK(u.lo == 3);
    CHECK(!u.hi.has_value());
}

TEST_CASE("formula discretization maps every window and keeps structure") {
    FormulaPtr stl = parse_formula("G (x >= 1 -> F[0.18,0.24] y >= 1)", Dialect::STL);
    FormulaPtr sstl = discretize_formula(stl, Rational(1, 1000));
    CHECK(structurally_equal(sstl, parse_formula("G (x >= 1 -> F[180,240] y >= 1)",
                                                 Dialect::SSTL)));
    CHECK_NOTHROW(validate_dialect(sstl, Dialect::SSTL));
}

TEST_CASE("sampling adequacy check") {
    CHECK(check_sih(Rational(1000), Rational(100), 2).satisfied);
    CHECK(!check_sih(Rational(150), Rational(100), 2).satisfied);
    CHECK(check_sih(Rational(200), Rational(100), 2).satisfied);
    CHECK(!check_sih(Rational(200), Rational(100), 3).satisfied);
    CHECK_THROWS_AS(check_sih(Rational(0), Rational(1), 2), Error);
    CHECK_THROWS_AS(check_sih(Rational(100), Rational(-1), 2), Error);
    CHECK_THROWS_AS(check_sih(Rational(100), Rational(1), 1), Error);
}

TEST_CASE("dialect validation separates the three languages") {
    FormulaPtr stl = parse_formula("F[0.5,1] x >= 0", Dialect::STL);
    CHECK_THROWS_AS(validate_dialect(stl, Dialect::SSTL), EvalError);
    FormulaPtr sstl = parse_formula("F[1,2] x >= 0", Dialect::SSTL);
    CHECK_THROWS_AS(validate_dialect(sstl, Dialect::LTLP), EvalError);
    FormulaPtr ltlp = parse_formula("X (x >= 0)", Dialect::LTLP);
    CHECK_THROWS_AS(validate_dialect(ltlp, Dialect::SSTL), EvalError);
}
