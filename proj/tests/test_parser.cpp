#include "random_formula.hpp"

#include <teamsem/formula_gen.hpp>
#include <teamsem/parser.hpp>

#include <doctest.h>

using namespace teamsem;

TEST_CASE("parse examples")
{
    CHECK(parse("D(x ; y)") == Formula::dependence({"x"}, "y"));
    CHECK(parse("forall x. P(x) -> C(y)")
          == Formula::forall("x", Formula::imp(Formula::relation("P", {Term::var("x")}), Formula::constancy("y"))));
    CHECK(parse("C(x) /\\ C(y) -> C(z)")
          == Formula::imp(Formula::conj(Formula::constancy("x"), Formula::constancy("y")), Formula::constancy("z")));
}

TEST_CASE("precedence")
{
    // /\ binds tighter than *, which binds tighter than \/
    CHECK(parse("P(x) \\/ Q(x) * R(x) /\\ S(x)")
          == Formula::disj(parse("P(x)"), Formula::tensor(parse("Q(x)"), Formula::conj(parse("R(x)"), parse("S(x)")))));
    // implications associate to the right
    CHECK(parse("P(x) -> Q(x) -> R(x)") == Formula::imp(parse("P(x)"), Formula::imp(parse("Q(x)"), parse("R(x)"))));
    CHECK(parse("P(x) -* Q(x) -* R(x)") == Formula::wand(parse("P(x)"), Formula::wand(parse("Q(x)"), parse("R(x)"))));
    CHECK(parse("D(; y)") == Formula::constancy("y"));
    CHECK(parse("!(x = y)") == parse("!x = y"));
}

TEST_CASE("print examples")
{
    CHECK(print(Formula::tensor(Formula::equality(Term::var("x"), Term::constant("0")),
                                Formula::equality(Term::var("x"), Term::constant("1"))))
          == "x = 0 * x = 1");
    CHECK(print(Formula::dependence({}, "v")) == "C(v)");
    CHECK(print(Formula::guarded_exists("y", {"x"}, Formula::relation("P", {Term::var("y")}))) == "exists y \\ x . P(y)");
}

TEST_CASE("repeated governors are normalized away")
{
    CHECK(parse("D(x, x ; y)") == parse("D(x ; y)"));
    CHECK(parse("D(x, z, x, y)") == parse("D(x, z ; y)"));
    CHECK(parse("exists y \\ x, x . P(y)") == parse("exists y \\ x . P(y)"));
    CHECK(print(parse("D(z, x, z ; y)")) == "D(x, z ; y)");
}

TEST_CASE("dialects")
{
    CHECK(parse("P(x) \\/ Q(x)") == Formula::disj(parse("P(x)"), parse("Q(x)")));
    CHECK(parse("P(x) \\/ Q(x)", Dialect::dependence) == Formula::tensor(parse("P(x)"), parse("Q(x)")));
}

TEST_CASE("parse errors")
{
    CHECK_THROWS_AS(parse("("), ParseError);
    CHECK_THROWS_AS(parse("P(x) -> Q(x) -* R(x)"), ParseError);
    CHECK_THROWS_AS(parse("P(x) -* Q(x) -> R(x)"), ParseError);
    CHECK_THROWS_AS(parse("!D(x ; y)"), ParseError);
    CHECK_THROWS_AS(parse("forall . P(x)"), ParseError);
    CHECK_THROWS_AS(parse("P(x) Q(x)"), ParseError);
    CHECK_THROWS_AS(parse(""), ParseError);
    CHECK_NOTHROW(parse("(P(x) -> Q(x)) -* R(x)"));

    try
    {
        parse("P(x) /\\\n  (Q(x");
        FAIL("expected a parse error");
    }
    catch (ParseError const & e)
    {
        CHECK(e.position().line == 2);
        CHECK(e.position().offset <= std::string{"P(x) /\\\n  (Q(x"}.size());
        CHECK_FALSE(e.expected().empty());
        std::string const shown = render_error("P(x) /\\\n  (Q(x", e);
        CHECK(shown.find('^') != std::string::npos);
        CHECK(shown.find("(Q(x") != std::string::npos);
    }
}

TEST_CASE("error positions stay inside the input")
{
    for (char const * s : {"(", "P(", "forall", "x =", "D(x ;", "P(x) -* ", "!(", "exists y \\ x"})
    {
        try
        {
            parse(s);
            FAIL_CHECK("accepted " << s);
        }
        catch (ParseError const & e)
        {
            CHECK(e.position().offset <= std::string_view{s}.size());
        }
    }
}

TEST_CASE("parse . print is the identity (random formulas up to depth 5)")
{
    std::mt19937_64 rng{42};
    for (int i = 0; i < 20'000; ++i)
    {
        Formula const f = test::random_formula(rng, 1 + i % 5);
        REQUIRE_MESSAGE(parse(print(f)) == f, print(f));
    }
}

TEST_CASE("parse . print is the identity on generated formulas (full syntax, depth 3)")
{
    FormulaSpace const space{full_syntax_config(), 3};
    for (std::uint64_t i = 0; i < space.size(); i += 3)
    {
        Formula const f = space.at(i);
        REQUIRE_MESSAGE(parse(print(f)) == f, print(f));
    }
}

TEST_CASE("print . parse normalizes idempotently")
{
    for (char const * s : {"((P(x)))", "forall x.(P(x) /\\ (Q(x)))", "exists y\\x,z.C(y)", "!(x=y) * (x=y \\/ P(x))",
                           "(P(x) -> Q(x)) -> R(x)", "forall y \\ . P(y)"})
    {
        std::string const once = print(parse(s));
        CHECK(print(parse(once)) == once);
    }
}

TEST_CASE("unicode printing")
{
    std::string const u = print(parse("forall x. C(x) * x = y -* P(x) \\/ Q(x)"), {.unicode = true});
    CHECK(u.find("∀") != std::string::npos);
    CHECK(u.find("⊗") != std::string::npos);
    CHECK(u.find("⊸") != std::string::npos);
}
