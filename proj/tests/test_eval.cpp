#include "helpers.hpp"
#include "oracle.hpp"

#include <teamsem/eval.hpp>
#include <teamsem/formula_gen.hpp>
#include <teamsem/parser.hpp>

#include <doctest.h>

using namespace teamsem;

namespace
{

Structure const m2 = Structure::uniform(2);

bool sat(Structure const & m, Team const & t, char const * f)
{
    return satisfies(EvalContext{m, t.domain()}, t, parse(f));
}

} // namespace

TEST_CASE("tarski examples")
{
    Structure const mr = test::mr();
    Assignment const x0{{{"x", 0}}};
    Assignment const x1{{{"x", 1}}};
    CHECK(tarski(EvalContext{m2, {"x"}}, x0, parse("x = x")));
    CHECK_FALSE(tarski(EvalContext{mr, {"x"}}, x1, parse("P(x)")));
    CHECK(tarski(EvalContext{mr, {"x"}}, x1, parse("exists y. P(y)")));
    // the tensor is classical disjunction at the level of one assignment
    CHECK(tarski(EvalContext{mr, {"x"}}, x1, parse("P(x) * !P(x)")));
    CHECK_THROWS_AS(tarski(EvalContext{m2, {"x"}}, x0, parse("C(x)")), FragmentError);
    CHECK_THROWS_AS(tarski(EvalContext{m2, {"x"}}, x0, parse("x = x \\/ x = x")), FragmentError);
}

TEST_CASE("satisfies examples")
{
    Team const both = test::team(m2, {"x"}, {{0}, {1}});
    CHECK(sat(m2, both, "x = 0 * x = 1"));
    CHECK_FALSE(sat(m2, both, "x = 0 \\/ x = 1"));

    Team const empty{make_space({"x"}, 2)};
    for (char const * f : {"x = 0", "!(x = x)", "C(x)", "x = 0 \\/ x = 1", "forall y. x = y", "exists y. !(y = y)",
                           "C(x) -> x = 0", "forall y \\ x . x = y"})
        CHECK_MESSAGE(sat(m2, empty, f), f);

    Team const diag = test::team(m2, {"x", "y"}, {{0, 0}, {1, 1}});
    CHECK(sat(m2, diag, "D(x ; y)"));
    Team const three = test::team(m2, {"x", "y"}, {{0, 0}, {1, 1}, {0, 1}});
    CHECK_FALSE(sat(m2, three, "D(x ; y)"));

    CHECK_FALSE(sat(m2, empty, "C(x) -* (x = 0)"));
}

TEST_CASE("element names resolve as constants; variables shadow them")
{
    Structure m{{"a", "b"}};
    Team const t = test::team(m, {"x"}, {{1}});
    CHECK(sat(m, t, "x = b"));
    CHECK_FALSE(sat(m, t, "x = a"));
    CHECK(sat(m, t, "forall a. a = a"));
    CHECK_THROWS_AS(sat(m, t, "x = q"), UnboundIdentifier);
    CHECK_THROWS_AS(sat(m, t, "Nope(x)"), UnboundIdentifier);
}

TEST_CASE("free variables must lie in the context")
{
    Team const t = test::team(m2, {"x"}, {{0}});
    CHECK_THROWS_AS(satisfies(EvalContext{m2, {"x"}}, t, parse("D(x ; y)")), DomainError);
    CHECK_THROWS_AS(satisfies(EvalContext{m2, {"x", "y"}}, t, parse("C(x)")), DomainError);
}

TEST_CASE("truth_value examples")
{
    CHECK(truth_value(m2, parse("forall x. x = x")) == TruthValue::true_value);
    CHECK(truth_value(m2, parse("forall x. !(x = x)")) == TruthValue::weak);
    CHECK(truth_value(m2, parse("(forall x. x = x) -* (forall x. !(x = x))")) == TruthValue::false_value);
    CHECK_THROWS_AS(truth_value(m2, parse("C(x)")), NotASentence);
    CHECK_THROWS_AS(truth_value(m2, parse("x = 0")), NotASentence);
    CHECK(truth_value(m2, parse("0 = 0")) == TruthValue::true_value);
}

TEST_CASE("open_vars reads element and constant names as constants")
{
    Structure m = Structure::uniform(2);
    m.add_constant("k", 1);
    CHECK(open_vars(parse("x = 0 /\\ x = 1"), m) == VarSet{"x"});
    CHECK(open_vars(parse("y = k * D(x ; y)"), m) == VarSet{"x", "y"});
    CHECK(open_vars(parse("forall k. k = 0"), m).empty());
    CHECK(open_vars(parse("z = z"), m) == VarSet{"z"});
}

TEST_CASE("bounds are enforced")
{
    Structure const m3 = Structure::uniform(3);
    Team const big = test::team(m3, {"x"}, {{0}, {1}, {2}});
    CHECK_THROWS_AS(satisfies(EvalContext{m3, {"x"}, Bounds{.max_functions = 8}}, big, parse("exists y. C(y)")),
                    BoundExceeded);
    CHECK(satisfies(EvalContext{m3, {"x"}, Bounds{.max_functions = 27}}, big, parse("exists y. C(y)")));
    CHECK_THROWS_AS(satisfies(EvalContext{m3, {"x"}, Bounds{.max_teams = 4}}, big, parse("C(x) -* C(x)")),
                    BoundExceeded);
}

TEST_CASE("satisfies agrees with the definitional oracle (sweep grammar, depth 2 and a depth-3 sample)")
{
    Structure m = test::mr();
    m.add_constant("c0", 0);
    FormulaSpace const space{sweep_config(), 3};
    std::vector<VarSet> const contexts = {{}, {"x"}, {"y"}, {"x", "y"}};
    std::uint64_t compared = 0;
    for (std::uint64_t i = 0; i < space.size(); i += (i < space.cumulative(2) ? 1 : 211))
    {
        Formula const f = space.at(i);
        VarSet const fv = free_vars(f);
        for (auto const & x : contexts)
        {
            if (!std::includes(x.begin(), x.end(), fv.begin(), fv.end()))
                continue;
            all_teams(x, m).for_each([&](Team const & t) {
                ++compared;
                bool const lib = satisfies(EvalContext{m, x}, t, f);
                bool const ref = oracle::sat(m, x, oracle::from_team(t), f);
                if (lib != ref)
                    FAIL_CHECK(print(f) << " on " << t.mask() << " over " << x.size() << " vars");
            });
        }
    }
    CHECK(compared > 10'000);
}

TEST_CASE("satisfies agrees with the oracle at |A| = 3")
{
    Structure m = Structure::uniform(3);
    m.add_relation("P", 1, {Tuple{0}, Tuple{2}});
    m.add_constant("c0", 1);
    FormulaSpace const space{sweep_config(), 2};
    Bounds const b{.max_functions = 1u << 15};
    for (std::uint64_t i = 0; i < space.size(); ++i)
    {
        Formula const f = space.at(i);
        VarSet const x{"x", "y"};
        // 512 teams; a stride keeps the oracle's wand, which ranges over all
        // of them, affordable
        for (TeamMask t = 0; t < 512; t += 31)
        {
            Team const team{make_space(x, 3), t};
            bool const lib = satisfies(EvalContext{m, x, b}, team, f);
            bool const ref = oracle::sat(m, x, oracle::from_team(team), f);
            if (lib != ref)
                FAIL_CHECK(print(f) << " on mask " << t);
        }
    }
}

TEST_CASE("flatness: FO-flat satisfaction is member-wise Tarski truth (depth 3, |A| = 2, |X| <= 2)")
{
    Structure m = test::mr();
    m.add_constant("c0", 0);
    FormulaSpace const space{fo_flat_config(), 3};
    std::vector<VarSet> const contexts = {{}, {"x"}, {"y"}, {"x", "y"}};
    for (std::uint64_t i = 0; i < space.size(); ++i)
    {
        Formula const f = space.at(i);
        VarSet const fv = free_vars(f);
        for (auto const & x : contexts)
        {
            if (!std::includes(x.begin(), x.end(), fv.begin(), fv.end()))
                continue;
            EvalContext const ctx{m, x};
            Evaluator ev{ctx, f};
            all_teams(x, m).for_each([&](Team const & t) {
                bool all = true;
                for (auto const & s : t.members())
                    all = all && tarski(ctx, s, f);
                if (ev.satisfies(t) != all)
                    FAIL_CHECK(print(f) << " on mask " << t.mask());
            });
        }
    }
}

TEST_CASE("guard coherence: guarded quantifiers equal their expansions")
{
    Structure m = test::mr();
    m.add_constant("c0", 0);
    FormulaSpace const space{sweep_config(), 3};
    std::uint64_t guarded = 0;
    for (std::uint64_t i = 0; i < space.size(); i += 5)
    {
        Formula const f = space.at(i);
        auto const * q = f.as<Quantified>();
        if (!q || !q->guarded)
            continue;
        ++guarded;
        Formula const g = expand_guard(*q);
        VarSet const fv = free_vars(f);
        for (VarSet const & x : {VarSet{"x"}, VarSet{"y"}, VarSet{"x", "y"}})
        {
            if (!std::includes(x.begin(), x.end(), fv.begin(), fv.end()))
                continue;
            all_teams(x, m).for_each([&](Team const & t) {
                if (satisfies(EvalContext{m, x}, t, f) != satisfies(EvalContext{m, x}, t, g))
                    FAIL_CHECK(print(f) << " on mask " << t.mask());
            });
        }
    }
    CHECK(guarded > 100);
}

TEST_CASE("dependence: agreement clause equals functional clause")
{
    for (std::size_t n : {2u, 3u})
    {
        Structure const m = Structure::uniform(n);
        VarSet const x = n == 2 ? VarSet{"x", "y", "z"} : VarSet{"x", "y"};
        std::vector<VarSet> ws;
        std::vector<Variable> const vs(x.begin(), x.end());
        for (std::size_t wm = 0; wm < (std::size_t{1} << vs.size()); ++wm)
        {
            VarSet w;
            for (std::size_t i = 0; i < vs.size(); ++i)
                if (wm >> i & 1)
                    w.insert(vs[i]);
            ws.push_back(w);
        }
        all_teams(x, m, 27).for_each([&](Team const & t) {
            for (auto const & w : ws)
                for (auto const & v : vs)
                    if (dep_holds(t, w, v) != dep_holds_functional(t, w, v))
                        FAIL_CHECK("mask " << t.mask() << " v " << v);
        });
    }
}

TEST_CASE("evaluator memo does not change verdicts across teams")
{
    Structure const m3 = Structure::uniform(3);
    Formula const f = parse("(C(x) -> C(y)) -> (C(y) -> C(x)) * D(x ; y)");
    EvalContext const ctx{m3, {"x", "y"}};
    Evaluator ev{ctx, f};
    for (TeamMask t = 0; t < 512; t += 3)
        CHECK(ev.satisfies(t) == satisfies(ctx, Team{make_space({"x", "y"}, 3), t}, f));
}
