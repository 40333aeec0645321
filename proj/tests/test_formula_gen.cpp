#include <teamsem/formula_gen.hpp>
#include <teamsem/parser.hpp>

#include <doctest.h>

#include <set>

using namespace teamsem;

TEST_CASE("sweep grammar layer sizes")
{
    FormulaSpace const s{sweep_config(), 3};
    CHECK(s.cumulative(0) == 0);
    CHECK(s.cumulative(1) == 5);
    // 5 atoms, 5 connectives over 5 x 5 operands, 8 quantifier forms over 5 bodies
    CHECK(s.cumulative(2) == 5 + 5 * 25 + 8 * 5);
    // at depth 3 at least one operand has depth exactly 2
    CHECK(s.cumulative(3) == 170 + 5 * (170 * 170 - 5 * 5) + 8 * 165);
    CHECK(s.size() == 145'865);
    CHECK(s.lower().size() == 170);
}

TEST_CASE("enumeration is depth ordered and duplicate free")
{
    FormulaSpace const s{sweep_config(), 3};
    std::set<std::string> seen;
    for (std::uint64_t i = 0; i < s.size(); ++i)
    {
        Formula const f = s.at(i);
        int const expected = i < s.cumulative(1) ? 1 : i < s.cumulative(2) ? 2 : 3;
        REQUIRE(depth(f) == expected);
        REQUIRE(seen.insert(print(f)).second);
    }
    for (std::size_t i = 0; i < s.lower().size(); ++i)
        CHECK(s.lower()[i] == s.at(i));
    CHECK_THROWS(s.at(s.size()));
}

TEST_CASE("the atom pool")
{
    FormulaSpace const s{sweep_config(), 1};
    std::set<std::string> atoms;
    for (std::uint64_t i = 0; i < s.size(); ++i)
        atoms.insert(print(s.at(i)));
    CHECK(atoms == std::set<std::string>{"P(x)", "x = y", "x = c0", "D(x ; y)", "C(x)"});
}

TEST_CASE("generate: exhaustive under the cap, seeded sample above it")
{
    FormulaSpace const s{sweep_config(), 2};
    FormulaSample const all = generate(s, 1000, 1);
    CHECK(all.exhaustive);
    CHECK(all.formulas.size() == 170);
    CHECK(all.population == 170);

    FormulaSample const a = generate(s, 50, 9);
    FormulaSample const b = generate(s, 50, 9);
    FormulaSample const c = generate(s, 50, 10);
    CHECK_FALSE(a.exhaustive);
    CHECK(a.seed == std::uint64_t{9});
    CHECK(a.formulas.size() == 50);
    CHECK(a.population == 170);
    std::vector<std::string> pa, pb, pc;
    for (auto const & f : a.formulas)
        pa.push_back(print(f));
    for (auto const & f : b.formulas)
        pb.push_back(print(f));
    for (auto const & f : c.formulas)
        pc.push_back(print(f));
    CHECK(pa == pb);
    CHECK(pa != pc);
    CHECK(std::set<std::string>(pa.begin(), pa.end()).size() == 50);
}

TEST_CASE("oversized spaces are refused")
{
    CHECK_THROWS_AS(FormulaSpace(sweep_config(), 6), BoundExceeded);
    CHECK_NOTHROW(FormulaSpace(sweep_config(), 4));
}

TEST_CASE("fo_flat grammar stays in its fragment")
{
    FormulaSpace const s{fo_flat_config(), 3};
    for (std::uint64_t i = 0; i < s.size(); i += 11)
        REQUIRE(classify(s.at(i)) == Fragment::fo_flat);
}

TEST_CASE("full syntax covers every construct")
{
    FormulaSpace const s{full_syntax_config(), 2};
    bool dep = false, guarded = false, wand = false, negated = false;
    for (std::uint64_t i = 0; i < s.size(); ++i)
    {
        Formula const f = s.at(i);
        std::string const p = print(f);
        dep = dep || p.find("D(") != std::string::npos;
        guarded = guarded || p.find('\\') != std::string::npos;
        wand = wand || p.find("-*") != std::string::npos;
        negated = negated || p.find('!') != std::string::npos;
    }
    CHECK((dep && guarded && wand && negated));
}
