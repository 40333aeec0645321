#include "helpers.hpp"

#include <teamsem/io.hpp>
#include <teamsem/parser.hpp>

#include <doctest.h>

#include <filesystem>

using namespace teamsem;

namespace
{

Structure named()
{
    Structure m{{"a", "b", "c"}};
    m.add_relation("R", 2, {Tuple{0, 1}, Tuple{2, 2}});
    m.add_relation("Q", 0, {Tuple{}});
    m.add_constant("k", 1);
    return m;
}

} // namespace

TEST_CASE("structure round trip")
{
    Structure const m = named();
    CHECK(structure_from_json(structure_to_json(m)) == m);
    CHECK(structure_from_json(structure_to_json(Structure::uniform(4))) == Structure::uniform(4));
}

TEST_CASE("structure documents")
{
    Structure const m = structure_from_json(R"({"universe": ["0", "1"],
        "relations": {"P": {"arity": 1, "tuples": [["0"]]}}, "constants": {"c0": "0"}})");
    CHECK(m.size() == 2);
    CHECK(m.relation("P")->tuples == std::set<Tuple>{{0}});
    CHECK(m.constant("c0") == Element{0});
    CHECK(structure_from_json(R"({"universe": ["x"]})").size() == 1);

    for (char const * bad : {
             R"({"universe": []})",
             R"({"universe": ["a", "a"]})",
             R"({"relations": {}})",
             R"({"universe": ["a"], "extra": 1})",
             R"({"universe": ["a"], "relations": {"P": {"arity": 2, "tuples": [["a"]]}}})",
             R"({"universe": ["a"], "relations": {"P": {"arity": 1, "tuples": [["b"]]}}})",
             R"({"universe": ["a"], "relations": {"P": {"arity": 1, "tuples": [], "size": 0}}})",
             R"({"universe": ["a"], "relations": {"P": {"arity": -1, "tuples": []}}})",
             R"({"universe": ["a"], "constants": {"k": "z"}})",
             R"({"universe": ["a"], "constants": {"k": 0}})",
             R"([1, 2])",
             R"({"universe": ["a"])",
         })
        CHECK_THROWS_AS_MESSAGE(structure_from_json(bad), FormatError, bad);
}

TEST_CASE("unknown keys are reported with their path")
{
    try
    {
        structure_from_json(R"({"universe": ["a"], "relations": {"P": {"arity": 1, "tuples": [], "size": 0}}})");
        FAIL("accepted an unknown key");
    }
    catch (FormatError const & e)
    {
        std::string const what = e.what();
        CHECK(what.find("structure.relations.P") != std::string::npos);
        CHECK(what.find("size") != std::string::npos);
    }
}

TEST_CASE("team round trip")
{
    Structure const m = named();
    auto const s = make_space({"x", "y"}, 3);
    for (TeamMask t : {TeamMask{0}, TeamMask{1}, TeamMask{0b101000011}, s->full_mask()})
    {
        Team const team{s, t};
        CHECK(team_from_json(team_to_json(team, m), m) == team);
    }
    Team const none{make_space({}, 3), 1};
    CHECK(team_from_json(team_to_json(none, m), m) == none);
}

TEST_CASE("team documents")
{
    Structure const m = Structure::uniform(2);
    Team const t = team_from_json(R"({"domain": ["y", "x"], "members": [{"x": "0", "y": "0"}, {"x": "1", "y": "1"}]})", m);
    CHECK(t == test::team(m, {"x", "y"}, {{0, 0}, {1, 1}}));

    for (char const * bad : {
             R"({"domain": ["x"], "members": [{"x": "2"}]})",
             R"({"domain": ["x"], "members": [{"y": "0"}]})",
             R"({"domain": ["x", "y"], "members": [{"x": "0"}]})",
             R"({"domain": ["x", "x"], "members": []})",
             R"({"domain": ["x"], "members": [["0"]]})",
             R"({"domain": ["x"], "members": [], "size": 0})",
             R"({"members": []})",
             R"({"domain": ["a", "b", "c", "d", "e", "f", "g"], "members": []})",
         })
        CHECK_THROWS_AS_MESSAGE(team_from_json(bad, m), FormatError, bad);
}

TEST_CASE("lower set round trip")
{
    Structure const m = Structure::uniform(2);
    VarSet const x{"x", "y"};
    for (char const * f : {"D(x ; y)", "C(x) * C(y)", "x = y", "!(x = x)"})
    {
        LowerSet const u = denote(m, x, parse(f));
        CHECK(lowerset_from_json(lowerset_to_json(u, m), m, x) == u);
    }
    CHECK(lowerset_to_json(LowerSet::bottom(make_space(x, 2)), m).find("[]") != std::string::npos);
    CHECK_THROWS_AS(lowerset_from_json(R"([{"domain": ["x"], "members": []}])", m, x), FormatError);
    CHECK_THROWS_AS(lowerset_from_json(R"({"teams": []})", m, x), FormatError);
}

TEST_CASE("report round trip")
{
    Report r;
    r.suite = "demo";
    r.scale["|A|"] = "2";
    r.seed = 17;
    r.execution = "serial";
    r.elapsed_ms = 1.5;
    LawResult ok;
    ok.name = "holds";
    ok.statement = "x = x";
    ok.checked = 4;
    r.laws.push_back(ok);
    LawResult bad;
    bad.name = "fails";
    bad.verdict = Verdict::fail;
    bad.detail = "see counterexample";
    Counterexample c;
    c.formula = "C(x)";
    c.structure = Structure::uniform(2);
    c.team = test::team(*c.structure, {"x"}, {{0}, {1}});
    c.satisfied = false;
    c.note = "synthetic";
    bad.counterexample = c;
    r.laws.push_back(bad);

    Report q;
    q.suite = "other";
    LawResult info;
    info.name = "reported";
    info.verdict = Verdict::info;
    Counterexample note;
    note.note = "algebraic witness";
    info.counterexample = note;
    q.laws.push_back(info);

    auto const back = reports_from_json(report_to_json({r, q}));
    REQUIRE(back.size() == 2);
    CHECK(back[0].suite == "demo");
    CHECK(back[0].scale == r.scale);
    CHECK(back[0].seed == std::uint64_t{17});
    CHECK(back[0].execution == "serial");
    CHECK(back[0].elapsed_ms == doctest::Approx(1.5));
    REQUIRE(back[0].laws.size() == 2);
    CHECK(back[0].laws[0].checked == 4);
    CHECK(back[0].laws[0].statement == "x = x");
    auto const & ce = back[0].laws[1].counterexample;
    REQUIRE(ce.has_value());
    CHECK(ce->formula == "C(x)");
    CHECK(ce->structure == c.structure);
    CHECK(ce->team == c.team);
    CHECK(replay(*ce) == true);
    CHECK_FALSE(back[1].seed.has_value());
    CHECK(back[1].laws[0].verdict == Verdict::info);
    CHECK(back[1].laws[0].counterexample->note == "algebraic witness");
    CHECK_FALSE(back[1].laws[0].counterexample->structure.has_value());

    // the JSON of a real suite round trips too
    SuiteOptions o;
    auto const real = run_suite("representation", o);
    CHECK(report_to_json(reports_from_json(report_to_json(real))) == report_to_json(real));
}

TEST_CASE("report documents are validated")
{
    CHECK_THROWS_AS(reports_from_json(R"({"reports": [], "x": 1})"), FormatError);
    CHECK_THROWS_AS(reports_from_json(R"({"reports": [{"suite": "s", "scale": {}, "seed": null, "execution": "serial",
        "elapsed_ms": 0, "passed": true, "laws": [{"name": "n", "statement": "", "verdict": "MAYBE", "checked": 0,
        "detail": "", "counterexample": null}]}]})"),
                    FormatError);
    // `passed` must agree with the verdicts
    CHECK_THROWS_AS(reports_from_json(R"({"reports": [{"suite": "s", "scale": {}, "seed": null, "execution": "serial",
        "elapsed_ms": 0, "passed": true, "laws": [{"name": "n", "statement": "", "verdict": "FAIL", "checked": 0,
        "detail": "", "counterexample": null}]}]})"),
                    FormatError);
}

TEST_CASE("file helpers")
{
    auto const dir = std::filesystem::temp_directory_path() / "teamsem_io_test";
    std::filesystem::create_directories(dir);
    write_file(dir / "s.json", structure_to_json(named()));
    CHECK(structure_from_json(read_file(dir / "s.json")) == named());
    CHECK_THROWS_AS(read_file(dir / "missing.json"), FormatError);
    CHECK_THROWS_AS(write_file(dir / "no" / "such" / "dir.json", "x"), FormatError);
    std::filesystem::remove_all(dir);
}
