#include <teamsem/io.hpp>

#include <json.hpp>

#include <fstream>
#include <set>
#include <sstream>

namespace teamsem
{

using nlohmann::json;

namespace
{

json parse_json(std::string const & text, char const * what)
{
    try
    {
        return json::parse(text);
    }
    catch (json::parse_error const & e)
    {
        throw FormatError{std::string{what} + ": " + e.what()};
    }
}

void only_keys(json const & obj, std::string const & where, std::initializer_list<char const *> allowed)
{
    if (!obj.is_object())
        throw FormatError{where + ": expected an object"};
    for (auto const & [key, value] : obj.items())
        if (std::none_of(allowed.begin(), allowed.end(), [&](char const * a) { return key == a; }))
            throw FormatError{where + ": unknown key '" + key + "'"};
}

json const & required(json const & obj, std::string const & where, char const * key)
{
    auto const it = obj.find(key);
    if (it == obj.end())
        throw FormatError{where + ": missing key '" + key + "'"};
    return *it;
}

std::string string_at(json const & j, std::string const & where)
{
    if (!j.is_string())
        throw FormatError{where + ": expected a string"};
    return j.get<std::string>();
}

json const & array_at(json const & j, std::string const & where)
{
    if (!j.is_array())
        throw FormatError{where + ": expected an array"};
    return j;
}

std::uint64_t uint_at(json const & j, std::string const & where)
{
    if (!j.is_number_unsigned())
        throw FormatError{where + ": expected a non-negative integer"};
    return j.get<std::uint64_t>();
}

json structure_doc(Structure const & m)
{
    json relations = json::object();
    for (auto const & [name, r] : m.relations())
    {
        json tuples = json::array();
        for (auto const & t : r.tuples)
        {
            json row = json::array();
            for (auto e : t)
                row.push_back(m.element_name(e));
            tuples.push_back(std::move(row));
        }
        relations[name] = {{"arity", r.arity}, {"tuples", std::move(tuples)}};
    }
    json constants = json::object();
    for (auto const & [name, e] : m.constants())
        constants[name] = m.element_name(e);
    return {{"universe", m.universe()}, {"relations", std::move(relations)}, {"constants", std::move(constants)}};
}

Structure structure_of(json const & doc)
{
    only_keys(doc, "structure", {"universe", "relations", "constants"});
    std::vector<std::string> universe;
    std::set<std::string> seen;
    for (auto const & e : array_at(required(doc, "structure", "universe"), "structure.universe"))
    {
        universe.push_back(string_at(e, "structure.universe"));
        if (!seen.insert(universe.back()).second)
            throw FormatError{"structure.universe: duplicate element '" + universe.back() + "'"};
    }
    if (universe.empty())
        throw FormatError{"structure.universe: the universe must be non-empty"};
    Structure m{std::move(universe)};

    if (auto it = doc.find("relations"); it != doc.end())
    {
        if (!it->is_object())
            throw FormatError{"structure.relations: expected an object"};
        for (auto const & [name, rel] : it->items())
        {
            std::string const where = "structure.relations." + name;
            only_keys(rel, where, {"arity", "tuples"});
            std::size_t const arity = uint_at(required(rel, where, "arity"), where + ".arity");
            std::set<Tuple> tuples;
            for (auto const & row : array_at(required(rel, where, "tuples"), where + ".tuples"))
            {
                array_at(row, where + ".tuples");
                if (row.size() != arity)
                    throw FormatError{where + ": tuple of length " + std::to_string(row.size()) + ", arity is "
                                      + std::to_string(arity)};
                Tuple t;
                for (auto const & e : row)
                    t.push_back(m.element_or_throw(string_at(e, where + ".tuples")));
                tuples.insert(std::move(t));
            }
            m.add_relation(name, arity, std::move(tuples));
        }
    }
    if (auto it = doc.find("constants"); it != doc.end())
    {
        if (!it->is_object())
            throw FormatError{"structure.constants: expected an object"};
        for (auto const & [name, value] : it->items())
            m.add_constant(name, m.element_or_throw(string_at(value, "structure.constants." + name)));
    }
    return m;
}

json team_doc(Team const & t, Structure const & m)
{
    json members = json::array();
    for (auto const & a : t.members())
    {
        json row = json::object();
        for (std::size_t i = 0; i < a.vars().size(); ++i)
            row[a.vars()[i]] = m.element_name(a.values()[i]);
        members.push_back(std::move(row));
    }
    return {{"domain", t.space()->vars()}, {"members", std::move(members)}};
}

Team team_of(json const & doc, Structure const & m)
{
    only_keys(doc, "team", {"domain", "members"});
    VarSet domain;
    for (auto const & v : array_at(required(doc, "team", "domain"), "team.domain"))
        if (!domain.insert(string_at(v, "team.domain")).second)
            throw FormatError{"team.domain: duplicate variable '" + v.get<std::string>() + "'"};
    SpacePtr space;
    try
    {
        space = make_space(domain, m.size());
    }
    catch (BoundExceeded const & e)
    {
        throw FormatError{std::string{"team.domain: "} + e.what()};
    }
    std::vector<Assignment> members;
    for (auto const & row : array_at(required(doc, "team", "members"), "team.members"))
    {
        if (!row.is_object())
            throw FormatError{"team.members: expected an object per member"};
        std::map<Variable, Element> binding;
        for (auto const & [v, e] : row.items())
        {
            if (!domain.contains(v))
                throw FormatError{"team.members: variable '" + v + "' is not in the domain"};
            binding[v] = m.element_or_throw(string_at(e, "team.members." + v));
        }
        if (binding.size() != domain.size())
            throw FormatError{"team.members: every member must assign every domain variable"};
        members.emplace_back(binding);
    }
    return Team{space, members};
}

json law_doc(LawResult const & l)
{
    json out = {{"name", l.name},
                {"statement", l.statement},
                {"verdict", std::string{to_string(l.verdict)}},
                {"checked", l.checked},
                {"detail", l.detail},
                {"counterexample", nullptr}};
    if (l.counterexample)
    {
        auto const & c = *l.counterexample;
        json ce = {{"formula", c.formula},
                   {"structure", nullptr},
                   {"team", nullptr},
                   {"satisfied", c.satisfied},
                   {"note", c.note}};
        if (c.structure)
            ce["structure"] = structure_doc(*c.structure);
        if (c.team && c.structure)
            ce["team"] = team_doc(*c.team, *c.structure);
        out["counterexample"] = std::move(ce);
    }
    return out;
}

Verdict verdict_of(std::string const & s)
{
    if (s == "PASS")
        return Verdict::pass;
    if (s == "FAIL")
        return Verdict::fail;
    if (s == "INFO")
        return Verdict::info;
    throw FormatError{"report: unknown verdict '" + s + "'"};
}

LawResult law_of(json const & doc)
{
    only_keys(doc, "law", {"name", "statement", "verdict", "checked", "detail", "counterexample"});
    LawResult l;
    l.name = string_at(required(doc, "law", "name"), "law.name");
    l.statement = string_at(required(doc, "law", "statement"), "law.statement");
    l.verdict = verdict_of(string_at(required(doc, "law", "verdict"), "law.verdict"));
    l.checked = uint_at(required(doc, "law", "checked"), "law.checked");
    l.detail = string_at(required(doc, "law", "detail"), "law.detail");
    json const & ce = required(doc, "law", "counterexample");
    if (!ce.is_null())
    {
        only_keys(ce, "counterexample", {"formula", "structure", "team", "satisfied", "note"});
        Counterexample c;
        c.formula = string_at(required(ce, "counterexample", "formula"), "counterexample.formula");
        if (auto const & s = required(ce, "counterexample", "structure"); !s.is_null())
            c.structure = structure_of(s);
        if (auto const & t = required(ce, "counterexample", "team"); !t.is_null())
        {
            if (!c.structure)
                throw FormatError{"counterexample.team: a team needs a structure"};
            c.team = team_of(t, *c.structure);
        }
        auto const & sat = required(ce, "counterexample", "satisfied");
        if (!sat.is_boolean())
            throw FormatError{"counterexample.satisfied: expected a boolean"};
        c.satisfied = sat.get<bool>();
        c.note = string_at(required(ce, "counterexample", "note"), "counterexample.note");
        l.counterexample = std::move(c);
    }
    return l;
}

} // namespace

Structure structure_from_json(std::string const & text)
{
    return structure_of(parse_json(text, "structure"));
}

std::string structure_to_json(Structure const & m)
{
    return structure_doc(m).dump(2) + "\n";
}

Team team_from_json(std::string const & text, Structure const & m)
{
    return team_of(parse_json(text, "team"), m);
}

std::string team_to_json(Team const & t, Structure const & m)
{
    return team_doc(t, m).dump(2) + "\n";
}

std::string lowerset_to_json(LowerSet const & u, Structure const & m)
{
    json out = json::array();
    for (auto const & t : u.maximal_teams())
        out.push_back(team_doc(t, m));
    return out.dump(2) + "\n";
}

LowerSet lowerset_from_json(std::string const & text, Structure const & m, VarSet const & domain)
{
    json const doc = parse_json(text, "lower set");
    SpacePtr const space = make_space(domain, m.size());
    std::vector<Team> teams;
    for (auto const & t : array_at(doc, "lower set"))
    {
        teams.push_back(team_of(t, m));
        if (!(*teams.back().space() == *space))
            throw FormatError{"lower set: team domain differs from " + std::to_string(domain.size()) + "-variable domain"};
    }
    return down(space, teams);
}

std::string report_to_json(std::vector<Report> const & reports)
{
    json out = json::array();
    for (auto const & r : reports)
    {
        json laws = json::array();
        for (auto const & l : r.laws)
            laws.push_back(law_doc(l));
        out.push_back({{"suite", r.suite},
                       {"scale", r.scale},
                       {"seed", r.seed ? json(*r.seed) : json(nullptr)},
                       {"execution", r.execution},
                       {"elapsed_ms", r.elapsed_ms},
                       {"passed", r.passed()},
                       {"laws", std::move(laws)}});
    }
    return json{{"reports", std::move(out)}}.dump(2) + "\n";
}

std::vector<Report> reports_from_json(std::string const & text)
{
    json const doc = parse_json(text, "report");
    only_keys(doc, "report", {"reports"});
    std::vector<Report> out;
    for (auto const & rd : array_at(required(doc, "report", "reports"), "reports"))
    {
        only_keys(rd, "report", {"suite", "scale", "seed", "execution", "elapsed_ms", "passed", "laws"});
        Report r;
        r.suite = string_at(required(rd, "report", "suite"), "report.suite");
        json const & scale = required(rd, "report", "scale");
        if (!scale.is_object())
            throw FormatError{"report.scale: expected an object"};
        for (auto const & [k, v] : scale.items())
            r.scale[k] = string_at(v, "report.scale." + k);
        if (auto const & s = required(rd, "report", "seed"); !s.is_null())
            r.seed = uint_at(s, "report.seed");
        r.execution = string_at(required(rd, "report", "execution"), "report.execution");
        auto const & ms = required(rd, "report", "elapsed_ms");
        if (!ms.is_number())
            throw FormatError{"report.elapsed_ms: expected a number"};
        r.elapsed_ms = ms.get<double>();
        for (auto const & l : array_at(required(rd, "report", "laws"), "report.laws"))
            r.laws.push_back(law_of(l));
        auto const & passed = required(rd, "report", "passed");
        if (!passed.is_boolean() || passed.get<bool>() != r.passed())
            throw FormatError{"report.passed: inconsistent with the law verdicts"};
        out.push_back(std::move(r));
    }
    return out;
}

std::string read_file(std::filesystem::path const & path)
{
    std::ifstream in{path, std::ios::binary};
    if (!in)
        throw FormatError{"cannot read '" + path.string() + "'"};
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

void write_file(std::filesystem::path const & path, std::string const & text)
{
    std::ofstream out{path, std::ios::binary};
    if (!out || !(out << text))
        throw FormatError{"cannot write '" + path.string() + "'"};
}

} // namespace teamsem
