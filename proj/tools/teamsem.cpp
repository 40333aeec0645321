// teamsem: command-line front end for evaluation, denotation, law suites and
// the full-abstraction construction.
//
// Exit codes: 0 pass, 1 semantic negative, 2 operational error, 3 no witness.

#include <teamsem/algebra.hpp>
#include <teamsem/eval.hpp>
#include <teamsem/io.hpp>
#include <teamsem/laws.hpp>
#include <teamsem/parser.hpp>

#include <CLI11.hpp>
#include <json.hpp>

#include <filesystem>
#include <iostream>
#include <optional>
#include <string>

namespace
{

using namespace teamsem;
using nlohmann::json;

enum Exit : int
{
    exit_pass = 0,
    exit_negative = 1,
    exit_error = 2,
    exit_no_witness = 3,
};

struct Config
{
    std::string structure_path;
    std::string team_path;
    std::string formula;
    std::string formula_file;
    Dialect dialect = Dialect::bid;
    std::uint64_t max_fn = Bounds{}.max_functions;
    std::uint64_t max_teams = Bounds{}.max_teams;
    std::uint64_t seed = SuiteOptions{}.seed;
    bool json = false;
    bool normal_form = false;
    bool unicode = false;
    bool serial = false;
    int depth = SuiteOptions{}.depth;
    std::uint64_t formula_cap = SuiteOptions{}.formula_cap;
    std::string suite;
    std::string phi;
    std::string psi;
    std::string out_dir;

    Bounds bounds() const { return {max_fn, max_teams}; }
};

/// The formula source currently being parsed, for caret diagnostics.
std::string current_source;

void add_formula_options(CLI::App & cmd, Config & cfg)
{
    cmd.add_option("-f,--formula", cfg.formula, "formula text");
    cmd.add_option("--formula-file", cfg.formula_file, "file holding the formula");
    cmd.add_option("--dialect", cfg.dialect, "how \\/ is read: bid (intuitionistic) or dependence (splitting)")
        ->transform(CLI::CheckedTransformer(std::map<std::string, Dialect>{{"bid", Dialect::bid},
                                                                            {"dependence", Dialect::dependence}}));
}

void add_bound_options(CLI::App & cmd, Config & cfg)
{
    cmd.add_option("--max-fn", cfg.max_fn, "bound on choice functions searched per quantifier")
        ->check(CLI::PositiveNumber);
    cmd.add_option("--max-teams", cfg.max_teams, "bound on teams enumerated per team space")
        ->check(CLI::PositiveNumber);
}

Formula parse_formula(std::string const & text, Dialect dialect)
{
    current_source = text;
    return parse(text, dialect);
}

Formula load_formula(Config const & cfg)
{
    if (!cfg.formula.empty())
    {
        if (!cfg.formula_file.empty())
            std::cerr << "warning: both --formula and --formula-file given; using --formula\n";
        return parse_formula(cfg.formula, cfg.dialect);
    }
    if (cfg.formula_file.empty())
        throw FormatError{"no formula given (use -f or --formula-file)"};
    std::string text = read_file(cfg.formula_file);
    while (!text.empty() && (text.back() == '\n' || text.back() == '\r'))
        text.pop_back();
    return parse_formula(text, cfg.dialect);
}

Structure load_structure(Config const & cfg)
{
    if (cfg.structure_path.empty())
        throw FormatError{"no structure given (use -s)"};
    return structure_from_json(read_file(cfg.structure_path));
}

std::optional<Structure> optional_structure(Config const & cfg)
{
    if (cfg.structure_path.empty())
        return std::nullopt;
    return load_structure(cfg);
}

int cmd_eval(Config const & cfg)
{
    Structure const m = load_structure(cfg);
    if (cfg.team_path.empty())
        throw FormatError{"no team given (use -t)"};
    Team const team = team_from_json(read_file(cfg.team_path), m);
    Formula const f = load_formula(cfg);
    bool const sat = satisfies(EvalContext{m, team.domain(), cfg.bounds()}, team, f);
    if (cfg.json)
        std::cout << json{{"formula", print(f)}, {"team_size", team.size()}, {"satisfied", sat}}.dump(2) << "\n";
    else
        std::cout << (sat ? "satisfied" : "not satisfied") << "\n";
    return sat ? exit_pass : exit_negative;
}

int cmd_denote(Config const & cfg)
{
    Structure const m = load_structure(cfg);
    Formula const f = load_formula(cfg);
    // the team file, when given, only fixes the variable set
    VarSet vars = open_vars(f, m);
    if (!cfg.team_path.empty())
        vars = team_from_json(read_file(cfg.team_path), m).domain();
    LowerSet const u = denote(m, vars, f, cfg.bounds());
    std::optional<TruthValue> value;
    if (vars.empty())
        value = truth_value(m, f, cfg.bounds());

    if (cfg.json)
    {
        json out = {{"formula", print(f)},
                    {"vars", std::vector<std::string>(vars.begin(), vars.end())},
                    {"members", u.member_count()},
                    {"maximal", json::parse(lowerset_to_json(u, m))},
                    {"truth_value", value ? json(std::string{to_string(*value)}) : json(nullptr)}};
        if (cfg.normal_form)
            out["normal_form"] = render(normal_form(u), m);
        std::cout << out.dump(2) << "\n";
        return exit_pass;
    }
    if (value)
        std::cout << "truth value: " << to_string(*value) << "\n";
    if (u.empty())
        std::cout << "∅\n";
    else
    {
        std::cout << "maximal teams (" << u.maximal().size() << "):\n";
        for (auto const & t : u.maximal_teams())
            std::cout << "  " << render(t, m) << "\n";
        std::cout << "members: " << u.member_count() << "\n";
    }
    if (cfg.normal_form)
        std::cout << "normal form: " << render(normal_form(u), m) << "\n";
    return exit_pass;
}

int cmd_laws(Config const & cfg)
{
    auto const & names = suite_names();
    if (std::find(names.begin(), names.end(), cfg.suite) == names.end())
    {
        std::cerr << "error: unknown suite '" << cfg.suite << "'; expected one of:";
        for (auto const & n : names)
            std::cerr << " " << n;
        std::cerr << "\n";
        return exit_error;
    }
    SuiteOptions opts;
    opts.exec = cfg.serial ? Execution::serial : Execution::parallel;
    opts.bounds = cfg.bounds();
    opts.depth = cfg.depth;
    opts.formula_cap = cfg.formula_cap;
    opts.seed = cfg.seed;
    opts.structure = optional_structure(cfg);
    auto const reports = run_suite(cfg.suite, opts);
    bool const ok = std::all_of(reports.begin(), reports.end(), [](Report const & r) { return r.passed(); });
    if (cfg.json)
        std::cout << report_to_json(reports);
    else
        std::cout << "seed: " << cfg.seed << "\n" << render_table(reports);
    return ok ? exit_pass : exit_negative;
}

int cmd_fullabs(Config const & cfg)
{
    Structure const m = cfg.structure_path.empty() ? Structure::uniform(2) : load_structure(cfg);
    Formula const phi = parse_formula(cfg.phi, cfg.dialect);
    Formula const psi = parse_formula(cfg.psi, cfg.dialect);
    FullAbstraction const fa = full_abstraction_witness(m, phi, psi, cfg.bounds());

    if (!cfg.out_dir.empty())
    {
        std::filesystem::path const dir{cfg.out_dir};
        std::filesystem::create_directories(dir);
        write_file(dir / "structure.json", structure_to_json(fa.structure));
        write_file(dir / "witness.json", team_to_json(fa.witness, m));
        write_file(dir / "context_phi.txt", print(fa.context_phi) + "\n");
        write_file(dir / "context_psi.txt", print(fa.context_psi) + "\n");
    }
    if (cfg.json)
        std::cout << json{{"relation", fa.relation},
                          {"witness", json::parse(team_to_json(fa.witness, m))},
                          {"context_phi", print(fa.context_phi)},
                          {"context_psi", print(fa.context_psi)},
                          {"phi_value", std::string{to_string(fa.phi_value)}},
                          {"psi_value", std::string{to_string(fa.psi_value)}},
                          {"separated", fa.separated()}}
                         .dump(2)
                  << "\n";
    else
        std::cout << "witness: " << render(fa.witness, m) << "\n"
                  << "relation: " << fa.relation << "\n"
                  << "C[phi]: " << print(fa.context_phi) << "  => " << to_string(fa.phi_value) << "\n"
                  << "C[psi]: " << print(fa.context_psi) << "  => " << to_string(fa.psi_value) << "\n"
                  << (fa.separated() ? "separated" : "not separated") << "\n";
    return fa.separated() ? exit_pass : exit_negative;
}

int cmd_parse(Config const & cfg)
{
    Formula const f = load_formula(cfg);
    if (cfg.json)
        std::cout << json{{"formula", print(f, {cfg.unicode})}, {"fragment", std::string{to_string(classify(f))}},
                          {"depth", depth(f)}}
                         .dump(2)
                  << "\n";
    else
        std::cout << print(f, {cfg.unicode}) << "\n"
                  << "fragment: " << to_string(classify(f)) << "\n";
    return exit_pass;
}

} // namespace

int main(int argc, char ** argv)
{
    Config cfg;
    CLI::App app{"Team-semantics laboratory for BID logic"};
    app.require_subcommand(1);

    auto * eval = app.add_subcommand("eval", "decide T |= f");
    eval->add_option("-s,--structure", cfg.structure_path, "structure JSON file")->required();
    eval->add_option("-t,--team", cfg.team_path, "team JSON file")->required();
    add_formula_options(*eval, cfg);
    add_bound_options(*eval, cfg);
    eval->add_flag("--json", cfg.json, "JSON output");

    auto * den = app.add_subcommand("denote", "print the lower set of teams satisfying f");
    den->add_option("-s,--structure", cfg.structure_path, "structure JSON file")->required();
    den->add_option("-t,--team", cfg.team_path, "team JSON file; its domain is used as the variable set");
    add_formula_options(*den, cfg);
    add_bound_options(*den, cfg);
    den->add_flag("--normal-form", cfg.normal_form, "also print the join-of-tensors normal form");
    den->add_flag("--json", cfg.json, "JSON output");

    auto * laws = app.add_subcommand("laws", "run a law suite");
    laws->add_option("suite", cfg.suite, "suite name")->required();
    laws->add_option("-s,--structure", cfg.structure_path, "run structure-dependent suites on this structure only");
    add_bound_options(*laws, cfg);
    laws->add_option("--seed", cfg.seed, "seed for sampled sweeps");
    laws->add_option("--depth", cfg.depth, "formula depth of the proposition sweep")->check(CLI::Range(1, 6));
    laws->add_option("--formula-cap", cfg.formula_cap, "sample the sweep beyond this many formulas")
        ->check(CLI::PositiveNumber);
    laws->add_flag("--serial", cfg.serial, "run the serial reference path");
    laws->add_flag("--json", cfg.json, "JSON report");

    auto * fab = app.add_subcommand("fullabs", "build a context separating PHI from PSI");
    fab->add_option("phi", cfg.phi, "formula PHI")->required();
    fab->add_option("psi", cfg.psi, "formula PSI")->required();
    fab->add_option("-s,--structure", cfg.structure_path, "structure JSON file (default: two elements)");
    fab->add_option("--dialect", cfg.dialect, "how \\/ is read")
        ->transform(CLI::CheckedTransformer(std::map<std::string, Dialect>{{"bid", Dialect::bid},
                                                                            {"dependence", Dialect::dependence}}));
    add_bound_options(*fab, cfg);
    fab->add_option("-o,--out-dir", cfg.out_dir, "write structure, witness and context files here");
    fab->add_flag("--json", cfg.json, "JSON output");

    auto * par = app.add_subcommand("parse", "syntax check; prints the formula and its fragment");
    add_formula_options(*par, cfg);
    par->add_flag("--unicode", cfg.unicode, "print with logical symbols");
    par->add_flag("--json", cfg.json, "JSON output");

    try
    {
        app.parse(argc, argv);
    }
    catch (CLI::ParseError const & e)
    {
        int const code = app.exit(e);
        return code == 0 ? exit_pass : exit_error;
    }

    try
    {
        if (*eval)
            return cmd_eval(cfg);
        if (*den)
            return cmd_denote(cfg);
        if (*laws)
            return cmd_laws(cfg);
        if (*fab)
            return cmd_fullabs(cfg);
        return cmd_parse(cfg);
    }
    catch (ParseError const & e)
    {
        std::cerr << render_error(current_source, e) << '\n';
        return exit_error;
    }
    catch (NoWitness const & e)
    {
        std::cerr << "no witness: " << e.what() << "\n";
        return exit_no_witness;
    }
    catch (std::exception const & e)
    {
        std::cerr << "error: " << e.what() << "\n";
        return exit_error;
    }
}
