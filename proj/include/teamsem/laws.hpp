#pragma once

#include <teamsem/algebra.hpp>
#include <teamsem/ast.hpp>
#include <teamsem/eval.hpp>
#include <teamsem/model.hpp>
#include <teamsem/parallel.hpp>

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace teamsem
{

enum class Verdict : std::uint8_t
{
    pass,
    fail,
    info // reported, not asserted
};

std::string_view to_string(Verdict v) noexcept;

/// A formula, a structure and a team, with the satisfaction verdict that
/// was observed for them. Algebraic laws without a formula carry only `note`.
struct Counterexample
{
    std::string formula; // parseable; empty for purely algebraic witnesses
    std::optional<Structure> structure;
    std::optional<Team> team;
    bool satisfied = false;
    std::string note;
};

/// Re-evaluates a counterexample with `satisfies`. Returns whether the
/// recorded verdict is reproduced, or nullopt when there is nothing to replay.
std::optional<bool> replay(Counterexample const & c);

struct LawResult
{
    std::string name;
    std::string statement;
    Verdict verdict = Verdict::pass;
    std::uint64_t checked = 0;
    std::string detail;
    std::optional<Counterexample> counterexample;
};

struct Report
{
    std::string suite;
    std::map<std::string, std::string> scale;
    std::vector<LawResult> laws;
    std::optional<std::uint64_t> seed;
    std::string execution = "parallel";
    double elapsed_ms = 0;

    /// Every asserted law passed.
    bool passed() const;
};

/// Plain-text table of one or more reports.
std::string render_table(std::vector<Report> const & reports);

struct SuiteOptions
{
    Execution exec = Execution::parallel;
    Bounds bounds;
    int depth = 3;
    std::uint64_t formula_cap = 1'000'000;
    std::uint64_t seed = 20'260'101;
    std::uint64_t armstrong_samples = 4096;
    /// When set, structure-dependent suites run on this structure only
    /// instead of their default scales.
    std::optional<Structure> structure;
};

/// The sweep structure: `m` with a unary P = {first element} and constant c0 =
/// first element added where missing (M2 when `m` is absent).
Structure sweep_structure(std::optional<Structure> const & m);

/// Generates every formula of the sweep grammar up to `opts.depth` (seeded
/// sample beyond `opts.formula_cap`) and evaluates each on every team of
/// every context X with free_vars <= X <= {x, y}. Laws: downward closure,
/// empty-team property on BID-, a wand formula failing it, trivalence of
/// sentences with all three values exhibited, and agreement of `denote`
/// with `satisfies`.
Report proposition_sweep(Structure const & m, SuiteOptions const & opts);

/// D(W;v) against (/\ C(w)) -> C(v) over every team on X.
Report d_from_c_check(Structure const & m, VarSet const & vars, VarSet const & w, Variable const & v,
                      SuiteOptions const & opts);

/// The five axioms as team formulas over {x, y, z}: every team when there are
/// at most 2^16 of them, otherwise `opts.armstrong_samples` seeded teams.
Report armstrong_check(Structure const & m, SuiteOptions const & opts);

/// I, C, W, K (as generalized), B and the standard K with p, q, r = C(x),
/// C(y), C(z), plus Peirce's law reported without an expected verdict, and
/// per-team agreement with the corresponding Armstrong formulas.
Report implicational_check(Structure const & m, SuiteOptions const & opts);

/// C(v) against the additive disjunction of v = c over element constants
/// (added as c<i> where missing), and truth of forall v. (v = c0 * ... ).
Report diagram_check(Structure const & m, Variable const & v, SuiteOptions const & opts);

struct FullAbstraction
{
    Structure structure;  // the input extended with the fresh relation
    std::string relation; // its name
    std::vector<Variable> vars;
    Team witness;
    Formula context_phi;
    Formula context_psi;
    TruthValue phi_value = TruthValue::false_value;
    TruthValue psi_value = TruthValue::false_value;

    /// Both truth values were computed and C[phi] is TRUE while C[psi] is not.
    bool separated() const
    {
        return phi_value == TruthValue::true_value && psi_value != TruthValue::true_value;
    }
};

/// Picks the least team in denote(phi) \ denote(psi) (by size, then by its
/// sorted tuple list), interprets a fresh relation R by rel(T), and evaluates
/// forall v1 ... forall vn. (R(v1, ..., vn) -> [.]) around both formulas.
/// Throws NoWitness when denote(phi) <= denote(psi).
FullAbstraction full_abstraction_witness(Structure const & m, Formula const & phi, Formula const & psi,
                                         Bounds const & bounds = {});

/// Suite names accepted by `run_suite`, in the order `all` runs them.
std::vector<std::string> const & suite_names();

/// Runs a named suite; `all` runs every suite and the sweep only once.
/// Throws DomainError for an unknown name.
std::vector<Report> run_suite(std::string const & name, SuiteOptions const & opts);

} // namespace teamsem
