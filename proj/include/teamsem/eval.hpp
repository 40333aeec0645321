#pragma once

#include <teamsem/ast.hpp>
#include <teamsem/model.hpp>

#include <cstdint>
#include <memory>
#include <string_view>

namespace teamsem
{

/// Limits on exhaustive searches. `max_functions` caps |A|^|T| for the
/// existential choice-function search; `max_teams` caps 2^(|A|^|X|) for the
/// team space quantified over by the wand.
struct Bounds
{
    std::uint64_t max_functions = 4096;
    std::uint64_t max_teams = 65536;
};

/// Structure and variable context X. The structure is held by reference and
/// must outlive the context.
class EvalContext
{
public:
    EvalContext(Structure const & m, VarSet vars, Bounds bounds = {}) :
        structure_{&m},
        vars_{std::move(vars)},
        bounds_{bounds}
    {}

    Structure const & structure() const noexcept { return *structure_; }
    VarSet const & vars() const noexcept { return vars_; }
    Bounds const & bounds() const noexcept { return bounds_; }

private:
    Structure const * structure_;
    VarSet vars_;
    Bounds bounds_;
};

/// Marks identifiers in term position that are neither in `scope` nor bound
/// as constants. Variables shadow constants. Throws UnboundIdentifier when
/// such an identifier is not a constant or element of `m`. Subtrees that need
/// no change keep their node identity.
Formula resolve_terms(Formula const & f, Structure const & m, VarSet const & scope);

/// Free variables of `f` once identifiers naming a constant or element of
/// `m` are read as constants. This is the least context `f` can be
/// evaluated in.
VarSet open_vars(Formula const & f, Structure const & m);

/// Truth of a resolved literal under one assignment.
bool literal_holds(Structure const & m, Formula const & literal, Assignment const & s);

/// Tarski satisfaction of an FO-flat formula by one assignment; the tensor
/// is read as classical disjunction. Throws FragmentError outside FO-flat.
bool tarski(EvalContext const & ctx, Assignment const & s, Formula const & f);

/// Team satisfaction T |=_X f.
bool satisfies(EvalContext const & ctx, Team const & t, Formula const & f);

/// Team satisfaction for one formula against many teams. Sub-results are
/// memoized by (subformula, team) for the evaluator's lifetime. Not
/// thread-safe; use one evaluator per thread.
class Evaluator
{
public:
    Evaluator(EvalContext const & ctx, Formula const & f);
    ~Evaluator();
    Evaluator(Evaluator &&) noexcept;
    Evaluator & operator=(Evaluator &&) noexcept;

    /// Team over X.
    bool satisfies(Team const & t);
    /// Team given as a mask over `space()`.
    bool satisfies(TeamMask t);

    SpacePtr const & space() const;
    Formula const & formula() const;

private:
    struct Impl;
    std::unique_ptr<Impl> impl_;
};

enum class TruthValue : std::uint8_t
{
    false_value, // denotation {}
    weak,        // denotation {{}}: satisfied by the empty team only
    true_value   // denotation {{}, {<>}}
};

std::string_view to_string(TruthValue v) noexcept;

/// Trivalent truth value of a sentence. Throws NotASentence.
TruthValue truth_value(Structure const & m, Formula const & sentence, Bounds bounds = {});

/// D(W, v) by the agreement clause: s ~_W t implies s(v) = t(v).
bool dep_holds(Team const & t, VarSet const & w, Variable const & v);

/// D(W, v) by the functional clause: some g : A^W -> A has t(v) = g(t|W)
/// for every member. Enumerates all g; `max_functions` caps |A|^(|A|^|W|).
bool dep_holds_functional(Team const & t, VarSet const & w, Variable const & v,
                          std::uint64_t max_functions = std::uint64_t{1} << 20);

} // namespace teamsem
