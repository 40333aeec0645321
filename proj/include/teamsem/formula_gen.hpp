#pragma once

#include <teamsem/ast.hpp>

#include <cstdint>
#include <optional>
#include <vector>

namespace teamsem
{

/// One quantifier prefix form, e.g. `exists y \ x .`.
struct QuantifierForm
{
    Quantifier kind;
    Variable var;
    bool guarded = false;
    std::vector<Variable> governors;

    Formula apply(Formula body) const;
};

/// Grammar of generated formulas: a fixed atom pool closed under the listed
/// binary connectives and quantifier forms.
struct GeneratorConfig
{
    std::vector<Formula> atoms;
    std::vector<Connective> connectives;
    std::vector<QuantifierForm> quantifiers;
};

/// Pool {P(x), x = y, x = c0, D(x;y), C(x)}, all five connectives, and
/// forall/exists over x and y, plain and guarded by the other variable.
/// `c0` is a constant term.
GeneratorConfig sweep_config();

/// Literals over x, y and c0 of both polarities with /\, * and the four plain
/// quantifiers: the FO-flat fragment.
GeneratorConfig fo_flat_config();

/// Every construct of the language, over variables only.
GeneratorConfig full_syntax_config();

/// All formulas of the grammar up to a depth (atoms have depth 1), ordered by
/// depth, then binary before quantified, then operator and operand indices.
/// Layers below the top are materialized so that subformulas are shared
/// nodes; the top layer is unranked on demand.
class FormulaSpace
{
public:
    /// Throws BoundExceeded when the population exceeds 2^62 or the lower
    /// layers exceed `materialize_limit` formulas.
    FormulaSpace(GeneratorConfig config, int max_depth, std::uint64_t materialize_limit = 4'000'000);

    int max_depth() const noexcept { return max_depth_; }
    /// Number of formulas of depth at most d (d <= max_depth).
    std::uint64_t cumulative(int d) const { return cumulative_.at(static_cast<std::size_t>(d)); }
    std::uint64_t size() const { return cumulative(max_depth_); }

    /// i-th formula in enumeration order.
    Formula at(std::uint64_t index) const;
    /// Materialized formulas of depth below max_depth, in enumeration order.
    std::vector<Formula> const & lower() const noexcept { return lower_; }

private:
    Formula build(int depth, std::uint64_t offset) const;

    GeneratorConfig config_;
    int max_depth_;
    std::vector<std::uint64_t> cumulative_; // [0] = 0
    std::vector<Formula> lower_;
};

/// Result of `generate`: the whole space when it fits under the cap, else a
/// seeded uniform sample of distinct indices (sorted).
struct FormulaSample
{
    std::vector<Formula> formulas;
    std::uint64_t population = 0;
    bool exhaustive = true;
    std::optional<std::uint64_t> seed;
};

FormulaSample generate(FormulaSpace const & space, std::uint64_t cap, std::uint64_t seed);

} // namespace teamsem
