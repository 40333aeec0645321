#include <teamsem/formula_gen.hpp>

#include <teamsem/errors.hpp>

#include <algorithm>
#include <random>
#include <unordered_set>

namespace teamsem
{

namespace
{

constexpr std::uint64_t population_limit = std::uint64_t{1} << 62;

std::uint64_t checked_mul(std::uint64_t a, std::uint64_t b)
{
    if (a != 0 && b > population_limit / a)
        throw BoundExceeded{"formula population", population_limit + 1, population_limit};
    return a * b;
}

std::uint64_t checked_add(std::uint64_t a, std::uint64_t b)
{
    if (a > population_limit - b)
        throw BoundExceeded{"formula population", population_limit + 1, population_limit};
    return a + b;
}

Term v(char const * name)
{
    return Term::var(name);
}

} // namespace

Formula QuantifierForm::apply(Formula body) const
{
    if (guarded)
        return Formula::guarded(kind, var, governors, std::move(body));
    return Formula::quantified(kind, var, std::move(body));
}

GeneratorConfig sweep_config()
{
    GeneratorConfig c;
    c.atoms = {
        Formula::relation("P", {v("x")}),
        Formula::equality(v("x"), v("y")),
        Formula::equality(v("x"), Term::constant("c0")),
        Formula::dependence({"x"}, "y"),
        Formula::constancy("x"),
    };
    c.connectives = {Connective::conj, Connective::disj, Connective::imp, Connective::tensor, Connective::wand};
    c.quantifiers = {
        {Quantifier::forall, "x", false, {}},    {Quantifier::exists, "x", false, {}},
        {Quantifier::forall, "y", false, {}},    {Quantifier::exists, "y", false, {}},
        {Quantifier::exists, "y", true, {"x"}},  {Quantifier::forall, "y", true, {"x"}},
        {Quantifier::exists, "x", true, {"y"}},  {Quantifier::forall, "x", true, {"y"}},
    };
    return c;
}

GeneratorConfig fo_flat_config()
{
    GeneratorConfig c;
    c.atoms = {
        Formula::relation("P", {v("x")}),
        Formula::relation("P", {v("y")}, Polarity::negated),
        Formula::equality(v("x"), v("y")),
        Formula::equality(v("x"), Term::constant("c0"), Polarity::negated),
    };
    c.connectives = {Connective::conj, Connective::tensor};
    c.quantifiers = {
        {Quantifier::forall, "x", false, {}},
        {Quantifier::exists, "x", false, {}},
        {Quantifier::forall, "y", false, {}},
        {Quantifier::exists, "y", false, {}},
    };
    return c;
}

GeneratorConfig full_syntax_config()
{
    GeneratorConfig c;
    c.atoms = {
        Formula::relation("R", {v("x"), v("y")}),
        Formula::relation("Q", {}, Polarity::negated),
        Formula::equality(v("y"), v("z"), Polarity::negated),
        Formula::dependence({"x", "z"}, "y"),
        Formula::constancy("z"),
    };
    c.connectives = {Connective::conj, Connective::disj, Connective::imp, Connective::tensor, Connective::wand};
    c.quantifiers = {
        {Quantifier::forall, "x", false, {}},
        {Quantifier::exists, "z", false, {}},
        {Quantifier::exists, "y", true, {"x", "z"}},
        {Quantifier::forall, "x", true, {}},
    };
    return c;
}

FormulaSpace::FormulaSpace(GeneratorConfig config, int max_depth, std::uint64_t materialize_limit) :
    config_{std::move(config)},
    max_depth_{max_depth}
{
    if (max_depth_ < 1)
        throw DomainError{"formula depth must be at least 1"};
    if (config_.atoms.empty())
        throw DomainError{"formula generator needs at least one atom"};

    std::uint64_t const ops = config_.connectives.size();
    std::uint64_t const quants = config_.quantifiers.size();
    cumulative_ = {0, config_.atoms.size()};
    for (int d = 2; d <= max_depth_; ++d)
    {
        std::uint64_t const below = cumulative_[static_cast<std::size_t>(d - 1)];
        std::uint64_t const below2 = cumulative_[static_cast<std::size_t>(d - 2)];
        std::uint64_t const exact_prev = below - below2;
        // pairs with at least one operand of depth exactly d-1
        std::uint64_t const pairs = checked_mul(below, below) - below2 * below2;
        std::uint64_t const exact = checked_add(checked_mul(ops, pairs), checked_mul(quants, exact_prev));
        cumulative_.push_back(checked_add(below, exact));
    }

    std::uint64_t const lower_count = cumulative_[static_cast<std::size_t>(max_depth_ - 1)];
    if (lower_count > materialize_limit)
        throw BoundExceeded{"materialized formulas below the top depth", lower_count, materialize_limit};
    lower_.reserve(lower_count);
    for (int d = 1; d < max_depth_; ++d)
        for (std::uint64_t i = 0; i < cumulative_[static_cast<std::size_t>(d)] - cumulative_[static_cast<std::size_t>(d - 1)]; ++i)
            lower_.push_back(build(d, i));
}

Formula FormulaSpace::build(int depth, std::uint64_t offset) const
{
    if (depth == 1)
        return config_.atoms[offset];

    std::uint64_t const below = cumulative_[static_cast<std::size_t>(depth - 1)];
    std::uint64_t const below2 = cumulative_[static_cast<std::size_t>(depth - 2)];
    std::uint64_t const exact_prev = below - below2;
    std::uint64_t const pairs = below * below - below2 * below2;
    std::uint64_t const binary_total = config_.connectives.size() * pairs;

    if (offset < binary_total)
    {
        Connective const op = config_.connectives[offset / pairs];
        std::uint64_t p = offset % pairs;
        std::uint64_t lhs = 0;
        std::uint64_t rhs = 0;
        // first every pair whose left operand has depth d-1, then the pairs
        // with a shallower left operand and a right operand of depth d-1
        if (p < exact_prev * below)
        {
            lhs = below2 + p / below;
            rhs = p % below;
        }
        else
        {
            p -= exact_prev * below;
            lhs = p / exact_prev;
            rhs = below2 + p % exact_prev;
        }
        return Formula::binary(op, lower_[lhs], lower_[rhs]);
    }
    offset -= binary_total;
    QuantifierForm const & q = config_.quantifiers[offset / exact_prev];
    return q.apply(lower_[below2 + offset % exact_prev]);
}

Formula FormulaSpace::at(std::uint64_t index) const
{
    if (index >= size())
        throw DomainError{"formula index out of range"};
    if (index < lower_.size())
        return lower_[index];
    std::uint64_t const top = cumulative_[static_cast<std::size_t>(max_depth_ - 1)];
    return build(max_depth_, index - top);
}

FormulaSample generate(FormulaSpace const & space, std::uint64_t cap, std::uint64_t seed)
{
    FormulaSample out;
    out.population = space.size();
    if (out.population <= cap)
    {
        out.formulas.reserve(out.population);
        for (std::uint64_t i = 0; i < out.population; ++i)
            out.formulas.push_back(space.at(i));
        return out;
    }

    out.exhaustive = false;
    out.seed = seed;
    std::mt19937_64 rng{seed};
    std::uniform_int_distribution<std::uint64_t> pick{0, out.population - 1};
    std::unordered_set<std::uint64_t> chosen;
    while (chosen.size() < cap)
        chosen.insert(pick(rng));
    std::vector<std::uint64_t> indices(chosen.begin(), chosen.end());
    std::sort(indices.begin(), indices.end());
    out.formulas.reserve(indices.size());
    for (auto i : indices)
        out.formulas.push_back(space.at(i));
    return out;
}

} // namespace teamsem
