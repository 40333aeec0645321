#pragma once

#include <cstdint>
#include <memory>
#include <set>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace teamsem
{

using Variable = std::string;
using VarSet = std::set<Variable>;

/// A term is a variable or a constant symbol. The parser produces variables
/// only; `resolve_terms` (eval.hpp) turns free identifiers naming constants
/// into constants against a structure.
struct Term
{
    enum class Kind : std::uint8_t
    {
        variable,
        constant
    };

    Kind kind = Kind::variable;
    std::string name;

    static Term var(std::string name) { return {Kind::variable, std::move(name)}; }
    static Term constant(std::string name) { return {Kind::constant, std::move(name)}; }

    bool is_variable() const noexcept { return kind == Kind::variable; }

    friend bool operator==(Term const &, Term const &) = default;
    friend auto operator<=>(Term const &, Term const &) = default;
};

enum class Polarity : std::uint8_t
{
    positive,
    negated
};

constexpr Polarity flip(Polarity p) noexcept
{
    return p == Polarity::positive ? Polarity::negated : Polarity::positive;
}

enum class Connective : std::uint8_t
{
    conj,   // /\   intuitionistic conjunction
    disj,   // \/   intuitionistic disjunction
    imp,    // ->   intuitionistic implication
    tensor, // *    multiplicative conjunction (team splitting)
    wand    // -*   multiplicative implication
};

enum class Quantifier : std::uint8_t
{
    forall,
    exists
};

std::string_view to_string(Connective c) noexcept;

struct Node;

/// Immutable, structurally shared formula in negation normal form.
class Formula
{
public:
    Formula() = default;

    static Formula relation(std::string name, std::vector<Term> args, Polarity polarity = Polarity::positive);
    static Formula equality(Term lhs, Term rhs, Polarity polarity = Polarity::positive);
    /// Governors are deduplicated and sorted.
    static Formula dependence(std::vector<Variable> governors, Variable dependent);
    static Formula constancy(Variable v) { return dependence({}, std::move(v)); }

    static Formula binary(Connective op, Formula lhs, Formula rhs);
    static Formula conj(Formula a, Formula b) { return binary(Connective::conj, std::move(a), std::move(b)); }
    static Formula disj(Formula a, Formula b) { return binary(Connective::disj, std::move(a), std::move(b)); }
    static Formula imp(Formula a, Formula b) { return binary(Connective::imp, std::move(a), std::move(b)); }
    static Formula tensor(Formula a, Formula b) { return binary(Connective::tensor, std::move(a), std::move(b)); }
    static Formula wand(Formula a, Formula b) { return binary(Connective::wand, std::move(a), std::move(b)); }

    static Formula quantified(Quantifier q, Variable v, Formula body);
    static Formula forall(Variable v, Formula body) { return quantified(Quantifier::forall, std::move(v), std::move(body)); }
    static Formula exists(Variable v, Formula body) { return quantified(Quantifier::exists, std::move(v), std::move(body)); }
    /// `(Q v \ governors). body`; governors are deduplicated and sorted.
    static Formula guarded(Quantifier q, Variable v, std::vector<Variable> governors, Formula body);
    static Formula guarded_exists(Variable v, std::vector<Variable> governors, Formula body)
    {
        return guarded(Quantifier::exists, std::move(v), std::move(governors), std::move(body));
    }
    static Formula guarded_forall(Variable v, std::vector<Variable> governors, Formula body)
    {
        return guarded(Quantifier::forall, std::move(v), std::move(governors), std::move(body));
    }

    bool valid() const noexcept { return node_ != nullptr; }
    Node const & node() const { return *node_; }
    /// Identity of the shared node; stable for the lifetime of any copy.
    Node const * id() const noexcept { return node_.get(); }

    template <typename T>
    T const * as() const;

    friend bool operator==(Formula const & a, Formula const & b);

private:
    explicit Formula(std::shared_ptr<Node const> n) : node_{std::move(n)} {}

    std::shared_ptr<Node const> node_;
};

struct RelAtom
{
    std::string relation;
    std::vector<Term> args;
    Polarity polarity = Polarity::positive;
};

struct EqAtom
{
    Term lhs;
    Term rhs;
    Polarity polarity = Polarity::positive;
};

/// D(governors ; dependent). Constancy C(v) is the empty-governor case.
struct DepAtom
{
    std::vector<Variable> governors;
    Variable dependent;
};

struct Binary
{
    Connective op;
    Formula lhs;
    Formula rhs;
};

struct Quantified
{
    Quantifier kind;
    Variable var;
    bool guarded = false;
    std::vector<Variable> governors;
    Formula body;
};

struct Node
{
    std::variant<RelAtom, EqAtom, DepAtom, Binary, Quantified> value;
};

template <typename T>
T const * Formula::as() const
{
    return node_ ? std::get_if<T>(&node_->value) : nullptr;
}

bool is_literal(Formula const & f);

/// Variables with a free occurrence. Constant terms do not count; governor
/// lists are free occurrences.
VarSet free_vars(Formula const & f);

/// Nesting depth; atoms have depth 1.
int depth(Formula const & f);

/// Number of nodes.
std::size_t size(Formula const & f);

/// De Morgan dual on the fragment {literals, /\, *, forall, exists}.
/// Throws FragmentError on anything else.
Formula demorgan_dual(Formula const & f);

enum class Fragment : std::uint8_t
{
    fo_flat,
    dep,
    bid_minus,
    bid
};

std::string_view to_string(Fragment f) noexcept;

/// Smallest fragment containing `f`, ordered fo_flat < dep < bid_minus < bid.
Fragment classify(Formula const & f);

/// Expansion of a guarded quantifier into its defining form:
/// `(exists v \ W). b` is `exists v. (D(W;v) /\ b)` and
/// `(forall v \ W). b` is `forall v. (D(W;v) -> b)`.
Formula expand_guard(Quantified const & q);

} // namespace teamsem
