#pragma once

#include <teamsem/ast.hpp>
#include <teamsem/errors.hpp>

#include <bit>
#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <vector>

namespace teamsem
{

/// Index of an element in a structure's universe.
using Element = std::uint32_t;
using Tuple = std::vector<Element>;

/// Bitmask of assignment indices within an `AssignmentSpace`.
using TeamMask = std::uint64_t;

struct Relation
{
    std::size_t arity = 0;
    std::set<Tuple> tuples;

    bool contains(std::span<Element const> tuple) const
    {
        return tuples.contains(Tuple(tuple.begin(), tuple.end()));
    }

    friend bool operator==(Relation const &, Relation const &) = default;
};

/// Finite first-order structure: ordered universe of element symbols,
/// relations and constants. The element order fixes enumeration order only.
class Structure
{
public:
    explicit Structure(std::vector<std::string> universe);

    /// Universe {"0", ..., "n-1"} with no relations or constants.
    static Structure uniform(std::size_t n);

    Structure & add_relation(std::string name, std::size_t arity, std::set<Tuple> tuples);
    Structure & add_constant(std::string name, Element value);

    std::size_t size() const noexcept { return universe_.size(); }
    std::vector<std::string> const & universe() const noexcept { return universe_; }
    std::string const & element_name(Element e) const { return universe_.at(e); }
    std::optional<Element> element(std::string const & name) const;
    /// Throws FormatError for an unknown element name.
    Element element_or_throw(std::string const & name) const;

    Relation const * relation(std::string const & name) const;
    std::optional<Element> constant(std::string const & name) const;
    std::map<std::string, Relation> const & relations() const noexcept { return relations_; }
    std::map<std::string, Element> const & constants() const noexcept { return constants_; }

    /// Value of an identifier in constant position: a declared constant, or
    /// else an element symbol of the universe.
    std::optional<Element> constant_value(std::string const & name) const;

    friend bool operator==(Structure const &, Structure const &) = default;

private:
    std::vector<std::string> universe_;
    std::map<std::string, Relation> relations_;
    std::map<std::string, Element> constants_;
};

/// The set A^X of assignments on a sorted variable set X, indexed in mixed
/// radix with the first variable as the least significant digit. At most 64
/// assignments so that teams fit in a `TeamMask`.
class AssignmentSpace
{
public:
    static constexpr std::uint64_t max_assignments = 64;

    AssignmentSpace(VarSet vars, std::size_t universe_size);

    std::vector<Variable> const & vars() const noexcept { return vars_; }
    VarSet var_set() const { return {vars_.begin(), vars_.end()}; }
    std::size_t universe_size() const noexcept { return base_; }
    std::size_t size() const noexcept { return size_; }
    TeamMask full_mask() const noexcept { return size_ == 64 ? ~TeamMask{0} : (TeamMask{1} << size_) - 1; }

    std::optional<std::size_t> position(Variable const & v) const;
    std::size_t stride(std::size_t pos) const { return strides_[pos]; }
    Element digit(std::size_t index, std::size_t pos) const
    {
        return static_cast<Element>((index / strides_[pos]) % base_);
    }
    std::vector<Element> values(std::size_t index) const;
    std::size_t index(std::span<Element const> values) const;

    friend bool operator==(AssignmentSpace const & a, AssignmentSpace const & b)
    {
        return a.vars_ == b.vars_ && a.base_ == b.base_;
    }

private:
    std::vector<Variable> vars_;
    std::size_t base_;
    std::size_t size_;
    std::vector<std::size_t> strides_;
};

using SpacePtr = std::shared_ptr<AssignmentSpace const>;
SpacePtr make_space(VarSet vars, std::size_t universe_size);

/// A total map from a variable set to elements.
class Assignment
{
public:
    Assignment() = default;
    Assignment(std::vector<Variable> vars, std::vector<Element> values);
    explicit Assignment(std::map<Variable, Element> const & binding);

    std::vector<Variable> const & vars() const noexcept { return vars_; }
    std::vector<Element> const & values() const noexcept { return values_; }
    VarSet domain() const { return {vars_.begin(), vars_.end()}; }

    std::optional<Element> find(Variable const & v) const;
    Element at(Variable const & v) const;
    /// s[v -> a]; rebinding overwrites.
    Assignment with(Variable const & v, Element a) const;

    friend bool operator==(Assignment const &, Assignment const &) = default;
    friend auto operator<=>(Assignment const &, Assignment const &) = default;

private:
    std::vector<Variable> vars_; // sorted
    std::vector<Element> values_;
};

/// A set of assignments sharing one domain. The empty team is valid.
class Team
{
public:
    Team(SpacePtr space, TeamMask mask = 0);
    Team(SpacePtr space, std::span<Assignment const> members);

    SpacePtr const & space() const noexcept { return space_; }
    VarSet domain() const { return space_->var_set(); }
    TeamMask mask() const noexcept { return mask_; }
    std::size_t size() const noexcept { return static_cast<std::size_t>(std::popcount(mask_)); }
    bool empty() const noexcept { return mask_ == 0; }

    bool contains(Assignment const & a) const;
    std::vector<Assignment> members() const;
    Assignment member_at(std::size_t index) const;

    friend bool operator==(Team const & a, Team const & b)
    {
        return a.mask_ == b.mask_ && *a.space_ == *b.space_;
    }

private:
    SpacePtr space_;
    TeamMask mask_;
};

/// T[v -> A].
Team extend_all(Team const & t, Variable const & v, Structure const & m);

using ChoiceFunction = std::function<std::optional<Element>(Assignment const &)>;

/// T[v -> f]. Throws MissingValue when f is undefined on a member.
Team extend_fn(Team const & t, Variable const & v, ChoiceFunction const & f);

/// s and t agree on every variable of W. Throws DomainError unless W is in
/// both domains.
bool equiv_w(Assignment const & s, Assignment const & t, VarSet const & w);

/// Tuple set {(t(v1), ..., t(vn)) | t in T} for `order` a permutation of the
/// team's domain.
std::set<Tuple> rel(Team const & t, std::span<Variable const> order);

/// All 2^(|A|^|X|) teams on X in mask order. `bound` caps |A|^|X|.
class TeamRange
{
public:
    static constexpr std::uint64_t default_bound = 16;

    TeamRange(VarSet vars, Structure const & m, std::uint64_t bound = default_bound);

    std::uint64_t count() const noexcept { return std::uint64_t{1} << space_->size(); }
    SpacePtr const & space() const noexcept { return space_; }
    Team operator[](std::uint64_t i) const { return Team{space_, i}; }

    template <typename Fn>
    void for_each(Fn && fn) const
    {
        for (std::uint64_t i = 0; i < count(); ++i)
            fn(Team{space_, i});
    }

private:
    SpacePtr space_;
};

inline TeamRange all_teams(VarSet vars, Structure const & m, std::uint64_t bound = TeamRange::default_bound)
{
    return TeamRange{std::move(vars), m, bound};
}

/// Iterates over the set bits of a mask.
template <typename Fn>
void for_each_member(TeamMask mask, Fn && fn)
{
    while (mask)
    {
        fn(static_cast<std::size_t>(std::countr_zero(mask)));
        mask &= mask - 1;
    }
}

} // namespace teamsem
