#include <teamsem/model.hpp>

#include <algorithm>

namespace teamsem
{

// ---------------------------------------------------------------------------
// Structure

Structure::Structure(std::vector<std::string> universe) : universe_{std::move(universe)}
{
    if (universe_.empty())
        throw FormatError{"structure universe must contain at least one element"};
    std::set<std::string> seen;
    for (auto const & e : universe_)
        if (!seen.insert(e).second)
            throw FormatError{"duplicate universe element '" + e + "'"};
}

Structure Structure::uniform(std::size_t n)
{
    std::vector<std::string> names;
    for (std::size_t i = 0; i < n; ++i)
        names.push_back(std::to_string(i));
    return Structure{std::move(names)};
}

Structure & Structure::add_relation(std::string name, std::size_t arity, std::set<Tuple> tuples)
{
    if (name == "D" || name == "C")
        throw FormatError{"relation names D and C are reserved for dependence atoms"};
    for (auto const & t : tuples)
    {
        if (t.size() != arity)
            throw FormatError{"relation '" + name + "': tuple length differs from arity " + std::to_string(arity)};
        for (Element e : t)
            if (e >= size())
                throw FormatError{"relation '" + name + "': tuple component outside the universe"};
    }
    relations_[std::move(name)] = Relation{arity, std::move(tuples)};
    return *this;
}

Structure & Structure::add_constant(std::string name, Element value)
{
    if (value >= size())
        throw FormatError{"constant '" + name + "' outside the universe"};
    constants_[std::move(name)] = value;
    return *this;
}

std::optional<Element> Structure::element(std::string const & name) const
{
    auto it = std::find(universe_.begin(), universe_.end(), name);
    if (it == universe_.end())
        return std::nullopt;
    return static_cast<Element>(it - universe_.begin());
}

Element Structure::element_or_throw(std::string const & name) const
{
    if (auto e = element(name))
        return *e;
    throw FormatError{"'" + name + "' is not an element of the universe"};
}

Relation const * Structure::relation(std::string const & name) const
{
    auto it = relations_.find(name);
    return it == relations_.end() ? nullptr : &it->second;
}

std::optional<Element> Structure::constant(std::string const & name) const
{
    auto it = constants_.find(name);
    if (it == constants_.end())
        return std::nullopt;
    return it->second;
}

std::optional<Element> Structure::constant_value(std::string const & name) const
{
    if (auto c = constant(name))
        return c;
    return element(name);
}

// ---------------------------------------------------------------------------
// AssignmentSpace

AssignmentSpace::AssignmentSpace(VarSet vars, std::size_t universe_size) :
    vars_{vars.begin(), vars.end()},
    base_{universe_size},
    size_{1}
{
    if (base_ == 0)
        throw DomainError{"empty universe"};
    for (std::size_t i = 0; i < vars_.size(); ++i)
    {
        strides_.push_back(size_);
        if (size_ > max_assignments / base_)
            throw BoundExceeded{"assignment space |A|^|X|", size_ * base_, max_assignments};
        size_ *= base_;
    }
}

std::optional<std::size_t> AssignmentSpace::position(Variable const & v) const
{
    auto it = std::lower_bound(vars_.begin(), vars_.end(), v);
    if (it == vars_.end() || *it != v)
        return std::nullopt;
    return static_cast<std::size_t>(it - vars_.begin());
}

std::vector<Element> AssignmentSpace::values(std::size_t index) const
{
    std::vector<Element> out(vars_.size());
    for (std::size_t p = 0; p < vars_.size(); ++p)
        out[p] = digit(index, p);
    return out;
}

std::size_t AssignmentSpace::index(std::span<Element const> values) const
{
    std::size_t idx = 0;
    for (std::size_t p = 0; p < vars_.size(); ++p)
        idx += values[p] * strides_[p];
    return idx;
}

SpacePtr make_space(VarSet vars, std::size_t universe_size)
{
    return std::make_shared<AssignmentSpace const>(std::move(vars), universe_size);
}

// ---------------------------------------------------------------------------
// Assignment

Assignment::Assignment(std::vector<Variable> vars, std::vector<Element> values)
{
    if (vars.size() != values.size())
        throw DomainError{"assignment: variable and value counts differ"};
    std::vector<std::size_t> order(vars.size());
    for (std::size_t i = 0; i < order.size(); ++i)
        order[i] = i;
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return vars[a] < vars[b]; });
    for (std::size_t i : order)
    {
        if (!vars_.empty() && vars_.back() == vars[i])
            throw DomainError{"assignment: duplicate variable '" + vars[i] + "'"};
        vars_.push_back(vars[i]);
        values_.push_back(values[i]);
    }
}

Assignment::Assignment(std::map<Variable, Element> const & binding)
{
    for (auto const & [v, a] : binding)
    {
        vars_.push_back(v);
        values_.push_back(a);
    }
}

std::optional<Element> Assignment::find(Variable const & v) const
{
    auto it = std::lower_bound(vars_.begin(), vars_.end(), v);
    if (it == vars_.end() || *it != v)
        return std::nullopt;
    return values_[static_cast<std::size_t>(it - vars_.begin())];
}

Element Assignment::at(Variable const & v) const
{
    if (auto a = find(v))
        return *a;
    throw DomainError{"variable '" + v + "' is not in the assignment's domain"};
}

Assignment Assignment::with(Variable const & v, Element a) const
{
    Assignment out = *this;
    auto it = std::lower_bound(out.vars_.begin(), out.vars_.end(), v);
    auto const pos = it - out.vars_.begin();
    if (it != out.vars_.end() && *it == v)
        out.values_[static_cast<std::size_t>(pos)] = a;
    else
    {
        out.vars_.insert(it, v);
        out.values_.insert(out.values_.begin() + pos, a);
    }
    return out;
}

// ---------------------------------------------------------------------------
// Team

Team::Team(SpacePtr space, TeamMask mask) : space_{std::move(space)}, mask_{mask & space_->full_mask()} {}

Team::Team(SpacePtr space, std::span<Assignment const> members) : space_{std::move(space)}, mask_{0}
{
    for (auto const & a : members)
    {
        if (a.vars() != space_->vars())
            throw DomainError{"team member's domain differs from the team's domain"};
        mask_ |= TeamMask{1} << space_->index(a.values());
    }
}

bool Team::contains(Assignment const & a) const
{
    if (a.vars() != space_->vars())
        return false;
    for (Element e : a.values())
        if (e >= space_->universe_size())
            return false;
    return (mask_ >> space_->index(a.values())) & 1;
}

Assignment Team::member_at(std::size_t index) const
{
    return Assignment{space_->vars(), space_->values(index)};
}

std::vector<Assignment> Team::members() const
{
    std::vector<Assignment> out;
    for_each_member(mask_, [&](std::size_t i) { out.push_back(member_at(i)); });
    return out;
}

namespace
{

SpacePtr extended_space(Team const & t, Variable const & v)
{
    VarSet vars = t.domain();
    if (vars.contains(v))
        return t.space();
    vars.insert(v);
    return make_space(std::move(vars), t.space()->universe_size());
}

} // namespace

Team extend_all(Team const & t, Variable const & v, Structure const & m)
{
    if (m.size() != t.space()->universe_size())
        throw DomainMismatch{"team and structure have different universes"};
    SpacePtr target = extended_space(t, v);
    std::vector<Assignment> out;
    for (auto const & s : t.members())
        for (Element a = 0; a < m.size(); ++a)
            out.push_back(s.with(v, a));
    return Team{std::move(target), out};
}

Team extend_fn(Team const & t, Variable const & v, ChoiceFunction const & f)
{
    SpacePtr target = extended_space(t, v);
    std::vector<Assignment> out;
    for (auto const & s : t.members())
    {
        auto a = f(s);
        if (!a)
            throw MissingValue{"choice function undefined on a team member"};
        if (*a >= t.space()->universe_size())
            throw DomainError{"choice function value outside the universe"};
        out.push_back(s.with(v, *a));
    }
    return Team{std::move(target), out};
}

bool equiv_w(Assignment const & s, Assignment const & t, VarSet const & w)
{
    for (auto const & v : w)
    {
        auto a = s.find(v);
        auto b = t.find(v);
        if (!a || !b)
            throw DomainError{"variable '" + v + "' of W is not in both domains"};
        if (*a != *b)
            return false;
    }
    return true;
}

std::set<Tuple> rel(Team const & t, std::span<Variable const> order)
{
    VarSet const listed(order.begin(), order.end());
    if (listed.size() != order.size() || listed != t.domain())
        throw DomainError{"rel: variable order must list the team's domain exactly once"};
    std::set<Tuple> out;
    for (auto const & s : t.members())
    {
        Tuple tuple;
        for (auto const & v : order)
            tuple.push_back(s.at(v));
        out.insert(std::move(tuple));
    }
    return out;
}

TeamRange::TeamRange(VarSet vars, Structure const & m, std::uint64_t bound)
{
    std::uint64_t count = 1;
    for (std::size_t i = 0; i < vars.size(); ++i)
    {
        count *= m.size();
        if (count > bound)
            throw BoundExceeded{"team enumeration |A|^|X|", count, bound};
    }
    space_ = make_space(std::move(vars), m.size());
}

} // namespace teamsem
