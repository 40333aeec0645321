#pragma once

// Reference implementations for tests. Teams are std::set of std::map
// assignments and every clause is read off its definition with no masks,
// memo tables or lattice operations, so agreement with the library is
// evidence rather than a tautology.

#include <teamsem/ast.hpp>
#include <teamsem/errors.hpp>
#include <teamsem/model.hpp>

#include <cstdint>
#include <functional>
#include <map>
#include <set>
#include <string>
#include <vector>

namespace oracle
{

using teamsem::Element;
using teamsem::Formula;
using teamsem::Structure;
using teamsem::Variable;
using teamsem::VarSet;

using Assign = std::map<Variable, Element>;
using Team = std::set<Assign>;

inline std::vector<Assign> all_assignments(VarSet const & vars, std::size_t n)
{
    std::vector<Assign> out{Assign{}};
    for (auto const & v : vars)
    {
        std::vector<Assign> next;
        for (auto const & a : out)
            for (Element e = 0; e < n; ++e)
            {
                Assign b = a;
                b[v] = e;
                next.push_back(b);
            }
        out = std::move(next);
    }
    return out;
}

/// Every subset of `items`.
template <typename T>
std::vector<std::set<T>> subsets(std::set<T> const & items)
{
    std::vector<T> const v(items.begin(), items.end());
    std::vector<std::set<T>> out;
    for (std::uint64_t m = 0; m < (std::uint64_t{1} << v.size()); ++m)
    {
        std::set<T> s;
        for (std::size_t i = 0; i < v.size(); ++i)
            if (m >> i & 1)
                s.insert(v[i]);
        out.push_back(std::move(s));
    }
    return out;
}

inline std::vector<Team> all_teams(VarSet const & vars, std::size_t n)
{
    auto const as = all_assignments(vars, n);
    return subsets(std::set<Assign>(as.begin(), as.end()));
}

inline Element term_value(Structure const & m, teamsem::Term const & t, Assign const & s)
{
    if (t.is_variable())
        if (auto it = s.find(t.name); it != s.end())
            return it->second;
    auto c = m.constant_value(t.name);
    if (!c)
        throw teamsem::UnboundIdentifier{t.name};
    return *c;
}

inline bool dep(Team const & t, std::vector<Variable> const & w, Variable const & v)
{
    for (auto const & s : t)
        for (auto const & u : t)
        {
            bool agree = true;
            for (auto const & x : w)
                agree = agree && s.at(x) == u.at(x);
            if (agree && s.at(v) != u.at(v))
                return false;
        }
    return true;
}

inline Team extend_all(Team const & t, Variable const & v, std::size_t n)
{
    Team out;
    for (auto const & s : t)
        for (Element a = 0; a < n; ++a)
        {
            Assign b = s;
            b[v] = a;
            out.insert(b);
        }
    return out;
}

/// Calls fn on T[v -> f] for every f : T -> A until fn returns true.
inline bool any_extension(Team const & t, Variable const & v, std::size_t n, std::function<bool(Team const &)> const & fn)
{
    std::vector<Assign> const members(t.begin(), t.end());
    std::vector<Element> choice(members.size(), 0);
    while (true)
    {
        Team ext;
        for (std::size_t i = 0; i < members.size(); ++i)
        {
            Assign b = members[i];
            b[v] = choice[i];
            ext.insert(b);
        }
        if (fn(ext))
            return true;
        std::size_t i = 0;
        while (i < choice.size() && ++choice[i] == n)
            choice[i++] = 0;
        if (i == choice.size())
            return false;
    }
}

inline bool sat(Structure const & m, VarSet const & vars, Team const & t, Formula const & f)
{
    using namespace teamsem;
    std::size_t const n = m.size();
    if (auto const * r = f.as<RelAtom>())
    {
        for (auto const & s : t)
        {
            Tuple tuple;
            for (auto const & a : r->args)
                tuple.push_back(term_value(m, a, s));
            Relation const * rel = m.relation(r->relation);
            if (!rel)
                throw UnboundIdentifier{r->relation};
            if (rel->tuples.contains(tuple) != (r->polarity == Polarity::positive))
                return false;
        }
        return true;
    }
    if (auto const * e = f.as<EqAtom>())
    {
        for (auto const & s : t)
            if ((term_value(m, e->lhs, s) == term_value(m, e->rhs, s)) != (e->polarity == Polarity::positive))
                return false;
        return true;
    }
    if (auto const * d = f.as<DepAtom>())
        return dep(t, d->governors, d->dependent);
    if (auto const * b = f.as<Binary>())
    {
        switch (b->op)
        {
        case Connective::conj:
            return sat(m, vars, t, b->lhs) && sat(m, vars, t, b->rhs);
        case Connective::disj:
            return sat(m, vars, t, b->lhs) || sat(m, vars, t, b->rhs);
        case Connective::imp:
            for (auto const & u : subsets(t))
                if (sat(m, vars, u, b->lhs) && !sat(m, vars, u, b->rhs))
                    return false;
            return true;
        case Connective::tensor:
            // any cover T = U u V, overlapping or not
            for (auto const & u : subsets(t))
                for (auto const & v : subsets(t))
                {
                    Team both = u;
                    both.insert(v.begin(), v.end());
                    if (both == t && sat(m, vars, u, b->lhs) && sat(m, vars, v, b->rhs))
                        return true;
                }
            return false;
        case Connective::wand:
            for (auto const & u : all_teams(vars, n))
            {
                if (!sat(m, vars, u, b->lhs))
                    continue;
                Team both = t;
                both.insert(u.begin(), u.end());
                if (!sat(m, vars, both, b->rhs))
                    return false;
            }
            return true;
        }
    }
    auto const & q = *f.as<Quantified>();
    VarSet inner = vars;
    inner.insert(q.var);
    if (q.kind == Quantifier::forall)
    {
        Team const ext = extend_all(t, q.var, n);
        if (!q.guarded)
            return sat(m, inner, ext, q.body);
        // forall v \ W . b  is  forall v. (D(W;v) -> b)
        for (auto const & u : subsets(ext))
            if (dep(u, q.governors, q.var) && !sat(m, inner, u, q.body))
                return false;
        return true;
    }
    return any_extension(t, q.var, n, [&](Team const & ext) {
        return (!q.guarded || dep(ext, q.governors, q.var)) && sat(m, inner, ext, q.body);
    });
}

/// The oracle team corresponding to a library team.
inline Team from_team(teamsem::Team const & t)
{
    Team out;
    for (auto const & a : t.members())
    {
        Assign s;
        for (std::size_t i = 0; i < a.vars().size(); ++i)
            s[a.vars()[i]] = a.values()[i];
        out.insert(s);
    }
    return out;
}

} // namespace oracle
