#include <teamsem/eval.hpp>

#include <algorithm>
#include <array>
#include <map>
#include <unordered_map>

namespace teamsem
{

namespace
{

// ---------------------------------------------------------------------------
// term resolution

Term resolve_term(Term const & t, Structure const & m, std::vector<Variable> const & scope)
{
    if (!t.is_variable())
        return t;
    if (std::find(scope.begin(), scope.end(), t.name) != scope.end())
        return t;
    if (m.constant_value(t.name))
        return Term::constant(t.name);
    throw UnboundIdentifier{"identifier '" + t.name + "' is not a variable in scope, a constant or an element"};
}

Formula resolve(Formula const & f, Structure const & m, std::vector<Variable> & scope)
{
    if (auto const * r = f.as<RelAtom>())
    {
        std::vector<Term> args;
        bool changed = false;
        for (auto const & t : r->args)
        {
            args.push_back(resolve_term(t, m, scope));
            changed |= !(args.back() == t);
        }
        return changed ? Formula::relation(r->relation, std::move(args), r->polarity) : f;
    }
    if (auto const * e = f.as<EqAtom>())
    {
        Term lhs = resolve_term(e->lhs, m, scope);
        Term rhs = resolve_term(e->rhs, m, scope);
        if (lhs == e->lhs && rhs == e->rhs)
            return f;
        return Formula::equality(std::move(lhs), std::move(rhs), e->polarity);
    }
    if (f.as<DepAtom>())
        return f;
    if (auto const * b = f.as<Binary>())
    {
        Formula lhs = resolve(b->lhs, m, scope);
        Formula rhs = resolve(b->rhs, m, scope);
        if (lhs.id() == b->lhs.id() && rhs.id() == b->rhs.id())
            return f;
        return Formula::binary(b->op, std::move(lhs), std::move(rhs));
    }
    auto const & q = *f.as<Quantified>();
    scope.push_back(q.var);
    Formula body = resolve(q.body, m, scope);
    scope.pop_back();
    if (body.id() == q.body.id())
        return f;
    return q.guarded ? Formula::guarded(q.kind, q.var, q.governors, std::move(body))
                     : Formula::quantified(q.kind, q.var, std::move(body));
}

void check_context(Formula const & f, VarSet const & vars)
{
    for (auto const & v : free_vars(f))
        if (!vars.contains(v))
            throw DomainError{"free variable '" + v + "' is not in the variable context"};
}

// ---------------------------------------------------------------------------
// literals

template <typename ValueOf>
bool literal_holds(Formula const & f, Structure const & m, ValueOf && value_of)
{
    if (auto const * e = f.as<EqAtom>())
    {
        bool const eq = value_of(e->lhs) == value_of(e->rhs);
        return e->polarity == Polarity::positive ? eq : !eq;
    }
    auto const & r = *f.as<RelAtom>();
    Relation const * rel = m.relation(r.relation);
    if (!rel)
        throw UnboundIdentifier{"relation '" + r.relation + "' is not declared by the structure"};
    if (rel->arity != r.args.size())
        throw DomainError{"relation '" + r.relation + "' has arity " + std::to_string(rel->arity) + ", used with "
                          + std::to_string(r.args.size()) + " arguments"};
    Tuple tuple;
    tuple.reserve(r.args.size());
    for (auto const & t : r.args)
        tuple.push_back(value_of(t));
    bool const in = rel->tuples.contains(tuple);
    return r.polarity == Polarity::positive ? in : !in;
}

Element constant_of(Term const & t, Structure const & m)
{
    if (auto c = m.constant_value(t.name))
        return *c;
    throw UnboundIdentifier{"constant '" + t.name + "' is not declared"};
}

// ---------------------------------------------------------------------------
// Tarski

bool tarski_rec(Structure const & m, Assignment const & s, Formula const & f)
{
    if (is_literal(f))
        return literal_holds(f, m, [&](Term const & t) { return t.is_variable() ? s.at(t.name) : constant_of(t, m); });
    if (f.as<DepAtom>())
        throw FragmentError{"Tarski semantics is undefined on dependence atoms"};
    if (auto const * b = f.as<Binary>())
    {
        switch (b->op)
        {
        case Connective::conj:
            return tarski_rec(m, s, b->lhs) && tarski_rec(m, s, b->rhs);
        case Connective::tensor:
            return tarski_rec(m, s, b->lhs) || tarski_rec(m, s, b->rhs);
        default:
            throw FragmentError{"Tarski semantics is undefined on connective " + std::string{to_string(b->op)}};
        }
    }
    auto const & q = *f.as<Quantified>();
    if (q.guarded)
        throw FragmentError{"Tarski semantics is undefined on guarded quantifiers"};
    for (Element a = 0; a < m.size(); ++a)
    {
        bool const holds = tarski_rec(m, s.with(q.var, a), q.body);
        if (q.kind == Quantifier::exists && holds)
            return true;
        if (q.kind == Quantifier::forall && !holds)
            return false;
    }
    return q.kind == Quantifier::forall;
}

} // namespace

Formula resolve_terms(Formula const & f, Structure const & m, VarSet const & scope)
{
    std::vector<Variable> s(scope.begin(), scope.end());
    return resolve(f, m, s);
}

VarSet open_vars(Formula const & f, Structure const & m)
{
    VarSet scope;
    for (auto const & v : free_vars(f))
        if (!m.constant_value(v))
            scope.insert(v);
    return free_vars(resolve_terms(f, m, scope));
}

bool literal_holds(Structure const & m, Formula const & literal, Assignment const & s)
{
    if (!is_literal(literal))
        throw FragmentError{"not a literal"};
    return literal_holds(literal, m, [&](Term const & t) { return t.is_variable() ? s.at(t.name) : constant_of(t, m); });
}

bool tarski(EvalContext const & ctx, Assignment const & s, Formula const & f)
{
    if (s.domain() != ctx.vars())
        throw DomainError{"assignment domain differs from the variable context"};
    Formula g = resolve_terms(f, ctx.structure(), ctx.vars());
    check_context(g, ctx.vars());
    if (classify(g) != Fragment::fo_flat)
        throw FragmentError{"Tarski semantics requires an FO-flat formula"};
    return tarski_rec(ctx.structure(), s, g);
}

// ---------------------------------------------------------------------------
// team semantics

struct Evaluator::Impl
{
    struct Space;

    struct Extension
    {
        Space * target = nullptr;
        std::vector<TeamMask> all;       // i -> {i[v -> a] | a in A}
        std::vector<std::uint32_t> point; // i * |A| + a -> index of i[v -> a]
    };

    struct Space
    {
        SpacePtr space;
        std::map<Variable, Extension> ext;
    };

    struct Key
    {
        Node const * node;
        Space const * space;
        TeamMask team;
        bool operator==(Key const &) const = default;
    };

    struct KeyHash
    {
        std::size_t operator()(Key const & k) const noexcept
        {
            std::size_t h = std::hash<void const *>{}(k.node);
            h ^= std::hash<void const *>{}(k.space) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
            h ^= std::hash<std::uint64_t>{}(k.team) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
            return h;
        }
    };

    struct LiteralKey
    {
        Node const * node;
        Space const * space;
        bool operator==(LiteralKey const &) const = default;
    };

    struct LiteralKeyHash
    {
        std::size_t operator()(LiteralKey const & k) const noexcept
        {
            return std::hash<void const *>{}(k.node) * 31 + std::hash<void const *>{}(k.space);
        }
    };

    Structure const & m;
    Bounds bounds;
    Formula formula;
    std::map<VarSet, std::unique_ptr<Space>> spaces;
    Space * root = nullptr;
    std::unordered_map<Key, bool, KeyHash> memo;
    std::unordered_map<LiteralKey, TeamMask, LiteralKeyHash> literal_truth;
    std::map<Node const *, Formula> expansions;

    Impl(EvalContext const & ctx, Formula const & f) :
        m{ctx.structure()},
        bounds{ctx.bounds()},
        formula{resolve_terms(f, ctx.structure(), ctx.vars())}
    {
        check_context(formula, ctx.vars());
        root = space_for(ctx.vars());
    }

    Space * space_for(VarSet const & vars)
    {
        auto & slot = spaces[vars];
        if (!slot)
            slot = std::make_unique<Space>(Space{make_space(vars, m.size()), {}});
        return slot.get();
    }

    Extension & extension(Space & sp, Variable const & v)
    {
        auto it = sp.ext.find(v);
        if (it != sp.ext.end())
            return it->second;

        VarSet target_vars = sp.space->var_set();
        target_vars.insert(v);
        Space * target = space_for(target_vars);
        AssignmentSpace const & src = *sp.space;
        AssignmentSpace const & dst = *target->space;
        std::size_t const vpos = *dst.position(v);
        std::size_t const base = m.size();

        Extension ext;
        ext.target = target;
        ext.all.assign(src.size(), 0);
        ext.point.assign(src.size() * base, 0);
        for (std::size_t i = 0; i < src.size(); ++i)
        {
            // copy every shared variable's digit, then set v
            std::vector<Element> values(dst.vars().size());
            for (std::size_t p = 0; p < dst.vars().size(); ++p)
            {
                if (p == vpos)
                    continue;
                values[p] = src.digit(i, *src.position(dst.vars()[p]));
            }
            for (Element a = 0; a < base; ++a)
            {
                values[vpos] = a;
                std::size_t const j = dst.index(values);
                ext.point[i * base + a] = static_cast<std::uint32_t>(j);
                ext.all[i] |= TeamMask{1} << j;
            }
        }
        return sp.ext.emplace(v, std::move(ext)).first->second;
    }

    TeamMask truth_mask(Formula const & f, Space const & sp)
    {
        LiteralKey const key{f.id(), &sp};
        if (auto it = literal_truth.find(key); it != literal_truth.end())
            return it->second;
        AssignmentSpace const & s = *sp.space;
        TeamMask mask = 0;
        for (std::size_t i = 0; i < s.size(); ++i)
        {
            auto value_of = [&](Term const & t) -> Element {
                if (!t.is_variable())
                    return constant_of(t, m);
                auto pos = s.position(t.name);
                if (!pos)
                    throw DomainError{"variable '" + t.name + "' is not in the current context"};
                return s.digit(i, *pos);
            };
            if (literal_holds(f, m, value_of))
                mask |= TeamMask{1} << i;
        }
        literal_truth.emplace(key, mask);
        return mask;
    }

    bool dependence(DepAtom const & d, Space const & sp, TeamMask team) const
    {
        AssignmentSpace const & s = *sp.space;
        std::vector<std::size_t> gov;
        for (auto const & w : d.governors)
        {
            auto p = s.position(w);
            if (!p)
                throw DomainError{"governor '" + w + "' is not in the current context"};
            gov.push_back(*p);
        }
        auto vp = s.position(d.dependent);
        if (!vp)
            throw DomainError{"dependent '" + d.dependent + "' is not in the current context"};

        // class key over W (at most 64 classes since |A|^|W| <= |A|^|X| <= 64)
        std::array<int, 64> seen;
        seen.fill(-1);
        bool ok = true;
        for_each_member(team, [&](std::size_t i) {
            std::size_t key = 0;
            std::size_t mul = 1;
            for (std::size_t p : gov)
            {
                key += s.digit(i, p) * mul;
                mul *= s.universe_size();
            }
            int const value = static_cast<int>(s.digit(i, *vp));
            if (seen[key] < 0)
                seen[key] = value;
            else if (seen[key] != value)
                ok = false;
        });
        return ok;
    }

    Formula const & expansion(Formula const & f, Quantified const & q)
    {
        auto it = expansions.find(f.id());
        if (it == expansions.end())
            it = expansions.emplace(f.id(), expand_guard(q)).first;
        return it->second;
    }

    bool sat(Formula const & f, Space & sp, TeamMask team)
    {
        if (is_literal(f))
            return (team & ~truth_mask(f, sp)) == 0;
        if (auto const * d = f.as<DepAtom>())
            return dependence(*d, sp, team);

        Key const key{f.id(), &sp, team};
        if (auto it = memo.find(key); it != memo.end())
            return it->second;
        bool const result = f.as<Binary>() ? binary(*f.as<Binary>(), sp, team) : quantified(f, sp, team);
        memo.emplace(key, result);
        return result;
    }

    bool binary(Binary const & b, Space & sp, TeamMask team)
    {
        switch (b.op)
        {
        case Connective::conj:
            return sat(b.lhs, sp, team) && sat(b.rhs, sp, team);
        case Connective::disj:
            return sat(b.lhs, sp, team) || sat(b.rhs, sp, team);
        case Connective::imp:
        {
            // every subteam satisfying the antecedent satisfies the consequent
            TeamMask u = team;
            while (true)
            {
                if (sat(b.lhs, sp, u) && !sat(b.rhs, sp, u))
                    return false;
                if (u == 0)
                    return true;
                u = (u - 1) & team;
            }
        }
        case Connective::tensor:
        {
            // T = U u V, overlap allowed: U ranges over subteams, V over
            // subteams containing T \ U
            TeamMask u = team;
            while (true)
            {
                if (sat(b.lhs, sp, u))
                {
                    TeamMask const rest = team & ~u;
                    TeamMask extra = u;
                    while (true)
                    {
                        if (sat(b.rhs, sp, rest | extra))
                            return true;
                        if (extra == 0)
                            break;
                        extra = (extra - 1) & u;
                    }
                }
                if (u == 0)
                    return false;
                u = (u - 1) & team;
            }
        }
        case Connective::wand:
        {
            std::size_t const n = sp.space->size();
            if (n >= 63 || (std::uint64_t{1} << n) > bounds.max_teams)
                throw BoundExceeded{"wand team space 2^(|A|^|X|)",
                                    n >= 63 ? ~std::uint64_t{0} : std::uint64_t{1} << n, bounds.max_teams};
            std::uint64_t const count = std::uint64_t{1} << n;
            for (std::uint64_t u = 0; u < count; ++u)
                if (sat(b.lhs, sp, u) && !sat(b.rhs, sp, team | u))
                    return false;
            return true;
        }
        }
        return false;
    }

    bool quantified(Formula const & f, Space & sp, TeamMask team)
    {
        auto const & q = *f.as<Quantified>();
        if (q.guarded)
            return sat(expansion(f, q), sp, team);

        Extension & ext = extension(sp, q.var);
        if (q.kind == Quantifier::forall)
        {
            TeamMask extended = 0;
            for_each_member(team, [&](std::size_t i) { extended |= ext.all[i]; });
            return sat(q.body, *ext.target, extended);
        }

        // exists: search f : T -> A
        std::vector<std::size_t> members;
        for_each_member(team, [&](std::size_t i) { members.push_back(i); });
        std::size_t const base = m.size();
        std::uint64_t functions = 1;
        for (std::size_t k = 0; k < members.size(); ++k)
        {
            if (functions > bounds.max_functions / base)
                throw BoundExceeded{"existential choice functions |A|^|T|", functions * base, bounds.max_functions};
            functions *= base;
        }
        std::vector<Element> choice(members.size(), 0);
        while (true)
        {
            TeamMask extended = 0;
            for (std::size_t k = 0; k < members.size(); ++k)
                extended |= TeamMask{1} << ext.point[members[k] * base + choice[k]];
            if (sat(q.body, *ext.target, extended))
                return true;
            std::size_t k = 0;
            while (k < choice.size() && ++choice[k] == base)
                choice[k++] = 0;
            if (k == choice.size())
                return false;
        }
    }
};

Evaluator::Evaluator(EvalContext const & ctx, Formula const & f) : impl_{std::make_unique<Impl>(ctx, f)} {}
Evaluator::~Evaluator() = default;
Evaluator::Evaluator(Evaluator &&) noexcept = default;
Evaluator & Evaluator::operator=(Evaluator &&) noexcept = default;

bool Evaluator::satisfies(Team const & t)
{
    if (!(*t.space() == *impl_->root->space))
        throw DomainError{"team domain differs from the variable context"};
    return impl_->sat(impl_->formula, *impl_->root, t.mask());
}

bool Evaluator::satisfies(TeamMask t)
{
    return impl_->sat(impl_->formula, *impl_->root, t & impl_->root->space->full_mask());
}

SpacePtr const & Evaluator::space() const
{
    return impl_->root->space;
}

Formula const & Evaluator::formula() const
{
    return impl_->formula;
}

bool satisfies(EvalContext const & ctx, Team const & t, Formula const & f)
{
    Evaluator ev{ctx, f};
    return ev.satisfies(t);
}

std::string_view to_string(TruthValue v) noexcept
{
    switch (v)
    {
    case TruthValue::false_value:
        return "FALSE";
    case TruthValue::weak:
        return "WEAK-TRUE-EMPTY-ONLY";
    case TruthValue::true_value:
        return "TRUE";
    }
    return "?";
}

TruthValue truth_value(Structure const & m, Formula const & sentence, Bounds bounds)
{
    if (!open_vars(sentence, m).empty())
        throw NotASentence{"formula has free variables"};
    Formula const g = resolve_terms(sentence, m, {});
    Evaluator ev{EvalContext{m, {}, bounds}, g};
    bool const empty = ev.satisfies(TeamMask{0});
    bool const unit = ev.satisfies(TeamMask{1});
    if (empty && unit)
        return TruthValue::true_value;
    if (empty)
        return TruthValue::weak;
    if (unit)
        throw std::logic_error{"sentence denotation is not downward closed"};
    return TruthValue::false_value;
}

bool dep_holds(Team const & t, VarSet const & w, Variable const & v)
{
    auto const members = t.members();
    for (auto const & s : members)
        for (auto const & u : members)
            if (equiv_w(s, u, w) && s.at(v) != u.at(v))
                return false;
    return true;
}

bool dep_holds_functional(Team const & t, VarSet const & w, Variable const & v, std::uint64_t max_functions)
{
    std::size_t const base = t.space()->universe_size();
    std::vector<Variable> const gov(w.begin(), w.end());
    for (auto const & g : gov)
        if (!t.space()->position(g))
            throw DomainError{"governor '" + g + "' is not in the team's domain"};
    if (!t.space()->position(v))
        throw DomainError{"dependent '" + v + "' is not in the team's domain"};

    std::size_t classes = 1;
    for (std::size_t i = 0; i < gov.size(); ++i)
        classes *= base;
    std::uint64_t functions = 1;
    for (std::size_t i = 0; i < classes; ++i)
    {
        if (functions > max_functions / base)
            throw BoundExceeded{"functions A^W -> A", functions * base, max_functions};
        functions *= base;
    }

    auto const members = t.members();
    std::vector<Element> g(classes, 0); // g as a table over W-tuples in mixed radix
    for (std::uint64_t n = 0; n < functions; ++n)
    {
        bool all = true;
        for (auto const & s : members)
        {
            std::size_t key = 0;
            std::size_t mul = 1;
            for (auto const & x : gov)
            {
                key += s.at(x) * mul;
                mul *= base;
            }
            if (g[key] != s.at(v))
            {
                all = false;
                break;
            }
        }
        if (all)
            return true;
        std::size_t k = 0;
        while (k < g.size() && ++g[k] == base)
            g[k++] = 0;
    }
    return false;
}

} // namespace teamsem
