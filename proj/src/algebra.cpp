#include <teamsem/algebra.hpp>

#include <algorithm>
#include <array>
#include <bit>
#include <memory>
#include <sstream>
#include <stdexcept>

namespace teamsem
{

namespace
{

constexpr std::array<std::uint64_t, 6> low_half = {
    0x5555555555555555ULL, 0x3333333333333333ULL, 0x0F0F0F0F0F0F0F0FULL,
    0x00FF00FF00FF00FFULL, 0x0000FFFF0000FFFFULL, 0x00000000FFFFFFFFULL,
};

std::size_t word_count(std::size_t n)
{
    return n <= 6 ? 1 : std::size_t{1} << (n - 6);
}

void require_same(SpacePtr const & a, SpacePtr const & b, char const * what)
{
    if (!(*a == *b))
        throw DomainMismatch{std::string{what} + ": operands range over different variable sets"};
}

void require_team_space(AssignmentSpace const & s, std::uint64_t max_teams, char const * what)
{
    std::size_t const n = s.size();
    if (n > DenseTeamSet::max_assignments || (std::uint64_t{1} << n) > max_teams)
        throw BoundExceeded{what, n >= 63 ? ~std::uint64_t{0} : std::uint64_t{1} << n, max_teams};
}

SpacePtr without(SpacePtr const & s, Variable const & v)
{
    VarSet vars = s->var_set();
    vars.erase(v);
    return make_space(std::move(vars), s->universe_size());
}

SpacePtr with(SpacePtr const & s, Variable const & v)
{
    VarSet vars = s->var_set();
    vars.insert(v);
    return make_space(std::move(vars), s->universe_size());
}

} // namespace

// ---------------------------------------------------------------------------
// DenseTeamSet

DenseTeamSet::DenseTeamSet(std::size_t assignments) : n_{assignments}
{
    if (n_ > max_assignments)
        throw BoundExceeded{"dense team set 2^(|A|^|X|)", n_ >= 63 ? ~std::uint64_t{0} : std::uint64_t{1} << n_,
                            std::uint64_t{1} << max_assignments};
    words_.assign(word_count(n_), 0);
}

void DenseTeamSet::trim() noexcept
{
    if (n_ < 6)
        words_[0] &= (std::uint64_t{1} << (std::size_t{1} << n_)) - 1;
}

void DenseTeamSet::fill() noexcept
{
    std::fill(words_.begin(), words_.end(), ~std::uint64_t{0});
    trim();
}

void DenseTeamSet::complement() noexcept
{
    for (auto & w : words_)
        w = ~w;
    trim();
}

DenseTeamSet & DenseTeamSet::operator&=(DenseTeamSet const & o) noexcept
{
    for (std::size_t i = 0; i < words_.size(); ++i)
        words_[i] &= o.words_[i];
    return *this;
}

DenseTeamSet & DenseTeamSet::operator|=(DenseTeamSet const & o) noexcept
{
    for (std::size_t i = 0; i < words_.size(); ++i)
        words_[i] |= o.words_[i];
    return *this;
}

void DenseTeamSet::close_downward() noexcept
{
    for (std::size_t i = 0; i < n_; ++i)
    {
        if (i < 6)
        {
            std::size_t const s = std::size_t{1} << i;
            for (auto & w : words_)
                w |= (w >> s) & low_half[i];
        }
        else
        {
            std::size_t const k = std::size_t{1} << (i - 6);
            for (std::size_t j = 0; j < words_.size(); ++j)
                if (!(j & k))
                    words_[j] |= words_[j | k];
        }
    }
}

void DenseTeamSet::interior_downward() noexcept
{
    for (std::size_t i = 0; i < n_; ++i)
    {
        if (i < 6)
        {
            std::size_t const s = std::size_t{1} << i;
            for (auto & w : words_)
                w &= (w << s) | low_half[i];
        }
        else
        {
            std::size_t const k = std::size_t{1} << (i - 6);
            for (std::size_t j = 0; j < words_.size(); ++j)
                if (!(j & k))
                    words_[j | k] &= words_[j];
        }
    }
}

bool DenseTeamSet::is_downward_closed() const
{
    DenseTeamSet closed = *this;
    closed.close_downward();
    return closed == *this;
}

std::vector<TeamMask> DenseTeamSet::maximal() const
{
    // a member of a lower set is maximal iff no one-element extension is a member
    std::vector<std::uint64_t> above(words_.size(), 0);
    for (std::size_t i = 0; i < n_; ++i)
    {
        if (i < 6)
        {
            std::size_t const s = std::size_t{1} << i;
            for (std::size_t j = 0; j < words_.size(); ++j)
                above[j] |= (words_[j] >> s) & low_half[i];
        }
        else
        {
            std::size_t const k = std::size_t{1} << (i - 6);
            for (std::size_t j = 0; j < words_.size(); ++j)
                if (!(j & k))
                    above[j] |= words_[j | k];
        }
    }
    std::vector<TeamMask> out;
    for (std::size_t w = 0; w < words_.size(); ++w)
        for (std::uint64_t bits = words_[w] & ~above[w]; bits; bits &= bits - 1)
            out.push_back(static_cast<TeamMask>((w << 6) | static_cast<std::size_t>(std::countr_zero(bits))));
    return out;
}

std::uint64_t DenseTeamSet::count() const noexcept
{
    std::uint64_t c = 0;
    for (auto w : words_)
        c += static_cast<std::uint64_t>(std::popcount(w));
    return c;
}

bool DenseTeamSet::subset_of(DenseTeamSet const & o) const noexcept
{
    for (std::size_t i = 0; i < words_.size(); ++i)
        if (words_[i] & ~o.words_[i])
            return false;
    return true;
}

// ---------------------------------------------------------------------------
// LowerSet

LowerSet LowerSet::from_generators(SpacePtr space, std::span<TeamMask const> generators)
{
    std::vector<TeamMask> gens(generators.begin(), generators.end());
    for (auto & g : gens)
        g &= space->full_mask();
    std::sort(gens.begin(), gens.end(), [](TeamMask a, TeamMask b) {
        int const pa = std::popcount(a);
        int const pb = std::popcount(b);
        return pa != pb ? pa > pb : a < b;
    });
    gens.erase(std::unique(gens.begin(), gens.end()), gens.end());

    LowerSet out{std::move(space)};
    for (TeamMask g : gens)
    {
        bool covered = false;
        for (TeamMask m : out.maximal_)
            if ((g & ~m) == 0)
            {
                covered = true;
                break;
            }
        if (!covered)
            out.maximal_.push_back(g);
    }
    std::sort(out.maximal_.begin(), out.maximal_.end());
    return out;
}

LowerSet LowerSet::from_dense(SpacePtr space, DenseTeamSet const & members)
{
    if (members.assignments() != space->size())
        throw DomainMismatch{"dense team set does not match the assignment space"};
    if (!members.is_downward_closed())
        throw std::logic_error{"team set is not downward closed"};
    LowerSet out{std::move(space)};
    out.maximal_ = members.maximal();
    return out;
}

LowerSet LowerSet::top(SpacePtr space)
{
    LowerSet out{std::move(space)};
    out.maximal_.push_back(out.space_->full_mask());
    return out;
}

LowerSet LowerSet::unit(SpacePtr space)
{
    LowerSet out{std::move(space)};
    out.maximal_.push_back(0);
    return out;
}

std::vector<Team> LowerSet::maximal_teams() const
{
    std::vector<Team> out;
    for (TeamMask m : maximal_)
        out.emplace_back(space_, m);
    return out;
}

bool LowerSet::contains(TeamMask t) const noexcept
{
    for (TeamMask m : maximal_)
        if ((t & ~m) == 0)
            return true;
    return false;
}

bool LowerSet::contains(Team const & t) const
{
    if (!(*t.space() == *space_))
        throw DomainMismatch{"team and lower set range over different variable sets"};
    return contains(t.mask());
}

bool LowerSet::subset_of(LowerSet const & o) const
{
    require_same(space_, o.space_, "inclusion");
    for (TeamMask m : maximal_)
        if (!o.contains(m))
            return false;
    return true;
}

DenseTeamSet LowerSet::dense() const
{
    DenseTeamSet out{space_->size()};
    for (TeamMask m : maximal_)
        out.set(m);
    out.close_downward();
    return out;
}

LowerSet down(SpacePtr space, std::span<Team const> teams)
{
    std::vector<TeamMask> gens;
    for (auto const & t : teams)
    {
        if (!(*t.space() == *space))
            throw DomainMismatch{"down: teams range over different variable sets"};
        gens.push_back(t.mask());
    }
    return LowerSet::from_generators(std::move(space), gens);
}

LowerSet meet(LowerSet const & a, LowerSet const & b)
{
    require_same(a.space(), b.space(), "meet");
    std::vector<TeamMask> gens;
    for (TeamMask m : a.maximal())
        for (TeamMask n : b.maximal())
            gens.push_back(m & n);
    return LowerSet::from_generators(a.space(), gens);
}

LowerSet join(LowerSet const & a, LowerSet const & b)
{
    require_same(a.space(), b.space(), "join");
    std::vector<TeamMask> gens(a.maximal().begin(), a.maximal().end());
    gens.insert(gens.end(), b.maximal().begin(), b.maximal().end());
    return LowerSet::from_generators(a.space(), gens);
}

LowerSet tensor(LowerSet const & a, LowerSet const & b)
{
    require_same(a.space(), b.space(), "tensor");
    std::vector<TeamMask> gens;
    for (TeamMask m : a.maximal())
        for (TeamMask n : b.maximal())
            gens.push_back(m | n);
    return LowerSet::from_generators(a.space(), gens);
}

LowerSet wand(LowerSet const & a, LowerSet const & b)
{
    require_same(a.space(), b.space(), "wand");
    // b is downward closed, so testing the maximal elements of a suffices
    DenseTeamSet const bd = b.dense();
    DenseTeamSet out{a.space()->size()};
    for (TeamMask m = 0; m < out.team_count(); ++m)
    {
        bool ok = true;
        for (TeamMask n : a.maximal())
            if (!bd.test(m | n))
            {
                ok = false;
                break;
            }
        if (ok)
            out.set(m);
    }
    return LowerSet::from_dense(a.space(), out);
}

LowerSet heyting(LowerSet const & a, LowerSet const & b)
{
    require_same(a.space(), b.space(), "heyting");
    DenseTeamSet d = a.dense();
    d.complement();
    d |= b.dense();
    d.interior_downward();
    return LowerSet::from_dense(a.space(), d);
}

// ---------------------------------------------------------------------------
// projections

Projection::Projection(SpacePtr source, Variable v) :
    source_{std::move(source)},
    var_{std::move(v)},
    base_{source_->universe_size()}
{
    auto const vpos = source_->position(var_);
    if (!vpos)
        throw DomainError{"projection: variable '" + var_ + "' is not in the source domain"};
    target_ = without(source_, var_);

    image_.resize(source_->size());
    fiber_.assign(target_->size(), 0);
    points_.assign(target_->size() * base_, 0);
    std::vector<Element> tv(target_->vars().size());
    for (std::size_t i = 0; i < source_->size(); ++i)
    {
        for (std::size_t p = 0; p < target_->vars().size(); ++p)
            tv[p] = source_->digit(i, *source_->position(target_->vars()[p]));
        std::size_t const j = target_->index(tv);
        image_[i] = j;
        fiber_[j] |= TeamMask{1} << i;
        points_[j * base_ + source_->digit(i, *vpos)] = i;
    }
}

TeamMask Projection::exists(TeamMask s) const
{
    TeamMask out = 0;
    for_each_member(s, [&](std::size_t i) { out |= TeamMask{1} << image_[i]; });
    return out;
}

TeamMask Projection::forall(TeamMask s) const
{
    TeamMask out = 0;
    for (std::size_t j = 0; j < fiber_.size(); ++j)
        if ((fiber_[j] & ~s) == 0)
            out |= TeamMask{1} << j;
    return out;
}

TeamMask Projection::preimage(TeamMask t) const
{
    TeamMask out = 0;
    for_each_member(t, [&](std::size_t j) { out |= fiber_[j]; });
    return out;
}

Team exists_pi(Team const & s, Variable const & v)
{
    Projection const p{s.space(), v};
    return Team{p.target(), p.exists(s.mask())};
}

Team forall_pi(Team const & s, Variable const & v)
{
    Projection const p{s.space(), v};
    return Team{p.target(), p.forall(s.mask())};
}

Team preimage_pi(Team const & t, Variable const & v)
{
    if (t.space()->position(v))
        throw DomainError{"preimage: variable '" + v + "' is already in the domain"};
    Projection const p{with(t.space(), v), v};
    return Team{p.source(), p.preimage(t.mask())};
}

SetOperator exists_pi_op(SpacePtr source, Variable v)
{
    auto p = std::make_shared<Projection const>(std::move(source), v);
    return {"exists(pi_" + v + ")", p->source(), p->target(), [p](TeamMask s) { return p->exists(s); }};
}

SetOperator forall_pi_op(SpacePtr source, Variable v)
{
    auto p = std::make_shared<Projection const>(std::move(source), v);
    return {"forall(pi_" + v + ")", p->source(), p->target(), [p](TeamMask s) { return p->forall(s); }};
}

SetOperator preimage_pi_op(SpacePtr target, Variable v)
{
    if (target->position(v))
        throw DomainError{"preimage: variable '" + v + "' is already in the domain"};
    auto p = std::make_shared<Projection const>(with(target, v), v);
    return {"pi_" + v + "^-1", p->target(), p->source(), [p](TeamMask t) { return p->preimage(t); }};
}

SetOperator compose(SetOperator const & outer, SetOperator const & inner)
{
    require_same(inner.target, outer.source, "compose");
    return {outer.name + " . " + inner.name, inner.source, outer.target,
            [f = outer.apply, g = inner.apply](TeamMask s) { return f(g(s)); }};
}

TeamOperator lift(SetOperator const & h)
{
    return {"L(" + h.name + ")", h.source, h.target, [h](LowerSet const & u) {
                require_same(u.space(), h.source, "lift");
                std::vector<TeamMask> gens;
                u.dense().for_each([&](TeamMask t) { gens.push_back(h.apply(t)); });
                return LowerSet::from_generators(h.target, gens);
            }};
}

TeamOperator compose(TeamOperator const & outer, TeamOperator const & inner)
{
    require_same(inner.target, outer.source, "compose");
    return {outer.name + " . " + inner.name, inner.source, outer.target,
            [f = outer.apply, g = inner.apply](LowerSet const & u) { return f(g(u)); }};
}

// ---------------------------------------------------------------------------
// quantifiers on lower sets

LowerSet exists_h(LowerSet const & u, Variable const & v, Bounds const & bounds)
{
    Projection const p{u.space(), v};
    AssignmentSpace const & target = *p.target();
    require_team_space(target, bounds.max_teams, "exists_H team space 2^(|A|^|X|)");
    std::size_t const base = target.universe_size();

    DenseTeamSet const ud = u.dense();
    DenseTeamSet out{target.size()};
    std::vector<std::size_t> members;
    std::vector<Element> choice;
    for (TeamMask t = 0; t < out.team_count(); ++t)
    {
        members.clear();
        for_each_member(t, [&](std::size_t j) { members.push_back(j); });
        std::uint64_t functions = 1;
        for (std::size_t k = 0; k < members.size(); ++k)
        {
            if (functions > bounds.max_functions / base)
                throw BoundExceeded{"exists_H choice functions |A|^|T|", functions * base, bounds.max_functions};
            functions *= base;
        }
        choice.assign(members.size(), 0);
        while (true)
        {
            TeamMask extended = 0;
            for (std::size_t k = 0; k < members.size(); ++k)
                extended |= TeamMask{1} << p.point(members[k], choice[k]);
            if (ud.test(extended))
            {
                out.set(t);
                break;
            }
            std::size_t k = 0;
            while (k < choice.size() && ++choice[k] == base)
                choice[k++] = 0;
            if (k == choice.size())
                break;
        }
    }
    return LowerSet::from_dense(p.target(), out);
}

LowerSet forall_h(LowerSet const & u, Variable const & v, Bounds const & bounds)
{
    Projection const p{u.space(), v};
    require_team_space(*p.target(), bounds.max_teams, "forall_H team space 2^(|A|^|X|)");
    DenseTeamSet const ud = u.dense();
    DenseTeamSet out{p.target()->size()};
    for (TeamMask t = 0; t < out.team_count(); ++t)
        if (ud.test(p.preimage(t)))
            out.set(t);
    return LowerSet::from_dense(p.target(), out);
}

LowerSet subst_h(LowerSet const & u, Variable const & v)
{
    if (u.space()->position(v))
        throw DomainError{"subst_H: variable '" + v + "' is already in the domain"};
    Projection const p{with(u.space(), v), v};
    std::vector<TeamMask> gens;
    for (TeamMask m : u.maximal())
        gens.push_back(p.preimage(m));
    return LowerSet::from_generators(p.source(), gens);
}

TeamOperator exists_h_op(SpacePtr source, Variable v, Bounds bounds)
{
    SpacePtr target = without(source, v);
    return {"exists_H(" + v + ")", std::move(source), std::move(target),
            [v, bounds](LowerSet const & u) { return exists_h(u, v, bounds); }};
}

TeamOperator forall_h_op(SpacePtr source, Variable v, Bounds bounds)
{
    SpacePtr target = without(source, v);
    return {"forall_H(" + v + ")", std::move(source), std::move(target),
            [v, bounds](LowerSet const & u) { return forall_h(u, v, bounds); }};
}

TeamOperator subst_h_op(SpacePtr target, Variable v)
{
    SpacePtr source = with(target, v);
    return {"H(pi_" + v + ")", std::move(target), std::move(source),
            [v](LowerSet const & u) { return subst_h(u, v); }};
}

LowerSet dep_lowerset(VarSet const & w, Variable const & v, VarSet const & vars, Structure const & m,
                      Bounds const & bounds)
{
    SpacePtr space = make_space(vars, m.size());
    AssignmentSpace const & s = *space;
    std::vector<std::size_t> gov;
    for (auto const & x : w)
    {
        auto p = s.position(x);
        if (!p)
            throw DomainError{"D_W: governor '" + x + "' is not in the variable set"};
        gov.push_back(*p);
    }
    auto const vp = s.position(v);
    if (!vp)
        throw DomainError{"D_W: dependent '" + v + "' is not in the variable set"};
    require_team_space(s, bounds.max_teams, "D_W team space 2^(|A|^|X|)");

    // conflict[i]: assignments agreeing with i on W but not on v
    std::vector<TeamMask> conflict(s.size(), 0);
    for (std::size_t i = 0; i < s.size(); ++i)
        for (std::size_t j = 0; j < s.size(); ++j)
        {
            bool agree = true;
            for (std::size_t p : gov)
                agree = agree && s.digit(i, p) == s.digit(j, p);
            if (agree && s.digit(i, *vp) != s.digit(j, *vp))
                conflict[i] |= TeamMask{1} << j;
        }

    DenseTeamSet out{s.size()};
    for (TeamMask t = 0; t < out.team_count(); ++t)
    {
        bool ok = true;
        for_each_member(t, [&](std::size_t i) { ok = ok && (conflict[i] & t) == 0; });
        if (ok)
            out.set(t);
    }
    return LowerSet::from_dense(std::move(space), out);
}

LowerSet guarded_exists_op(LowerSet const & u, VarSet const & w, Variable const & v, Structure const & m,
                           Bounds const & bounds)
{
    LowerSet const d = dep_lowerset(w, v, u.vars(), m, bounds);
    return exists_h(meet(d, u), v, bounds);
}

LowerSet guarded_forall_op(LowerSet const & u, VarSet const & w, Variable const & v, Structure const & m,
                           Bounds const & bounds)
{
    LowerSet const d = dep_lowerset(w, v, u.vars(), m, bounds);
    return forall_h(heyting(d, u), v, bounds);
}

// ---------------------------------------------------------------------------
// denotations

Denoter::Denoter(Structure const & m, Bounds bounds, Denoter const * shared) :
    m_{m},
    bounds_{bounds},
    shared_{shared}
{}

LowerSet Denoter::denote(VarSet const & vars, Formula const & f)
{
    Formula const g = resolve_terms(f, m_, vars);
    for (auto const & v : free_vars(g))
        if (!vars.contains(v))
            throw DomainError{"free variable '" + v + "' is not in the variable context"};
    return rec(g, vars);
}

LowerSet const * Denoter::lookup(Formula const & f, VarSet const & vars) const
{
    if (auto it = cache_.find(f.id()); it != cache_.end())
        for (auto const & e : it->second)
            if (e.vars == vars)
                return &e.value;
    return shared_ ? shared_->lookup(f, vars) : nullptr;
}

LowerSet Denoter::rec(Formula const & f, VarSet const & vars)
{
    if (auto const * hit = lookup(f, vars))
        return *hit;

    LowerSet result = [&]() -> LowerSet {
        if (is_literal(f))
        {
            SpacePtr space = make_space(vars, m_.size());
            TeamMask flat = 0;
            for (std::size_t i = 0; i < space->size(); ++i)
                if (literal_holds(m_, f, Assignment{space->vars(), space->values(i)}))
                    flat |= TeamMask{1} << i;
            return LowerSet::from_generators(std::move(space), std::span<TeamMask const>{&flat, 1});
        }
        if (auto const * d = f.as<DepAtom>())
            return dep_lowerset(VarSet(d->governors.begin(), d->governors.end()), d->dependent, vars, m_, bounds_);
        if (auto const * b = f.as<Binary>())
        {
            LowerSet const l = rec(b->lhs, vars);
            LowerSet const r = rec(b->rhs, vars);
            switch (b->op)
            {
            case Connective::conj:
                return meet(l, r);
            case Connective::disj:
                return join(l, r);
            case Connective::imp:
                return heyting(l, r);
            case Connective::tensor:
                return tensor(l, r);
            case Connective::wand:
                require_team_space(*l.space(), bounds_.max_teams, "wand team space 2^(|A|^|X|)");
                return wand(l, r);
            }
        }
        return quantifier(*f.as<Quantified>(), vars);
    }();

    cache_[f.id()].push_back(Entry{vars, f, result});
    return result;
}

LowerSet Denoter::quantifier(Quantified const & q, VarSet const & vars)
{
    VarSet inner = vars;
    inner.insert(q.var);
    LowerSet body = rec(q.body, inner);
    if (q.guarded)
    {
        LowerSet const d = dep_lowerset(VarSet(q.governors.begin(), q.governors.end()), q.var, inner, m_, bounds_);
        body = q.kind == Quantifier::exists ? meet(d, body) : heyting(d, body);
    }
    LowerSet projected = q.kind == Quantifier::exists ? exists_h(body, q.var, bounds_) : forall_h(body, q.var, bounds_);
    // rebinding a variable of the context: T[v -> A] = pi^-1(pi(T))
    if (vars.contains(q.var))
        return subst_h(projected, q.var);
    return projected;
}

LowerSet denote(Structure const & m, VarSet const & vars, Formula const & f, Bounds const & bounds)
{
    Denoter d{m, bounds};
    return d.denote(vars, f);
}

// ---------------------------------------------------------------------------
// satisfaction inside one team

namespace
{

DenseTeamSet dense_tensor(DenseTeamSet const & a, DenseTeamSet const & b)
{
    DenseTeamSet out{a.assignments()};
    auto const am = a.maximal();
    auto const bm = b.maximal();
    for (TeamMask x : am)
        for (TeamMask y : bm)
            out.set(x | y);
    out.close_downward();
    return out;
}

DenseTeamSet local_rec(Structure const & m, AssignmentSpace const & space, std::vector<std::size_t> const & members,
                       Formula const & f)
{
    std::size_t const k = members.size();
    DenseTeamSet out{k};
    if (is_literal(f))
    {
        TeamMask flat = 0;
        for (std::size_t i = 0; i < k; ++i)
            if (literal_holds(m, f, Assignment{space.vars(), space.values(members[i])}))
                flat |= TeamMask{1} << i;
        out.set(flat);
        out.close_downward();
        return out;
    }
    if (auto const * d = f.as<DepAtom>())
    {
        std::vector<std::size_t> gov;
        for (auto const & w : d->governors)
        {
            auto p = space.position(w);
            if (!p)
                throw DomainError{"governor '" + w + "' is not in the team's domain"};
            gov.push_back(*p);
        }
        auto const vp = space.position(d->dependent);
        if (!vp)
            throw DomainError{"dependent '" + d->dependent + "' is not in the team's domain"};
        std::vector<TeamMask> conflict(k, 0);
        for (std::size_t i = 0; i < k; ++i)
            for (std::size_t j = 0; j < k; ++j)
            {
                bool agree = true;
                for (std::size_t p : gov)
                    agree = agree && space.digit(members[i], p) == space.digit(members[j], p);
                if (agree && space.digit(members[i], *vp) != space.digit(members[j], *vp))
                    conflict[i] |= TeamMask{1} << j;
            }
        // conflicts are symmetric: u is conflict-free iff u minus its lowest
        // member is and that member conflicts with nothing in u
        if (k < 6)
        {
            out.set(0);
            for (TeamMask u = 1; u < out.team_count(); ++u)
                if (out.test(u & (u - 1)) && (conflict[static_cast<std::size_t>(std::countr_zero(u))] & u) == 0)
                    out.set(u);
            return out;
        }
        // word h holds the subteams whose members >= 6 are the bits of h: the
        // conflict-free low patterns minus those meeting a conflict of h
        std::uint64_t low_free = 1;
        for (TeamMask u = 1; u < 64; ++u)
            if ((low_free >> (u & (u - 1)) & 1) && (conflict[static_cast<std::size_t>(std::countr_zero(u))] & u) == 0)
                low_free |= std::uint64_t{1} << u;
        std::array<std::uint64_t, 6> with_member{};
        for (std::size_t i = 0; i < 6; ++i)
            for (TeamMask u = 0; u < 64; ++u)
                if (u >> i & 1)
                    with_member[i] |= std::uint64_t{1} << u;
        std::size_t const words = std::size_t{1} << (k - 6);
        std::vector<std::uint8_t> high_free(words, 0);
        std::vector<std::uint8_t> blocked(words, 0); // low members conflicting with h
        high_free[0] = 1;
        out.set_word(0, low_free);
        for (std::size_t h = 1; h < words; ++h)
        {
            std::size_t const j = static_cast<std::size_t>(std::countr_zero(h)) + 6;
            std::size_t const rest = h & (h - 1);
            TeamMask const upper = static_cast<TeamMask>(h) << 6;
            high_free[h] = high_free[rest] && (conflict[j] & upper) == 0;
            blocked[h] = static_cast<std::uint8_t>(blocked[rest] | (conflict[j] & 63));
            if (!high_free[h])
                continue;
            std::uint64_t bits = low_free;
            for (std::size_t i = 0; i < 6; ++i)
                if (blocked[h] >> i & 1)
                    bits &= ~with_member[i];
            out.set_word(h, bits);
        }
        return out;
    }
    if (auto const * b = f.as<Binary>())
    {
        if (b->op == Connective::wand)
            throw FragmentError{"the wand is not determined by the subteams of a team"};
        DenseTeamSet l = local_rec(m, space, members, b->lhs);
        DenseTeamSet const r = local_rec(m, space, members, b->rhs);
        switch (b->op)
        {
        case Connective::conj:
            l &= r;
            return l;
        case Connective::disj:
            l |= r;
            return l;
        case Connective::imp:
            l.complement();
            l |= r;
            l.interior_downward();
            return l;
        case Connective::tensor:
            return dense_tensor(l, r);
        case Connective::wand:
            break;
        }
    }
    throw FragmentError{"quantifiers are not determined by the subteams of a team"};
}

} // namespace

DenseTeamSet subteam_denotation(Structure const & m, Team const & t, Formula const & f)
{
    Formula const g = resolve_terms(f, m, t.domain());
    for (auto const & v : free_vars(g))
        if (!t.space()->position(v))
            throw DomainError{"free variable '" + v + "' is not in the team's domain"};
    std::vector<std::size_t> members;
    for_each_member(t.mask(), [&](std::size_t i) { members.push_back(i); });
    return local_rec(m, *t.space(), members, g);
}

// ---------------------------------------------------------------------------
// lattice enumeration and adjunctions

std::vector<LowerSet> all_lower_sets(SpacePtr const & space, std::uint64_t cap)
{
    std::size_t const n = space->size();
    DenseTeamSet current{n};
    std::uint64_t const teams = current.team_count();
    std::vector<LowerSet> out;

    // decide teams in increasing mask order; a team may join only when every
    // one-smaller subteam already has
    auto rec = [&](auto & self, TeamMask t) -> void {
        if (t == teams)
        {
            if (out.size() == cap)
                throw BoundExceeded{"lower sets of the team lattice", cap + 1, cap};
            out.push_back(LowerSet::from_dense(space, current));
            return;
        }
        self(self, t + 1);
        bool closed = true;
        for_each_member(t, [&](std::size_t i) { closed = closed && current.test(t & ~(TeamMask{1} << i)); });
        if (closed)
        {
            current.set(t);
            self(self, t + 1);
            current.reset(t);
        }
    };
    rec(rec, 0);
    return out;
}

namespace
{

Structure const & names_for(std::size_t base)
{
    thread_local std::vector<std::unique_ptr<Structure>> cache;
    if (cache.size() <= base)
        cache.resize(base + 1);
    if (!cache[base])
        cache[base] = std::make_unique<Structure>(Structure::uniform(base));
    return *cache[base];
}

/// First (i, j) in row-major order where leq(lp[i], qs[j]) and leq(ps[i], rq[j]) differ.
template <typename Elem, typename Leq>
std::optional<std::pair<std::size_t, std::size_t>> first_failure(std::vector<Elem> const & ps,
                                                                 std::vector<Elem> const & qs,
                                                                 std::vector<Elem> const & lp,
                                                                 std::vector<Elem> const & rq, Leq && leq,
                                                                 Execution exec)
{
    constexpr std::size_t none = ~std::size_t{0};
    std::vector<std::size_t> first_bad(ps.size(), none);
    for_each_index(ps.size(), exec, [&](std::uint64_t i) {
        for (std::size_t j = 0; j < qs.size(); ++j)
            if (leq(lp[i], qs[j]) != leq(ps[i], rq[j]))
            {
                first_bad[i] = j;
                return;
            }
    });
    for (std::size_t i = 0; i < ps.size(); ++i)
        if (first_bad[i] != none)
            return std::make_pair(i, first_bad[i]);
    return std::nullopt;
}

void check_pair(SpacePtr const & ls, SpacePtr const & lt, SpacePtr const & rs, SpacePtr const & rt)
{
    if (!(*lt == *rs) || !(*rt == *ls))
        throw DomainMismatch{"adjunction: the operators do not run between the same two lattices"};
}

} // namespace

AdjunctionResult check_adjunction(TeamOperator const & left, TeamOperator const & right, Execution exec)
{
    check_pair(left.source, left.target, right.source, right.target);
    auto const ps = all_lower_sets(left.source);
    auto const qs = all_lower_sets(left.target);

    std::vector<DenseTeamSet> pd(ps.size(), DenseTeamSet{0}), qd(qs.size(), DenseTeamSet{0});
    std::vector<DenseTeamSet> lp(ps.size(), DenseTeamSet{0}), rq(qs.size(), DenseTeamSet{0});
    for_each_index(ps.size(), exec, [&](std::uint64_t i) {
        pd[i] = ps[i].dense();
        lp[i] = left(ps[i]).dense();
    });
    for_each_index(qs.size(), exec, [&](std::uint64_t j) {
        qd[j] = qs[j].dense();
        rq[j] = right(qs[j]).dense();
    });

    AdjunctionResult r{true, ps.size(), qs.size(), static_cast<std::uint64_t>(ps.size()) * qs.size(), std::nullopt};
    auto const bad = first_failure(
        pd, qd, lp, rq, [](DenseTeamSet const & a, DenseTeamSet const & b) { return a.subset_of(b); }, exec);
    if (bad)
    {
        auto const & names = names_for(left.source->universe_size());
        r.holds = false;
        r.witness = std::make_pair(render(ps[bad->first], names), render(qs[bad->second], names));
    }
    return r;
}

AdjunctionResult check_adjunction(SetOperator const & left, SetOperator const & right, Execution exec)
{
    check_pair(left.source, left.target, right.source, right.target);
    require_team_space(*left.source, std::uint64_t{1} << DenseTeamSet::max_assignments, "adjunction source");
    require_team_space(*left.target, std::uint64_t{1} << DenseTeamSet::max_assignments, "adjunction target");
    std::vector<TeamMask> ps(std::size_t{1} << left.source->size());
    std::vector<TeamMask> qs(std::size_t{1} << left.target->size());
    for (std::size_t i = 0; i < ps.size(); ++i)
        ps[i] = i;
    for (std::size_t j = 0; j < qs.size(); ++j)
        qs[j] = j;
    std::vector<TeamMask> lp(ps.size()), rq(qs.size());
    for_each_index(ps.size(), exec, [&](std::uint64_t i) { lp[i] = left.apply(ps[i]); });
    for_each_index(qs.size(), exec, [&](std::uint64_t j) { rq[j] = right.apply(qs[j]); });

    AdjunctionResult r{true, ps.size(), qs.size(), static_cast<std::uint64_t>(ps.size()) * qs.size(), std::nullopt};
    auto const bad = first_failure(
        ps, qs, lp, rq, [](TeamMask a, TeamMask b) { return (a & ~b) == 0; }, exec);
    if (bad)
    {
        auto const & names = names_for(left.source->universe_size());
        r.holds = false;
        r.witness = std::make_pair(render(Team{left.source, ps[bad->first]}, names),
                                   render(Team{left.target, qs[bad->second]}, names));
    }
    return r;
}

// ---------------------------------------------------------------------------
// representation

namespace
{

bool join_prime_in(DenseTeamSet const & u, std::vector<DenseTeamSet> const & lattice)
{
    if (u.count() == 0)
        return false;
    for (std::size_t a = 0; a < lattice.size(); ++a)
    {
        if (u.subset_of(lattice[a]))
            continue;
        for (std::size_t b = a; b < lattice.size(); ++b)
        {
            if (u.subset_of(lattice[b]))
                continue;
            DenseTeamSet j = lattice[a];
            j |= lattice[b];
            if (u.subset_of(j))
                return false;
        }
    }
    return true;
}

std::vector<DenseTeamSet> dense_lattice(SpacePtr const & space)
{
    std::vector<DenseTeamSet> out;
    for (auto const & l : all_lower_sets(space))
        out.push_back(l.dense());
    return out;
}

} // namespace

bool is_join_prime(LowerSet const & u)
{
    return join_prime_in(u.dense(), dense_lattice(u.space()));
}

std::vector<LowerSet> join_primes(SpacePtr const & space)
{
    auto const lattice = all_lower_sets(space);
    std::vector<DenseTeamSet> dense;
    for (auto const & l : lattice)
        dense.push_back(l.dense());
    std::vector<LowerSet> out;
    for (std::size_t i = 0; i < lattice.size(); ++i)
        if (join_prime_in(dense[i], dense))
            out.push_back(lattice[i]);
    return out;
}

std::vector<LowerSet> principal_lower_sets(SpacePtr const & space)
{
    require_team_space(*space, std::uint64_t{1} << DenseTeamSet::max_assignments, "principal lower sets");
    std::vector<LowerSet> out;
    for (TeamMask t = 0; t < (TeamMask{1} << space->size()); ++t)
        out.push_back(LowerSet::from_generators(space, std::span<TeamMask const>{&t, 1}));
    return out;
}

std::vector<LowerSet> atoms(SpacePtr const & space)
{
    // join-primes whose only strictly smaller join-prime is the least one
    auto const primes = join_primes(space);
    std::vector<LowerSet> out;
    for (auto const & j : primes)
    {
        std::size_t below = 0;
        for (auto const & k : primes)
            if (k.subset_of(j) && !(k == j))
                ++below;
        if (below == 1)
            out.push_back(j);
    }
    return out;
}

NormalForm normal_form(LowerSet const & u)
{
    NormalForm nf{u.space(), {}};
    for (TeamMask m : u.maximal())
    {
        std::vector<std::size_t> members;
        for_each_member(m, [&](std::size_t i) { members.push_back(i); });
        nf.disjuncts.push_back(std::move(members));
    }
    return nf;
}

LowerSet reconstruct(NormalForm const & nf)
{
    LowerSet out = LowerSet::bottom(nf.space);
    for (auto const & disjunct : nf.disjuncts)
    {
        LowerSet product = LowerSet::unit(nf.space);
        for (std::size_t i : disjunct)
        {
            if (i >= nf.space->size())
                throw DomainError{"normal form atom outside the assignment space"};
            TeamMask const single = TeamMask{1} << i;
            product = tensor(product, LowerSet::from_generators(nf.space, std::span<TeamMask const>{&single, 1}));
        }
        out = join(out, product);
    }
    return out;
}

bool normal_form_leq(NormalForm const & a, NormalForm const & b)
{
    require_same(a.space, b.space, "normal form order");
    for (auto const & d : a.disjuncts)
    {
        bool found = false;
        for (auto const & e : b.disjuncts)
            if (std::includes(e.begin(), e.end(), d.begin(), d.end()))
            {
                found = true;
                break;
            }
        if (!found)
            return false;
    }
    return true;
}

std::string render(NormalForm const & nf, Structure const & m)
{
    if (nf.disjuncts.empty())
        return "<bottom>";
    AssignmentSpace const & s = *nf.space;
    auto atom = [&](std::size_t i) {
        if (s.vars().empty())
            return std::string{"<true>"};
        std::string out;
        for (std::size_t p = 0; p < s.vars().size(); ++p)
        {
            if (p)
                out += " /\\ ";
            out += s.vars()[p] + " = " + m.element_name(s.digit(i, p));
        }
        return s.vars().size() > 1 ? "(" + out + ")" : out;
    };
    std::string out;
    for (std::size_t d = 0; d < nf.disjuncts.size(); ++d)
    {
        if (d)
            out += " \\/ ";
        auto const & disjunct = nf.disjuncts[d];
        if (disjunct.empty())
        {
            out += "<empty>";
            continue;
        }
        bool const wrap = disjunct.size() > 1 && nf.disjuncts.size() > 1;
        if (wrap)
            out += "(";
        for (std::size_t k = 0; k < disjunct.size(); ++k)
        {
            if (k)
                out += " * ";
            out += atom(disjunct[k]);
        }
        if (wrap)
            out += ")";
    }
    return out;
}

std::string render(Team const & t, Structure const & m)
{
    AssignmentSpace const & s = *t.space();
    std::ostringstream out;
    out << "{";
    bool first = true;
    for_each_member(t.mask(), [&](std::size_t i) {
        out << (first ? " {" : ", {");
        first = false;
        for (std::size_t p = 0; p < s.vars().size(); ++p)
            out << (p ? ", " : "") << s.vars()[p] << "=" << m.element_name(s.digit(i, p));
        out << "}";
    });
    out << (first ? "}" : " }");
    return out.str();
}

std::string render(LowerSet const & u, Structure const & m)
{
    std::string out = "down{";
    bool first = true;
    for (auto const & t : u.maximal_teams())
    {
        out += first ? " " : ", ";
        first = false;
        out += render(t, m);
    }
    out += first ? "}" : " }";
    return out;
}

} // namespace teamsem
