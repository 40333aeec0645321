#include <teamsem/ast.hpp>
#include <teamsem/errors.hpp>

#include <algorithm>

namespace teamsem
{

namespace
{

std::vector<Variable> normalize_vars(std::vector<Variable> vars)
{
    std::sort(vars.begin(), vars.end());
    vars.erase(std::unique(vars.begin(), vars.end()), vars.end());
    return vars;
}

template <class... Ts>
struct overloaded : Ts...
{
    using Ts::operator()...;
};

bool same_node(Node const & a, Node const & b);

bool same_formula(Formula const & a, Formula const & b)
{
    if (a.id() == b.id())
        return true;
    if (!a.valid() || !b.valid())
        return false;
    return same_node(a.node(), b.node());
}

bool same_node(Node const & a, Node const & b)
{
    if (a.value.index() != b.value.index())
        return false;
    return std::visit(
        overloaded{
            [&](RelAtom const & x) {
                auto const & y = std::get<RelAtom>(b.value);
                return x.relation == y.relation && x.args == y.args && x.polarity == y.polarity;
            },
            [&](EqAtom const & x) {
                auto const & y = std::get<EqAtom>(b.value);
                return x.lhs == y.lhs && x.rhs == y.rhs && x.polarity == y.polarity;
            },
            [&](DepAtom const & x) {
                auto const & y = std::get<DepAtom>(b.value);
                return x.governors == y.governors && x.dependent == y.dependent;
            },
            [&](Binary const & x) {
                auto const & y = std::get<Binary>(b.value);
                return x.op == y.op && same_formula(x.lhs, y.lhs) && same_formula(x.rhs, y.rhs);
            },
            [&](Quantified const & x) {
                auto const & y = std::get<Quantified>(b.value);
                return x.kind == y.kind && x.var == y.var && x.guarded == y.guarded && x.governors == y.governors
                    && same_formula(x.body, y.body);
            }},
        a.value);
}

void collect_free(Formula const & f, VarSet & bound_stack_free, std::vector<Variable> & bound)
{
    auto is_bound = [&](Variable const & v) { return std::find(bound.begin(), bound.end(), v) != bound.end(); };
    auto note = [&](Variable const & v) {
        if (!is_bound(v))
            bound_stack_free.insert(v);
    };
    auto note_term = [&](Term const & t) {
        if (t.is_variable())
            note(t.name);
    };

    std::visit(overloaded{[&](RelAtom const & a) {
                              for (auto const & t : a.args)
                                  note_term(t);
                          },
                          [&](EqAtom const & a) {
                              note_term(a.lhs);
                              note_term(a.rhs);
                          },
                          [&](DepAtom const & a) {
                              for (auto const & w : a.governors)
                                  note(w);
                              note(a.dependent);
                          },
                          [&](Binary const & b) {
                              collect_free(b.lhs, bound_stack_free, bound);
                              collect_free(b.rhs, bound_stack_free, bound);
                          },
                          [&](Quantified const & q) {
                              for (auto const & w : q.governors)
                                  note(w);
                              bound.push_back(q.var);
                              collect_free(q.body, bound_stack_free, bound);
                              bound.pop_back();
                          }},
               f.node().value);
}

} // namespace

std::string_view to_string(Connective c) noexcept
{
    switch (c)
    {
    case Connective::conj:
        return "/\\";
    case Connective::disj:
        return "\\/";
    case Connective::imp:
        return "->";
    case Connective::tensor:
        return "*";
    case Connective::wand:
        return "-*";
    }
    return "?";
}

std::string_view to_string(Fragment f) noexcept
{
    switch (f)
    {
    case Fragment::fo_flat:
        return "FO-flat";
    case Fragment::dep:
        return "DEP";
    case Fragment::bid_minus:
        return "BID-";
    case Fragment::bid:
        return "BID";
    }
    return "?";
}

Formula Formula::relation(std::string name, std::vector<Term> args, Polarity polarity)
{
    return Formula{std::make_shared<Node const>(Node{RelAtom{std::move(name), std::move(args), polarity}})};
}

Formula Formula::equality(Term lhs, Term rhs, Polarity polarity)
{
    return Formula{std::make_shared<Node const>(Node{EqAtom{std::move(lhs), std::move(rhs), polarity}})};
}

Formula Formula::dependence(std::vector<Variable> governors, Variable dependent)
{
    return Formula{
        std::make_shared<Node const>(Node{DepAtom{normalize_vars(std::move(governors)), std::move(dependent)}})};
}

Formula Formula::binary(Connective op, Formula lhs, Formula rhs)
{
    return Formula{std::make_shared<Node const>(Node{Binary{op, std::move(lhs), std::move(rhs)}})};
}

Formula Formula::quantified(Quantifier q, Variable v, Formula body)
{
    return Formula{std::make_shared<Node const>(Node{Quantified{q, std::move(v), false, {}, std::move(body)}})};
}

Formula Formula::guarded(Quantifier q, Variable v, std::vector<Variable> governors, Formula body)
{
    return Formula{std::make_shared<Node const>(
        Node{Quantified{q, std::move(v), true, normalize_vars(std::move(governors)), std::move(body)}})};
}

bool operator==(Formula const & a, Formula const & b)
{
    return same_formula(a, b);
}

bool is_literal(Formula const & f)
{
    return f.as<RelAtom>() != nullptr || f.as<EqAtom>() != nullptr;
}

VarSet free_vars(Formula const & f)
{
    VarSet out;
    std::vector<Variable> bound;
    collect_free(f, out, bound);
    return out;
}

int depth(Formula const & f)
{
    if (auto const * b = f.as<Binary>())
        return 1 + std::max(depth(b->lhs), depth(b->rhs));
    if (auto const * q = f.as<Quantified>())
        return 1 + depth(q->body);
    return 1;
}

std::size_t size(Formula const & f)
{
    if (auto const * b = f.as<Binary>())
        return 1 + size(b->lhs) + size(b->rhs);
    if (auto const * q = f.as<Quantified>())
        return 1 + size(q->body);
    return 1;
}

Formula demorgan_dual(Formula const & f)
{
    if (auto const * r = f.as<RelAtom>())
        return Formula::relation(r->relation, r->args, flip(r->polarity));
    if (auto const * e = f.as<EqAtom>())
        return Formula::equality(e->lhs, e->rhs, flip(e->polarity));
    if (f.as<DepAtom>())
        throw FragmentError{"De Morgan dual is undefined on dependence atoms"};
    if (auto const * b = f.as<Binary>())
    {
        switch (b->op)
        {
        case Connective::conj:
            return Formula::tensor(demorgan_dual(b->lhs), demorgan_dual(b->rhs));
        case Connective::tensor:
            return Formula::conj(demorgan_dual(b->lhs), demorgan_dual(b->rhs));
        default:
            throw FragmentError{"De Morgan dual is undefined on connective " + std::string{to_string(b->op)}};
        }
    }
    auto const & q = *f.as<Quantified>();
    if (q.guarded)
        throw FragmentError{"De Morgan dual is undefined on guarded quantifiers"};
    auto const dual = q.kind == Quantifier::forall ? Quantifier::exists : Quantifier::forall;
    return Formula::quantified(dual, q.var, demorgan_dual(q.body));
}

Fragment classify(Formula const & f)
{
    if (is_literal(f))
        return Fragment::fo_flat;
    if (f.as<DepAtom>())
        return Fragment::dep;
    if (auto const * b = f.as<Binary>())
    {
        Fragment const children = std::max(classify(b->lhs), classify(b->rhs));
        switch (b->op)
        {
        case Connective::conj:
        case Connective::tensor:
            return children;
        case Connective::disj:
        case Connective::imp:
            return std::max(children, Fragment::bid_minus);
        case Connective::wand:
            return Fragment::bid;
        }
    }
    auto const & q = *f.as<Quantified>();
    Fragment const body = classify(q.body);
    if (!q.guarded)
        return body;
    return std::max(body, q.kind == Quantifier::exists ? Fragment::dep : Fragment::bid_minus);
}

Formula expand_guard(Quantified const & q)
{
    Formula guard = Formula::dependence(q.governors, q.var);
    if (q.kind == Quantifier::exists)
        return Formula::exists(q.var, Formula::conj(std::move(guard), q.body));
    return Formula::forall(q.var, Formula::imp(std::move(guard), q.body));
}

} // namespace teamsem
