#include <teamsem/laws.hpp>

#include <teamsem/formula_gen.hpp>
#include <teamsem/parser.hpp>

#include <algorithm>
#include <array>
#include <chrono>
#include <iomanip>
#include <random>
#include <sstream>

namespace teamsem
{

std::string_view to_string(Verdict v) noexcept
{
    switch (v)
    {
    case Verdict::pass:
        return "PASS";
    case Verdict::fail:
        return "FAIL";
    case Verdict::info:
        return "INFO";
    }
    return "?";
}

std::optional<bool> replay(Counterexample const & c)
{
    if (c.formula.empty() || !c.structure || !c.team)
        return std::nullopt;
    Formula const f = parse(c.formula);
    EvalContext const ctx{*c.structure, c.team->domain()};
    return satisfies(ctx, *c.team, f) == c.satisfied;
}

bool Report::passed() const
{
    return std::none_of(laws.begin(), laws.end(), [](LawResult const & l) { return l.verdict == Verdict::fail; });
}

std::string render_table(std::vector<Report> const & reports)
{
    std::ostringstream out;
    for (auto const & r : reports)
    {
        out << "== " << r.suite << " (";
        bool first = true;
        for (auto const & [k, v] : r.scale)
        {
            out << (first ? "" : ", ") << k << "=" << v;
            first = false;
        }
        out << ")";
        if (r.seed)
            out << " seed " << *r.seed;
        out << " [" << r.execution << ", " << std::fixed << std::setprecision(1) << r.elapsed_ms << " ms]\n";

        std::size_t width = 4;
        for (auto const & l : r.laws)
            width = std::max(width, l.name.size());
        for (auto const & l : r.laws)
        {
            out << "  " << to_string(l.verdict) << "  " << std::left << std::setw(static_cast<int>(width)) << l.name
                << std::right << "  " << std::setw(9) << l.checked;
            if (!l.detail.empty())
                out << "  " << l.detail;
            out << "\n";
            if (l.counterexample)
            {
                auto const & c = *l.counterexample;
                if (!c.formula.empty())
                    out << "        formula: " << c.formula << "\n";
                if (c.team && c.structure)
                    out << "        team:    " << render(*c.team, *c.structure) << "  (satisfied: "
                        << (c.satisfied ? "yes" : "no") << ")\n";
                if (!c.note.empty())
                    out << "        note:    " << c.note << "\n";
            }
        }
        out << "  => " << (r.passed() ? "all asserted laws hold" : "FAILED") << "\n";
    }
    return out.str();
}

namespace
{

using Clock = std::chrono::steady_clock;

double ms_since(Clock::time_point start)
{
    return std::chrono::duration<double, std::milli>(Clock::now() - start).count();
}

Report start_report(std::string suite, SuiteOptions const & opts)
{
    Report r;
    r.suite = std::move(suite);
    r.execution = std::string{to_string(opts.exec)};
    return r;
}

LawResult law(std::string name, std::string statement)
{
    LawResult l;
    l.name = std::move(name);
    l.statement = std::move(statement);
    return l;
}

void fail_with(LawResult & l, std::string note)
{
    if (l.verdict == Verdict::fail)
        return;
    l.verdict = Verdict::fail;
    Counterexample c;
    c.note = std::move(note);
    l.counterexample = std::move(c);
}

void fail_with(LawResult & l, Formula const & f, Structure const & m, Team const & t, bool satisfied, std::string note)
{
    if (l.verdict == Verdict::fail)
        return;
    l.verdict = Verdict::fail;
    Counterexample c;
    c.formula = print(f);
    c.structure = m;
    c.team = t;
    c.satisfied = satisfied;
    c.note = std::move(note);
    l.counterexample = std::move(c);
}

std::string set_name(VarSet const & vars)
{
    std::string out = "{";
    for (auto const & v : vars)
        out += (out.size() > 1 ? "," : "") + v;
    return out + "}";
}

std::string bytes(std::uint64_t n)
{
    return std::to_string(n);
}

/// Satisfaction set of `f` over every team on X, from the evaluator.
DenseTeamSet satisfaction_set(Structure const & m, VarSet const & vars, Formula const & f, Bounds const & bounds)
{
    Evaluator ev{EvalContext{m, vars, bounds}, f};
    DenseTeamSet out{ev.space()->size()};
    if (out.team_count() > bounds.max_teams)
        throw BoundExceeded{"team sweep 2^(|A|^|X|)", out.team_count(), bounds.max_teams};
    for (TeamMask t = 0; t < out.team_count(); ++t)
        if (ev.satisfies(t))
            out.set(t);
    return out;
}

std::optional<TeamMask> first_difference(DenseTeamSet const & a, DenseTeamSet const & b)
{
    for (TeamMask t = 0; t < a.team_count(); ++t)
        if (a.test(t) != b.test(t))
            return t;
    return std::nullopt;
}

/// (T, S) with T a member, S a one-smaller subteam that is not.
std::optional<std::pair<TeamMask, TeamMask>> closure_violation(DenseTeamSet const & s)
{
    for (TeamMask t = 0; t < s.team_count(); ++t)
    {
        if (!s.test(t))
            continue;
        for (TeamMask bits = t; bits; bits &= bits - 1)
        {
            TeamMask const sub = t & ~(bits & (~bits + 1));
            if (!s.test(sub))
                return std::make_pair(t, sub);
        }
    }
    return std::nullopt;
}

// ---------------------------------------------------------------------------
// proposition sweep

std::array<VarSet, 4> const sweep_contexts = {VarSet{}, VarSet{"x"}, VarSet{"y"}, VarSet{"x", "y"}};

struct SweepRow
{
    std::uint64_t teams = 0;
    bool bid_minus = false;
    bool sentence = false;
    std::optional<std::pair<std::size_t, std::pair<TeamMask, TeamMask>>> closure; // context, (T, S)
    std::optional<std::size_t> empty_fail;                                       // context
    std::optional<std::pair<std::size_t, TeamMask>> dual;                        // context, team
    int truth = -1; // 0 FALSE, 1 WEAK, 2 TRUE, 3 not trivalent
};

} // namespace

Structure sweep_structure(std::optional<Structure> const & base)
{
    Structure m = base ? *base : Structure::uniform(2);
    if (!m.relation("P"))
        m.add_relation("P", 1, {Tuple{0}});
    if (!m.constant("c0"))
        m.add_constant("c0", 0);
    return m;
}

Report proposition_sweep(Structure const & m, SuiteOptions const & opts)
{
    auto const start = Clock::now();
    Report r = start_report("proposition-sweep", opts);

    FormulaSpace const space{sweep_config(), opts.depth};
    FormulaSample const sample = generate(space, opts.formula_cap, opts.seed);
    r.seed = sample.seed;
    r.scale["|A|"] = bytes(m.size());
    r.scale["X"] = "fv <= X <= {x,y}";
    r.scale["depth"] = std::to_string(opts.depth);
    r.scale["formulas"] = bytes(sample.formulas.size());
    r.scale["population"] = bytes(sample.population);
    r.scale["exhaustive"] = sample.exhaustive ? "yes" : "no";

    // denotations of every proper subformula, shared read-only by the workers
    Denoter shared{m, opts.bounds};
    for (auto const & g : space.lower())
    {
        VarSet const fv = free_vars(g);
        for (auto const & x : sweep_contexts)
            if (std::includes(x.begin(), x.end(), fv.begin(), fv.end()))
                shared.denote(x, g);
    }

    std::vector<SweepRow> rows(sample.formulas.size());
    for_each_index(sample.formulas.size(), opts.exec, [&](std::uint64_t i) {
        Formula const & f = sample.formulas[i];
        SweepRow & row = rows[i];
        VarSet const fv = free_vars(f);
        row.bid_minus = classify(f) != Fragment::bid;
        row.sentence = fv.empty();
        Denoter local{m, opts.bounds, &shared};
        for (std::size_t c = 0; c < sweep_contexts.size(); ++c)
        {
            VarSet const & x = sweep_contexts[c];
            if (!std::includes(x.begin(), x.end(), fv.begin(), fv.end()))
                continue;
            DenseTeamSet const sat = satisfaction_set(m, x, f, opts.bounds);
            row.teams += sat.team_count();
            if (!row.closure)
                if (auto v = closure_violation(sat))
                    row.closure = std::make_pair(c, *v);
            if (!row.empty_fail && !sat.test(0))
                row.empty_fail = c;
            if (!row.dual)
                if (auto d = first_difference(sat, local.denote(x, f).dense()))
                    row.dual = std::make_pair(c, *d);
            if (x.empty())
            {
                bool const e = sat.test(0);
                bool const u = sat.test(1);
                row.truth = e && u ? 2 : e ? 1 : u ? 3 : 0;
            }
        }
    });

    LawResult closure = law("downward-closure", "T |= f and S <= T imply S |= f");
    LawResult empty = law("empty-team", "the empty team satisfies every BID- formula");
    LawResult wand_witness = law("wand-empty-team-witness", "some formula with -* is not satisfied by the empty team");
    LawResult trivalence = law("trivalence", "every sentence denotes {}, {{}} or {{}, {<>}}");
    LawResult values = law("trivalence-values", "all three sentence values occur");
    LawResult dual = law("dual-path", "T in denote(f) iff T |= f");

    std::array<std::optional<std::string>, 3> seen;
    std::uint64_t sentences = 0;
    std::uint64_t bid_minus = 0;
    std::uint64_t teams = 0;
    for (std::size_t i = 0; i < rows.size(); ++i)
    {
        SweepRow const & row = rows[i];
        Formula const & f = sample.formulas[i];
        teams += row.teams;
        auto team_in = [&](std::size_t c, TeamMask t) { return Team{make_space(sweep_contexts[c], m.size()), t}; };
        if (row.closure)
        {
            auto const [c, pair] = *row.closure;
            fail_with(closure, f, m, team_in(c, pair.second), false,
                      "superteam " + render(team_in(c, pair.first), m) + " satisfies it");
        }
        if (row.bid_minus)
        {
            ++bid_minus;
            if (row.empty_fail)
                fail_with(empty, f, m, team_in(*row.empty_fail, 0), false, "context " + set_name(sweep_contexts[*row.empty_fail]));
        }
        else if (row.empty_fail && wand_witness.detail.empty())
            wand_witness.detail = print(f) + " at X = " + set_name(sweep_contexts[*row.empty_fail]);
        if (row.dual)
        {
            auto const [c, t] = *row.dual;
            bool const sat = satisfaction_set(m, sweep_contexts[c], f, opts.bounds).test(t);
            fail_with(dual, f, m, team_in(c, t), sat, "denote disagrees with satisfies");
        }
        if (row.sentence)
        {
            ++sentences;
            if (row.truth == 3)
                fail_with(trivalence, f, m, team_in(0, 0), false, "satisfied by {<>} but not by {}");
            else if (row.truth >= 0 && !seen[static_cast<std::size_t>(row.truth)])
                seen[static_cast<std::size_t>(row.truth)] = print(f);
        }
    }

    closure.checked = teams;
    empty.checked = bid_minus;
    wand_witness.checked = rows.size() - bid_minus;
    if (wand_witness.detail.empty())
        fail_with(wand_witness, "no formula in the sweep fails on the empty team");
    trivalence.checked = sentences;
    values.checked = sentences;
    for (std::size_t v = 0; v < 3; ++v)
    {
        std::string const name{to_string(static_cast<TruthValue>(v))};
        if (!values.detail.empty())
            values.detail += "; ";
        values.detail += name + ": " + (seen[v] ? *seen[v] : "none");
        if (!seen[v])
            fail_with(values, "no sentence with value " + name);
    }
    dual.checked = teams;
    closure.detail = bytes(rows.size()) + " formulas";
    dual.detail = bytes(rows.size()) + " formulas";

    r.laws = {closure, empty, wand_witness, trivalence, values, dual};
    r.elapsed_ms = ms_since(start);
    return r;
}

// ---------------------------------------------------------------------------
// adjunctions, lifts, lattice laws

namespace
{

SpacePtr space2(VarSet vars)
{
    return make_space(std::move(vars), 2);
}

void record(LawResult & l, AdjunctionResult const & a, std::string const & scale)
{
    l.checked += a.pairs;
    if (!a.holds && a.witness)
        fail_with(l, scale + ": " + a.witness->first + " / " + a.witness->second);
}

TeamOperator lattice_op(std::string name, SpacePtr s, std::function<LowerSet(LowerSet const &)> fn)
{
    return {std::move(name), s, s, std::move(fn)};
}

Report adjunction_suite(SuiteOptions const & opts)
{
    auto const start = Clock::now();
    Report r = start_report("adjunctions", opts);
    r.scale["|A|"] = "2";
    r.scale["X"] = "|X| <= 2";
    Structure const m = Structure::uniform(2);

    LawResult ex = law("exists_H -| H(pi)", "exists_H(U) <= V iff U <= H(pi)(V)");
    LawResult fa = law("H(pi) -| forall_H", "H(pi)(V) <= U iff V <= forall_H(U)");
    LawResult res = law("tensor -| wand", "A * B <= C iff A <= B -* C");
    LawResult heyt = law("meet -| heyting", "U n V <= W iff U <= V -> W");
    LawResult tex = law("exists(pi) -| pi^-1", "Tarski: exists(pi)(S) <= T iff S <= pi^-1(T)");
    LawResult tfa = law("pi^-1 -| forall(pi)", "Tarski: pi^-1(T) <= S iff T <= forall(pi)(S)");
    LawResult gex = law("exists_W -| D_W -> H(pi)", "exists_W(U) <= V iff U <= D_W -> H(pi)(V)");
    LawResult gfa = law("D_W n H(pi) -| forall_W", "D_W n H(pi)(V) <= U iff V <= forall_W(U)");

    struct Scale
    {
        VarSet source;
        Variable v;
    };
    std::vector<Scale> const scales = {{{"x"}, "x"}, {{"x", "y"}, "y"}, {{"x", "y"}, "x"}};
    for (auto const & [source_vars, v] : scales)
    {
        SpacePtr const source = space2(source_vars);
        SpacePtr const target = make_space([&] {
            VarSet t = source_vars;
            t.erase(v);
            return t;
        }(), 2);
        std::string const scale = set_name(source_vars) + " -> " + set_name(target->var_set());
        record(ex, check_adjunction(exists_h_op(source, v, opts.bounds), subst_h_op(target, v), opts.exec), scale);
        record(fa, check_adjunction(subst_h_op(target, v), forall_h_op(source, v, opts.bounds), opts.exec), scale);
        record(tex, check_adjunction(exists_pi_op(source, v), preimage_pi_op(target, v), opts.exec), scale);
        record(tfa, check_adjunction(preimage_pi_op(target, v), forall_pi_op(source, v), opts.exec), scale);

        // every W among the other variables of the source
        std::vector<Variable> others;
        for (auto const & x : target->vars())
            others.push_back(x);
        for (std::size_t wm = 0; wm < (std::size_t{1} << others.size()); ++wm)
        {
            VarSet w;
            for (std::size_t i = 0; i < others.size(); ++i)
                if (wm >> i & 1)
                    w.insert(others[i]);
            LowerSet const d = dep_lowerset(w, v, source_vars, m, opts.bounds);
            Bounds const b = opts.bounds;
            TeamOperator const gex_left{"exists_W", source, target, [=, &m](LowerSet const & u) {
                                            return guarded_exists_op(u, w, v, m, b);
                                        }};
            TeamOperator const gex_right{"D_W -> H(pi)", target, source,
                                         [=](LowerSet const & u) { return heyting(d, subst_h(u, v)); }};
            TeamOperator const gfa_left{"D_W n H(pi)", target, source,
                                        [=](LowerSet const & u) { return meet(d, subst_h(u, v)); }};
            TeamOperator const gfa_right{"forall_W", source, target, [=, &m](LowerSet const & u) {
                                             return guarded_forall_op(u, w, v, m, b);
                                         }};
            std::string const ws = scale + ", W = " + set_name(w);
            record(gex, check_adjunction(gex_left, gex_right, opts.exec), ws);
            record(gfa, check_adjunction(gfa_left, gfa_right, opts.exec), ws);
        }
    }

    for (VarSet const & x : {VarSet{}, VarSet{"x"}, VarSet{"x", "y"}})
    {
        SpacePtr const s = space2(x);
        for (auto const & b : all_lower_sets(s))
        {
            record(res,
                   check_adjunction(lattice_op("- * B", s, [b](LowerSet const & a) { return tensor(a, b); }),
                                    lattice_op("B -* -", s, [b](LowerSet const & c) { return wand(b, c); }), opts.exec),
                   set_name(x) + ", B = " + render(b, m));
            record(heyt,
                   check_adjunction(lattice_op("- n V", s, [b](LowerSet const & u) { return meet(u, b); }),
                                    lattice_op("V -> -", s, [b](LowerSet const & w) { return heyting(b, w); }),
                                    opts.exec),
                   set_name(x) + ", V = " + render(b, m));
        }
    }

    r.laws = {ex, fa, res, heyt, tex, tfa, gex, gfa};
    r.elapsed_ms = ms_since(start);
    return r;
}

bool same_on_all(TeamOperator const & f, TeamOperator const & g, LawResult & l, Structure const & m)
{
    for (auto const & u : all_lower_sets(f.source))
    {
        ++l.checked;
        LowerSet const a = f(u);
        LowerSet const b = g(u);
        if (!(a == b))
        {
            fail_with(l, f.name + " vs " + g.name + " at " + render(u, m) + ": " + render(a, m) + " vs " + render(b, m));
            return false;
        }
    }
    return true;
}

Report lift_suite(SuiteOptions const & opts)
{
    auto const start = Clock::now();
    Report r = start_report("lift", opts);
    r.scale["|A|"] = "2";
    r.scale["X"] = "H(A^2) -> H(A^1) and H(A^1) -> H(A^0)";
    Structure const m = Structure::uniform(2);
    SpacePtr const s0 = space2({});
    SpacePtr const s1 = space2({"x"});
    SpacePtr const s2 = space2({"x", "y"});

    LawResult lex = law("exists_H = L(exists(pi))", "lift of the Tarski existential");
    LawResult lfa = law("forall_H = L(forall(pi))", "lift of the Tarski universal");
    LawResult lsub = law("H(pi) = L(pi^-1)", "substitution is the lift of the inverse image");
    for (auto const & [src, v] : {std::pair{s2, Variable{"y"}}, std::pair{s2, Variable{"x"}}, std::pair{s1, Variable{"x"}}})
    {
        same_on_all(exists_h_op(src, v, opts.bounds), lift(exists_pi_op(src, v)), lex, m);
        same_on_all(forall_h_op(src, v, opts.bounds), lift(forall_pi_op(src, v)), lfa, m);
        SpacePtr const tgt = exists_pi_op(src, v).target;
        same_on_all(subst_h_op(tgt, v), lift(preimage_pi_op(tgt, v)), lsub, m);
    }

    LawResult lid = law("L(id) = id", "the lift preserves identities");
    for (auto const & s : {s0, s1, s2})
        same_on_all(lift(SetOperator{"id", s, s, [](TeamMask t) { return t; }}),
                    lattice_op("id", s, [](LowerSet const & u) { return u; }), lid, m);

    LawResult lcomp = law("L(h . g) = L(h) . L(g)", "the lift preserves composition");
    auto const ey = exists_pi_op(s2, "y");
    auto const ay = forall_pi_op(s2, "y");
    auto const iy = preimage_pi_op(s1, "y");
    auto const ex = exists_pi_op(s1, "x");
    auto const ax = forall_pi_op(s1, "x");
    std::vector<std::pair<SetOperator, SetOperator>> const pairs = {
        {ey, iy}, {ay, iy}, {iy, ey}, {iy, ay}, {ex, ey}, {ax, ey}, {ex, ay}, {ax, ay},
    };
    for (auto const & [h, g] : pairs)
        same_on_all(lift(compose(h, g)), compose(lift(h), lift(g)), lcomp, m);

    LawResult order = law("h <= k implies L(h) <= L(k)", "the lift is order-enriched");
    std::vector<std::pair<SetOperator, SetOperator>> const ordered = {
        {ay, ey},
        {SetOperator{"id", s2, s2, [](TeamMask t) { return t; }}, compose(iy, ey)},
        {compose(iy, ay), SetOperator{"id", s2, s2, [](TeamMask t) { return t; }}},
        {ax, ex},
    };
    for (auto const & [h, k] : ordered)
    {
        for (TeamMask t = 0; t < (TeamMask{1} << h.source->size()); ++t)
            if ((h.apply(t) & ~k.apply(t)) != 0)
                fail_with(order, "premise fails: " + h.name + " not below " + k.name);
        TeamOperator const lh = lift(h);
        TeamOperator const lk = lift(k);
        for (auto const & u : all_lower_sets(h.source))
        {
            ++order.checked;
            if (!lh(u).subset_of(lk(u)))
                fail_with(order, lh.name + " not below " + lk.name + " at " + render(u, m));
        }
    }

    LawResult mono = law("monotone operators", "U <= V implies F(U) <= F(V)");
    std::vector<TeamOperator> ops = {exists_h_op(s2, "y", opts.bounds), forall_h_op(s2, "y", opts.bounds),
                                     subst_h_op(s1, "y"), exists_h_op(s1, "x", opts.bounds),
                                     forall_h_op(s1, "x", opts.bounds), subst_h_op(s0, "x")};
    for (VarSet const & w : {VarSet{}, VarSet{"x"}})
    {
        Bounds const b = opts.bounds;
        ops.push_back({"exists_W", s2, s1, [=, &m](LowerSet const & u) { return guarded_exists_op(u, w, "y", m, b); }});
        ops.push_back({"forall_W", s2, s1, [=, &m](LowerSet const & u) { return guarded_forall_op(u, w, "y", m, b); }});
    }
    for (auto const & op : ops)
    {
        auto const lattice = all_lower_sets(op.source);
        std::vector<DenseTeamSet> in(lattice.size(), DenseTeamSet{0});
        std::vector<DenseTeamSet> image(lattice.size(), DenseTeamSet{0});
        for_each_index(lattice.size(), opts.exec, [&](std::uint64_t i) {
            in[i] = lattice[i].dense();
            image[i] = op(lattice[i]).dense();
        });
        for (std::size_t i = 0; i < lattice.size(); ++i)
            for (std::size_t j = 0; j < lattice.size(); ++j)
            {
                ++mono.checked;
                if (in[i].subset_of(in[j]) && !image[i].subset_of(image[j]))
                    fail_with(mono, op.name + " at " + render(lattice[i], m) + " <= " + render(lattice[j], m));
            }
    }

    LawResult unit = law("T <= L(exists(pi))(down{T[v->f]})", "projecting a choice extension recovers the team");
    for (TeamMask t = 0; t < (TeamMask{1} << s1->size()); ++t)
    {
        Team const team{s1, t};
        auto const members = team.members();
        std::size_t const count = std::size_t{1} << members.size(); // functions T -> {0,1}
        for (std::size_t fbits = 0; fbits < count; ++fbits)
        {
            ++unit.checked;
            Team const ext = extend_fn(team, "y", [&](Assignment const & s) -> std::optional<Element> {
                auto const it = std::find(members.begin(), members.end(), s);
                return static_cast<Element>(fbits >> (it - members.begin()) & 1);
            });
            LowerSet const image = lift(exists_pi_op(s2, "y"))(down(s2, std::span<Team const>{&ext, 1}));
            if (!image.contains(team))
                fail_with(unit, "team " + render(team, m) + " missing from " + render(image, m));
        }
    }

    r.laws = {lex, lfa, lsub, lid, lcomp, order, mono, unit};
    r.elapsed_ms = ms_since(start);
    return r;
}

Report quantale_suite(SuiteOptions const & opts)
{
    auto const start = Clock::now();
    Report r = start_report("quantale", opts);
    r.scale["|A|"] = "2";
    r.scale["X"] = "triples at |X| <= 1, pairs at |X| = 2";
    Structure const m = Structure::uniform(2);

    LawResult assoc = law("tensor associative", "(A * B) * C = A * (B * C)");
    LawResult comm = law("tensor commutative", "A * B = B * A");
    LawResult unit = law("tensor unit", "A * down{{}} = A");
    LawResult dist = law("tensor distributes over joins", "A * \\/S = \\/{A * s | s in S} for every subset S");
    LawResult mono = law("tensor monotone", "A <= B implies A * C <= B * C");

    for (VarSet const & x : {VarSet{}, VarSet{"x"}, VarSet{"x", "y"}})
    {
        SpacePtr const s = space2(x);
        auto const l = all_lower_sets(s);
        bool const small = x.size() <= 1;
        LowerSet const u = LowerSet::unit(s);
        for (auto const & a : l)
        {
            ++unit.checked;
            if (!(tensor(a, u) == a))
                fail_with(unit, render(a, m));
            for (auto const & b : l)
            {
                ++comm.checked;
                LowerSet const ab = tensor(a, b);
                if (!(ab == tensor(b, a)))
                    fail_with(comm, render(a, m) + ", " + render(b, m));
                if (!small)
                    continue;
                for (auto const & c : l)
                {
                    ++assoc.checked;
                    if (!(tensor(ab, c) == tensor(a, tensor(b, c))))
                        fail_with(assoc, render(a, m) + ", " + render(b, m) + ", " + render(c, m));
                    ++mono.checked;
                    if (a.subset_of(b) && !tensor(a, c).subset_of(tensor(b, c)))
                        fail_with(mono, render(a, m) + ", " + render(b, m) + ", " + render(c, m));
                }
            }
            if (!small)
                continue;
            // every subset of the lattice, including the empty join
            for (std::size_t sub = 0; sub < (std::size_t{1} << l.size()); ++sub)
            {
                ++dist.checked;
                LowerSet joined = LowerSet::bottom(s);
                LowerSet pieces = LowerSet::bottom(s);
                for (std::size_t i = 0; i < l.size(); ++i)
                    if (sub >> i & 1)
                    {
                        joined = join(joined, l[i]);
                        pieces = join(pieces, tensor(a, l[i]));
                    }
                if (!(tensor(a, joined) == pieces))
                    fail_with(dist, render(a, m) + " over subset #" + std::to_string(sub));
            }
        }
    }

    r.laws = {assoc, comm, unit, dist, mono};
    r.elapsed_ms = ms_since(start);
    return r;
}

Report heyting_suite(SuiteOptions const & opts)
{
    auto const start = Clock::now();
    Report r = start_report("heyting", opts);
    r.scale["|A|"] = "2";
    r.scale["X"] = "|X| <= 2";
    Structure const m = Structure::uniform(2);

    LawResult lattice = law("lattice laws", "commutative, associative, idempotent, absorptive meet and join");
    LawResult bounds = law("bounds", "bottom <= U <= top");
    LawResult distributive = law("distributive", "U n (V u W) = (U n V) u (U n W)");
    LawResult residuation = law("heyting residuation", "U n V <= W iff U <= V -> W");
    LawResult refl = law("V -> V = top", "implication is reflexive");

    for (VarSet const & x : {VarSet{}, VarSet{"x"}, VarSet{"x", "y"}})
    {
        SpacePtr const s = space2(x);
        auto const l = all_lower_sets(s);
        std::vector<DenseTeamSet> d;
        for (auto const & u : l)
            d.push_back(u.dense());
        // meets and implications of every pair, as dense sets
        std::vector<DenseTeamSet> meets(l.size() * l.size(), DenseTeamSet{0});
        std::vector<DenseTeamSet> imps(l.size() * l.size(), DenseTeamSet{0});
        for_each_index(l.size(), opts.exec, [&](std::uint64_t i) {
            for (std::size_t j = 0; j < l.size(); ++j)
            {
                meets[i * l.size() + j] = meet(l[i], l[j]).dense();
                imps[i * l.size() + j] = heyting(l[i], l[j]).dense();
            }
        });
        LowerSet const top = LowerSet::top(s);
        LowerSet const bottom = LowerSet::bottom(s);
        for (std::size_t i = 0; i < l.size(); ++i)
        {
            ++bounds.checked;
            if (!bottom.subset_of(l[i]) || !l[i].subset_of(top))
                fail_with(bounds, render(l[i], m));
            ++refl.checked;
            if (!(heyting(l[i], l[i]) == top))
                fail_with(refl, render(l[i], m));
            for (std::size_t j = 0; j < l.size(); ++j)
            {
                auto const & a = l[i];
                auto const & b = l[j];
                ++lattice.checked;
                if (!(meet(a, b) == meet(b, a)) || !(join(a, b) == join(b, a)) || !(meet(a, a) == a)
                    || !(join(a, a) == a) || !(meet(a, join(a, b)) == a) || !(join(a, meet(a, b)) == a))
                    fail_with(lattice, render(a, m) + ", " + render(b, m));
                for (std::size_t k = 0; k < l.size(); ++k)
                {
                    ++residuation.checked;
                    bool const lhs = meets[i * l.size() + j].subset_of(d[k]);
                    bool const rhs = d[i].subset_of(imps[j * l.size() + k]);
                    if (lhs != rhs)
                        fail_with(residuation, render(a, m) + ", " + render(b, m) + ", " + render(l[k], m));
                    if (x.size() > 1)
                        continue;
                    auto const & c = l[k];
                    ++distributive.checked;
                    if (!(meet(a, join(b, c)) == join(meet(a, b), meet(a, c))))
                        fail_with(distributive, render(a, m) + ", " + render(b, m) + ", " + render(c, m));
                    if (!(meet(meet(a, b), c) == meet(a, meet(b, c))) || !(join(join(a, b), c) == join(a, join(b, c))))
                        fail_with(lattice, "associativity at " + render(a, m) + ", " + render(b, m) + ", " + render(c, m));
                }
            }
        }
    }

    r.laws = {lattice, bounds, distributive, residuation, refl};
    r.elapsed_ms = ms_since(start);
    return r;
}

Report representation_suite(SuiteOptions const & opts)
{
    auto const start = Clock::now();
    Report r = start_report("representation", opts);
    r.scale["|A|"] = "2";
    r.scale["X"] = "|X| <= 2";
    Structure const m = Structure::uniform(2);

    LawResult primes = law("join-primes are principal", "join-primes = { down{T} | T a team }");
    LawResult counts = law("counts at |X| = 1", "6 lower sets, 4 join-primes, 2 atoms");
    LawResult atom = law("atoms are tuple singletons", "atoms = { down{{t}} | t an assignment }");
    LawResult idem = law("tensor idempotent on join-primes", "down{T} * down{T} = down{T}");
    LawResult principal = law("tensor of principals", "down{T1} * down{T2} = down{T1 u T2}");
    LawResult join_differs = law("join of principals differs", "down{T1} \\/ down{T2} != down{T1 u T2} for T1 = {x=0}, T2 = {x=1}");
    LawResult round = law("normal form round trip", "reconstruct(normal_form(U)) = U");
    LawResult order = law("normal form order", "normal_form(U) <= normal_form(V) iff U <= V");

    auto sorted = [](std::vector<LowerSet> v) {
        std::sort(v.begin(), v.end(), [](LowerSet const & a, LowerSet const & b) {
            return std::lexicographical_compare(a.maximal().begin(), a.maximal().end(), b.maximal().begin(),
                                                b.maximal().end());
        });
        return v;
    };
    auto equal_sets = [&](std::vector<LowerSet> const & a, std::vector<LowerSet> const & b) {
        auto const sa = sorted(a);
        auto const sb = sorted(b);
        return sa.size() == sb.size() && std::equal(sa.begin(), sa.end(), sb.begin());
    };

    for (VarSet const & x : {VarSet{}, VarSet{"x"}, VarSet{"x", "y"}})
    {
        SpacePtr const s = space2(x);
        auto const lattice = all_lower_sets(s);
        auto const jp = join_primes(s);
        auto const pr = principal_lower_sets(s);
        ++primes.checked;
        if (!equal_sets(jp, pr))
            fail_with(primes, set_name(x) + ": " + std::to_string(jp.size()) + " join-primes vs " + std::to_string(pr.size())
                                  + " principal down-sets");

        std::vector<LowerSet> singles;
        for (std::size_t i = 0; i < s->size(); ++i)
        {
            TeamMask const t = TeamMask{1} << i;
            singles.push_back(LowerSet::from_generators(s, std::span<TeamMask const>{&t, 1}));
        }
        auto const at = atoms(s);
        ++atom.checked;
        if (!equal_sets(at, singles))
            fail_with(atom, set_name(x) + ": " + std::to_string(at.size()) + " atoms");

        if (x.size() == 1)
        {
            ++counts.checked;
            counts.detail = std::to_string(lattice.size()) + " lower sets, " + std::to_string(jp.size()) + " join-primes, "
                            + std::to_string(at.size()) + " atoms";
            if (lattice.size() != 6 || jp.size() != 4 || at.size() != 2)
                fail_with(counts, counts.detail);
        }

        for (auto const & j : jp)
        {
            ++idem.checked;
            if (!(tensor(j, j) == j))
                fail_with(idem, render(j, m));
        }
        for (TeamMask a = 0; a < (TeamMask{1} << s->size()); ++a)
            for (TeamMask b = 0; b < (TeamMask{1} << s->size()); ++b)
            {
                ++principal.checked;
                TeamMask const ab = a | b;
                auto const da = LowerSet::from_generators(s, std::span<TeamMask const>{&a, 1});
                auto const db = LowerSet::from_generators(s, std::span<TeamMask const>{&b, 1});
                if (!(tensor(da, db) == LowerSet::from_generators(s, std::span<TeamMask const>{&ab, 1})))
                    fail_with(principal, render(Team{s, a}, m) + ", " + render(Team{s, b}, m));
            }

        std::vector<NormalForm> nfs;
        for (auto const & u : lattice)
        {
            ++round.checked;
            nfs.push_back(normal_form(u));
            if (!(reconstruct(nfs.back()) == u))
                fail_with(round, render(u, m));
        }
        for (std::size_t i = 0; i < lattice.size(); ++i)
            for (std::size_t j = 0; j < lattice.size(); ++j)
            {
                ++order.checked;
                if (normal_form_leq(nfs[i], nfs[j]) != lattice[i].subset_of(lattice[j]))
                    fail_with(order, render(lattice[i], m) + ", " + render(lattice[j], m));
            }
    }

    {
        SpacePtr const s = space2({"x"});
        TeamMask const t1 = 1;
        TeamMask const t2 = 2;
        TeamMask const both = 3;
        auto const d1 = LowerSet::from_generators(s, std::span<TeamMask const>{&t1, 1});
        auto const d2 = LowerSet::from_generators(s, std::span<TeamMask const>{&t2, 1});
        auto const d12 = LowerSet::from_generators(s, std::span<TeamMask const>{&both, 1});
        join_differs.checked = 1;
        if (join(d1, d2) == d12)
            fail_with(join_differs, "join coincides with the principal down-set of the union");
        else
            join_differs.detail = render(join(d1, d2), m) + " vs " + render(d12, m);
    }

    r.laws = {primes, counts, atom, idem, principal, join_differs, round, order};
    r.elapsed_ms = ms_since(start);
    return r;
}

} // namespace

// ---------------------------------------------------------------------------
// dependence

Report d_from_c_check(Structure const & m, VarSet const & vars, VarSet const & w, Variable const & v,
                      SuiteOptions const & opts)
{
    auto const start = Clock::now();
    Report r = start_report("d-from-c", opts);
    r.scale["|A|"] = bytes(m.size());
    r.scale["X"] = set_name(vars);
    if (!vars.contains(v) || !std::includes(vars.begin(), vars.end(), w.begin(), w.end()))
        throw DomainError{"d-from-c: W and v must lie in X"};

    Formula const dep = Formula::dependence({w.begin(), w.end()}, v);
    std::optional<Formula> antecedent;
    for (auto const & x : w)
        antecedent = antecedent ? Formula::conj(*antecedent, Formula::constancy(x)) : Formula::constancy(x);
    Formula const cv = Formula::constancy(v);
    std::string const rhs_text = (antecedent ? print(*antecedent) : std::string{"<top>"}) + " -> C(" + v + ")";

    LawResult sweep = law("D(W;v) = C-implication, by satisfies",
                          print(dep) + " and " + rhs_text + " have the same satisfying teams");
    LawResult algebra = law("D(W;v) = C-implication, by denote", "denote of both sides coincide");

    SpacePtr const space = make_space(vars, m.size());
    DenseTeamSet const lhs = satisfaction_set(m, vars, dep, opts.bounds);
    // the empty conjunction is the top lower set
    LowerSet const rhs_denotation = heyting(antecedent ? denote(m, vars, *antecedent, opts.bounds) : LowerSet::top(space),
                                            denote(m, vars, cv, opts.bounds));
    DenseTeamSet const rhs = antecedent ? satisfaction_set(m, vars, Formula::imp(*antecedent, cv), opts.bounds)
                                        : rhs_denotation.dense();
    sweep.checked = lhs.team_count();
    if (auto t = first_difference(lhs, rhs))
        fail_with(sweep, dep, m, Team{space, *t}, lhs.test(*t), "right-hand side gives " + std::string{rhs.test(*t) ? "yes" : "no"});
    algebra.checked = 1;
    LowerSet const lhs_denotation = denote(m, vars, dep, opts.bounds);
    if (!(lhs_denotation == rhs_denotation))
        fail_with(algebra, render(lhs_denotation, m) + " vs " + render(rhs_denotation, m));
    sweep.detail = "W = " + set_name(w) + ", v = " + v + ", " + bytes(lhs.count()) + " satisfying teams";

    r.laws = {sweep, algebra};
    r.elapsed_ms = ms_since(start);
    return r;
}

namespace
{

struct TeamSample
{
    SpacePtr space;
    std::vector<TeamMask> teams;
    bool exhaustive = true;
};

TeamSample xyz_teams(Structure const & m, SuiteOptions const & opts)
{
    TeamSample s;
    s.space = make_space({"x", "y", "z"}, m.size());
    std::size_t const n = s.space->size();
    if (n <= 16 && (std::uint64_t{1} << n) <= opts.bounds.max_teams)
    {
        for (TeamMask t = 0; t < (TeamMask{1} << n); ++t)
            s.teams.push_back(t);
        return s;
    }
    s.exhaustive = false;
    std::mt19937_64 rng{opts.seed};
    for (std::uint64_t i = 0; i < opts.armstrong_samples; ++i)
        s.teams.push_back(rng() & s.space->full_mask());
    return s;
}

/// Verdicts of `f` on each team: through `satisfies` on an exhaustive sweep,
/// through the subteam denotation on a sample. `agree` collects the
/// cross-check between the two where both are affordable.
std::vector<bool> verdicts(Structure const & m, TeamSample const & s, Formula const & f, SuiteOptions const & opts,
                           LawResult & agree)
{
    std::vector<bool> out(s.teams.size());
    std::vector<std::uint8_t> local(s.teams.size());
    std::vector<std::int8_t> reference(s.teams.size(), -1);
    if (s.exhaustive)
    {
        Evaluator ev{EvalContext{m, s.space->var_set(), opts.bounds}, f};
        for (std::size_t i = 0; i < s.teams.size(); ++i)
            reference[i] = ev.satisfies(s.teams[i]) ? 1 : 0;
    }
    for_each_index(s.teams.size(), opts.exec, [&](std::uint64_t i) {
        Team const t{s.space, s.teams[i]};
        DenseTeamSet const d = subteam_denotation(m, t, f);
        local[i] = d.test(d.team_count() - 1);
        // the reference evaluator visits every subteam; keep it to small teams
        if (!s.exhaustive && t.size() <= 10)
        {
            Evaluator ev{EvalContext{m, s.space->var_set(), opts.bounds}, f};
            reference[i] = ev.satisfies(t) ? 1 : 0;
        }
    });
    for (std::size_t i = 0; i < s.teams.size(); ++i)
    {
        out[i] = local[i] != 0;
        if (reference[i] < 0)
            continue;
        ++agree.checked;
        if ((reference[i] != 0) != out[i])
            fail_with(agree, f, m, Team{s.space, s.teams[i]}, reference[i] != 0, "subteam denotation disagrees");
    }
    return out;
}

void scale_of(Report & r, Structure const & m, TeamSample const & s, SuiteOptions const & opts)
{
    r.scale["|A|"] = bytes(m.size());
    r.scale["X"] = "{x,y,z}";
    r.scale["teams"] = bytes(s.teams.size()) + (s.exhaustive ? " (all)" : " (sampled)");
    if (!s.exhaustive)
        r.seed = opts.seed;
}

struct Axiom
{
    char const * name;
    char const * armstrong;
    char const * implicational;
};

constexpr std::array<Axiom, 5> axioms = {{
    {"(1) I", "D(x ; x)", "C(x) -> C(x)"},
    {"(2) C", "D(x, y ; z) -> D(y, x ; z)", "(C(x) -> C(y) -> C(z)) -> C(y) -> C(x) -> C(z)"},
    {"(3) W", "D(x, x ; y) -> D(x ; y)", "(C(x) -> C(x) -> C(y)) -> C(x) -> C(y)"},
    {"(4) K", "D(x ; z) -> D(x, y ; z)", "(C(x) -> C(z)) -> C(x) -> C(y) -> C(z)"},
    {"(5) B", "D(x ; y) /\\ D(y ; z) -> D(x ; z)", "(C(x) -> C(y)) -> (C(y) -> C(z)) -> C(x) -> C(z)"},
}};

void assert_valid(LawResult & l, std::vector<bool> const & v, Formula const & f, Structure const & m, TeamSample const & s)
{
    l.checked += v.size();
    for (std::size_t i = 0; i < v.size(); ++i)
        if (!v[i])
        {
            fail_with(l, f, m, Team{s.space, s.teams[i]}, false, "");
            return;
        }
}

} // namespace

Report armstrong_check(Structure const & m, SuiteOptions const & opts)
{
    auto const start = Clock::now();
    Report r = start_report("armstrong", opts);
    TeamSample const s = xyz_teams(m, opts);
    scale_of(r, m, s, opts);
    LawResult agree = law("evaluation paths agree", "satisfies = subteam denotation");
    for (auto const & a : axioms)
    {
        Formula const f = parse(a.armstrong);
        LawResult l = law(std::string{"armstrong "} + a.name, print(f));
        assert_valid(l, verdicts(m, s, f, opts, agree), f, m, s);
        r.laws.push_back(std::move(l));
    }
    r.laws.push_back(std::move(agree));
    r.elapsed_ms = ms_since(start);
    return r;
}

Report implicational_check(Structure const & m, SuiteOptions const & opts)
{
    auto const start = Clock::now();
    Report r = start_report("implicational", opts);
    TeamSample const s = xyz_teams(m, opts);
    scale_of(r, m, s, opts);
    LawResult agree = law("evaluation paths agree", "satisfies = subteam denotation");
    LawResult paired = law("armstrong and implicational verdicts coincide", "per team, under p, q, r = C(x), C(y), C(z)");

    for (auto const & a : axioms)
    {
        Formula const f = parse(a.implicational);
        LawResult l = law(std::string{"axiom "} + a.name, print(f));
        auto const vi = verdicts(m, s, f, opts, agree);
        assert_valid(l, vi, f, m, s);
        r.laws.push_back(std::move(l));

        Formula const g = parse(a.armstrong);
        auto const va = verdicts(m, s, g, opts, agree);
        for (std::size_t i = 0; i < va.size(); ++i)
        {
            ++paired.checked;
            if (va[i] != vi[i])
                fail_with(paired, g, m, Team{s.space, s.teams[i]}, va[i], std::string{"axiom "} + a.name + " differs");
        }
    }
    {
        Formula const k = parse("C(x) -> C(y) -> C(x)");
        LawResult l = law("standard K", print(k));
        assert_valid(l, verdicts(m, s, k, opts, agree), k, m, s);
        r.laws.push_back(std::move(l));
    }
    {
        // reported, not asserted: the claim about Peirce's law is about derivability
        Formula const p = parse("((C(x) -> C(y)) -> C(x)) -> C(x)");
        LawResult l = law("Peirce (reported)", print(p));
        l.verdict = Verdict::info;
        auto const v = verdicts(m, s, p, opts, agree);
        l.checked = v.size();
        auto const bad = std::find(v.begin(), v.end(), false);
        if (bad == v.end())
            l.detail = "valid on every team checked";
        else
        {
            Team const t{s.space, s.teams[static_cast<std::size_t>(bad - v.begin())]};
            l.detail = "fails on " + render(t, m);
            Counterexample c;
            c.formula = print(p);
            c.structure = m;
            c.team = t;
            l.counterexample = std::move(c);
        }
        r.laws.push_back(std::move(l));
    }
    r.laws.push_back(std::move(paired));
    r.laws.push_back(std::move(agree));
    r.elapsed_ms = ms_since(start);
    return r;
}

Report diagram_check(Structure const & m0, Variable const & v, SuiteOptions const & opts)
{
    auto const start = Clock::now();
    Report r = start_report("diagram", opts);
    Structure m = m0;
    std::vector<std::string> names(m.size());
    for (auto const & [name, value] : m.constants())
        if (names[value].empty())
            names[value] = name;
    for (Element e = 0; e < m.size(); ++e)
        if (names[e].empty())
        {
            std::string name = "c" + std::to_string(e);
            while (m.constant(name))
                name += "_";
            m.add_constant(name, e);
            names[e] = name;
        }
    r.scale["|A|"] = bytes(m.size());
    r.scale["X"] = "{" + v + "}";

    std::optional<Formula> disj;
    std::optional<Formula> split;
    for (auto const & c : names)
    {
        Formula const eq = Formula::equality(Term::var(v), Term::constant(c));
        disj = disj ? Formula::disj(*disj, eq) : eq;
        split = split ? Formula::tensor(*split, eq) : eq;
    }
    Formula const cv = Formula::constancy(v);
    Formula const axiom = Formula::forall(v, *split);

    LawResult def = law("C(v) = \\/ v = c", "constancy is the additive disjunction over the diagram constants");
    LawResult tv = law("diagram axiom TRUE", print(axiom));
    VarSet const vars{v};
    DenseTeamSet const a = satisfaction_set(m, vars, cv, opts.bounds);
    DenseTeamSet const b = satisfaction_set(m, vars, *disj, opts.bounds);
    def.checked = a.team_count();
    if (auto t = first_difference(a, b))
        fail_with(def, *disj, m, Team{make_space(vars, m.size()), *t}, b.test(*t), "C(" + v + ") gives the opposite");
    if (!(denote(m, vars, cv, opts.bounds) == denote(m, vars, *disj, opts.bounds)))
        fail_with(def, "denotations differ");
    def.detail = print(*disj) + ", " + bytes(a.count()) + " teams each";
    tv.checked = 1;
    TruthValue const value = truth_value(m, axiom, opts.bounds);
    tv.detail = std::string{to_string(value)};
    if (value != TruthValue::true_value)
        fail_with(tv, axiom, m, Team{make_space({}, m.size()), 1}, false, "truth value " + tv.detail);

    r.laws = {def, tv};
    r.elapsed_ms = ms_since(start);
    return r;
}

// ---------------------------------------------------------------------------
// full abstraction

FullAbstraction full_abstraction_witness(Structure const & m, Formula const & phi, Formula const & psi, Bounds const & bounds)
{
    VarSet vars = open_vars(phi, m);
    for (auto const & x : open_vars(psi, m))
        vars.insert(x);
    std::vector<Variable> const order(vars.begin(), vars.end());

    DenseTeamSet const dphi = denote(m, vars, phi, bounds).dense();
    DenseTeamSet const dpsi = denote(m, vars, psi, bounds).dense();
    SpacePtr const space = make_space(vars, m.size());

    std::optional<Team> best;
    std::set<Tuple> best_rel;
    dphi.for_each([&](TeamMask t) {
        if (dpsi.test(t))
            return;
        Team const team{space, t};
        auto const tuples = rel(team, order);
        if (!best || team.size() < best->size() || (team.size() == best->size() && tuples < best_rel))
        {
            best = team;
            best_rel = tuples;
        }
    });
    if (!best)
        throw NoWitness{"denote(phi) is contained in denote(psi); no separating team"};

    FullAbstraction out{m, "R", order, *best, phi, psi};
    while (out.structure.relation(out.relation) || out.structure.constant(out.relation))
        out.relation = out.relation == "R" ? "R_1" : "R_" + std::to_string(std::stoi(out.relation.substr(2)) + 1);
    out.structure.add_relation(out.relation, order.size(), best_rel);

    std::vector<Term> args;
    for (auto const & x : order)
        args.push_back(Term::var(x));
    auto context = [&](Formula const & body) {
        Formula f = Formula::imp(Formula::relation(out.relation, args), body);
        for (auto it = order.rbegin(); it != order.rend(); ++it)
            f = Formula::forall(*it, std::move(f));
        return f;
    };
    out.context_phi = context(phi);
    out.context_psi = context(psi);
    out.phi_value = truth_value(out.structure, out.context_phi, bounds);
    out.psi_value = truth_value(out.structure, out.context_psi, bounds);
    return out;
}

namespace
{

Report full_abstraction_suite(SuiteOptions const & opts)
{
    auto const start = Clock::now();
    Report r = start_report("full-abstraction", opts);
    Structure const m = opts.structure ? *opts.structure : Structure::uniform(2);
    r.scale["|A|"] = bytes(m.size());

    struct Case
    {
        char const * phi;
        char const * psi;
    };
    for (auto const & [phi_text, psi_text] : {Case{"D(x ; y)", "C(y)"}, Case{"x = x", "C(x)"}})
    {
        Formula const phi = parse(phi_text);
        Formula const psi = parse(psi_text);
        LawResult l = law(std::string{"separate "} + phi_text + " from " + psi_text,
                          "C[phi] is TRUE and C[psi] is not");
        l.checked = 1;
        FullAbstraction const fa = full_abstraction_witness(m, phi, psi, opts.bounds);
        Team const unit{make_space({}, fa.structure.size()), 1};
        // re-evaluate from the printed contexts, as a reader of the emitted files would
        TruthValue const phi_again = truth_value(fa.structure, parse(print(fa.context_phi)), opts.bounds);
        TruthValue const psi_again = truth_value(fa.structure, parse(print(fa.context_psi)), opts.bounds);
        l.detail = "witness " + render(fa.witness, m) + "; C[phi] " + std::string{to_string(fa.phi_value)} + ", C[psi] "
                   + std::string{to_string(fa.psi_value)};
        if (!fa.separated() || phi_again != fa.phi_value || psi_again != fa.psi_value)
            fail_with(l, fa.separated() ? fa.context_phi : fa.context_psi, fa.structure, unit,
                      fa.separated() ? phi_again == TruthValue::true_value : psi_again == TruthValue::true_value,
                      "contexts do not separate the formulas");
        r.laws.push_back(std::move(l));
    }

    LawResult none = law("no witness for equal formulas", "phi = psi raises NoWitness");
    none.checked = 1;
    try
    {
        Formula const phi = parse("D(x ; y)");
        full_abstraction_witness(m, phi, phi, opts.bounds);
        fail_with(none, "a witness was produced");
    }
    catch (NoWitness const &)
    {
    }
    r.laws.push_back(std::move(none));
    r.elapsed_ms = ms_since(start);
    return r;
}

std::vector<Structure> default_scales(SuiteOptions const & opts, std::initializer_list<std::size_t> sizes)
{
    if (opts.structure)
        return {*opts.structure};
    std::vector<Structure> out;
    for (auto n : sizes)
        out.push_back(Structure::uniform(n));
    return out;
}

Report merge(std::string suite, std::vector<Report> const & parts, SuiteOptions const & opts, Clock::time_point start)
{
    Report r = start_report(std::move(suite), opts);
    for (auto const & p : parts)
    {
        std::string const tag = "|A|=" + p.scale.at("|A|");
        for (auto const & [k, v] : p.scale)
        {
            auto & slot = r.scale[k];
            if (slot.find(v) == std::string::npos)
                slot += (slot.empty() ? "" : "; ") + v;
        }
        if (p.seed)
            r.seed = p.seed;
        for (auto l : p.laws)
        {
            l.name += " " + tag;
            r.laws.push_back(std::move(l));
        }
    }
    r.elapsed_ms = ms_since(start);
    return r;
}

Report d_from_c_suite(SuiteOptions const & opts)
{
    auto const start = Clock::now();
    std::vector<Report> parts;
    VarSet const vars{"x", "y"};
    for (auto const & m : default_scales(opts, {2, 3}))
        for (Variable const v : {"x", "y"})
            for (VarSet const & w : {VarSet{}, VarSet{v == "x" ? "y" : "x"}})
                parts.push_back(d_from_c_check(m, vars, w, v, opts));
    return merge("d-from-c", parts, opts, start);
}

Report diagram_suite(SuiteOptions const & opts)
{
    auto const start = Clock::now();
    std::vector<Report> parts;
    for (auto const & m : default_scales(opts, {1, 2, 3}))
        parts.push_back(diagram_check(m, "x", opts));
    return merge("diagram", parts, opts, start);
}

Report armstrong_suite(SuiteOptions const & opts)
{
    auto const start = Clock::now();
    std::vector<Report> parts;
    for (auto const & m : default_scales(opts, {2, 3}))
        parts.push_back(armstrong_check(m, opts));
    return merge("armstrong", parts, opts, start);
}

Report implicational_suite(SuiteOptions const & opts)
{
    auto const start = Clock::now();
    std::vector<Report> parts;
    for (auto const & m : default_scales(opts, {2, 3}))
        parts.push_back(implicational_check(m, opts));
    // Peirce's law at the scale named for it, teams on {x, y}
    Structure const m2 = opts.structure ? *opts.structure : Structure::uniform(2);
    Formula const p = parse("((C(x) -> C(y)) -> C(x)) -> C(x)");
    DenseTeamSet const sat = satisfaction_set(m2, {"x", "y"}, p, opts.bounds);
    Report r = merge("implicational", parts, opts, start);
    LawResult l = law("Peirce on {x,y} (reported)", print(p));
    l.verdict = Verdict::info;
    l.checked = sat.team_count();
    l.detail = sat.count() == sat.team_count() ? "valid on all " + bytes(sat.team_count()) + " teams"
                                               : "fails on " + bytes(sat.team_count() - sat.count()) + " teams";
    r.laws.push_back(std::move(l));
    return r;
}

std::vector<Report> sweep_view(Report const & sweep, std::string const & name, std::vector<std::string> const & laws)
{
    Report r = sweep;
    r.suite = name;
    r.laws.clear();
    for (auto const & l : sweep.laws)
        if (std::find(laws.begin(), laws.end(), l.name) != laws.end())
            r.laws.push_back(l);
    return {r};
}

} // namespace

std::vector<std::string> const & suite_names()
{
    static std::vector<std::string> const names = {
        "downward", "empty-team",    "trivalence", "dual-path", "adjunctions",    "lift",      "quantale",
        "heyting",  "armstrong", "implicational", "d-from-c", "diagram", "representation", "full-abstraction", "all",
    };
    return names;
}

std::vector<Report> run_suite(std::string const & name, SuiteOptions const & opts)
{
    auto sweep = [&] { return proposition_sweep(sweep_structure(opts.structure), opts); };
    if (name == "downward")
        return sweep_view(sweep(), name, {"downward-closure"});
    if (name == "empty-team")
        return sweep_view(sweep(), name, {"empty-team", "wand-empty-team-witness"});
    if (name == "trivalence")
        return sweep_view(sweep(), name, {"trivalence", "trivalence-values"});
    if (name == "dual-path")
        return sweep_view(sweep(), name, {"dual-path"});
    if (name == "adjunctions")
        return {adjunction_suite(opts)};
    if (name == "lift")
        return {lift_suite(opts)};
    if (name == "quantale")
        return {quantale_suite(opts)};
    if (name == "heyting")
        return {heyting_suite(opts)};
    if (name == "armstrong")
        return {armstrong_suite(opts)};
    if (name == "implicational")
        return {implicational_suite(opts)};
    if (name == "d-from-c")
        return {d_from_c_suite(opts)};
    if (name == "diagram")
        return {diagram_suite(opts)};
    if (name == "representation")
        return {representation_suite(opts)};
    if (name == "full-abstraction")
        return {full_abstraction_suite(opts)};
    if (name == "all")
    {
        std::vector<Report> out{sweep()};
        for (auto const & n : suite_names())
        {
            if (n == "all" || n == "downward" || n == "empty-team" || n == "trivalence" || n == "dual-path")
                continue;
            for (auto & r : run_suite(n, opts))
                out.push_back(std::move(r));
        }
        return out;
    }
    throw DomainError{"unknown suite '" + name + "'"};
}

} // namespace teamsem
