#pragma once

#include <teamsem/ast.hpp>
#include <teamsem/eval.hpp>
#include <teamsem/model.hpp>
#include <teamsem/parallel.hpp>

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

namespace teamsem
{

/// Indicator of a set of teams over an assignment space with n assignments,
/// one bit per team mask in [0, 2^n).
class DenseTeamSet
{
public:
    static constexpr std::size_t max_assignments = 24;

    explicit DenseTeamSet(std::size_t assignments);

    std::size_t assignments() const noexcept { return n_; }
    std::uint64_t team_count() const noexcept { return std::uint64_t{1} << n_; }

    bool test(TeamMask t) const noexcept { return (words_[t >> 6] >> (t & 63)) & 1; }
    /// Bits of teams 64w .. 64w+63; only meaningful with at least 6 assignments.
    std::uint64_t word(std::size_t w) const noexcept { return words_[w]; }
    void set_word(std::size_t w, std::uint64_t bits) noexcept { words_[w] = bits; }
    void set(TeamMask t) noexcept { words_[t >> 6] |= std::uint64_t{1} << (t & 63); }
    void reset(TeamMask t) noexcept { words_[t >> 6] &= ~(std::uint64_t{1} << (t & 63)); }
    void fill() noexcept;
    void complement() noexcept;

    DenseTeamSet & operator&=(DenseTeamSet const & o) noexcept;
    DenseTeamSet & operator|=(DenseTeamSet const & o) noexcept;

    /// Adds every subteam of every member.
    void close_downward() noexcept;
    /// Keeps exactly the members all of whose subteams are members.
    void interior_downward() noexcept;
    bool is_downward_closed() const;

    /// Members with no member strictly above them, in increasing mask order.
    std::vector<TeamMask> maximal() const;
    std::uint64_t count() const noexcept;
    bool subset_of(DenseTeamSet const & o) const noexcept;

    template <typename Fn>
    void for_each(Fn && fn) const
    {
        for (std::size_t w = 0; w < words_.size(); ++w)
            for (std::uint64_t bits = words_[w]; bits; bits &= bits - 1)
                fn(static_cast<TeamMask>((w << 6) | static_cast<std::size_t>(std::countr_zero(bits))));
    }

    friend bool operator==(DenseTeamSet const &, DenseTeamSet const &) = default;

private:
    void trim() noexcept;

    std::size_t n_;
    std::vector<std::uint64_t> words_;
};

/// A downward-closed set of teams over one variable set, stored as the
/// antichain of its maximal teams (sorted by mask). The empty antichain is
/// the empty lower set; {0} is the lower set {{}}.
class LowerSet
{
public:
    explicit LowerSet(SpacePtr space) : space_{std::move(space)} {}

    /// down(generators); the generators need not form an antichain.
    static LowerSet from_generators(SpacePtr space, std::span<TeamMask const> generators);
    /// Requires `members` to be downward closed; throws std::logic_error
    /// otherwise so that a non-closed result is never silently repaired.
    static LowerSet from_dense(SpacePtr space, DenseTeamSet const & members);

    static LowerSet bottom(SpacePtr space) { return LowerSet{std::move(space)}; }
    static LowerSet top(SpacePtr space);
    /// down({{}}), the unit of the tensor.
    static LowerSet unit(SpacePtr space);

    SpacePtr const & space() const noexcept { return space_; }
    VarSet vars() const { return space_->var_set(); }
    std::span<TeamMask const> maximal() const noexcept { return maximal_; }
    std::vector<Team> maximal_teams() const;

    bool empty() const noexcept { return maximal_.empty(); }
    bool contains(TeamMask t) const noexcept;
    bool contains(Team const & t) const;
    bool subset_of(LowerSet const & o) const;

    DenseTeamSet dense() const;
    std::uint64_t member_count() const { return dense().count(); }

    friend bool operator==(LowerSet const & a, LowerSet const & b)
    {
        return a.maximal_ == b.maximal_ && *a.space_ == *b.space_;
    }

private:
    SpacePtr space_;
    std::vector<TeamMask> maximal_;
};

/// down(teams). Throws DomainMismatch when the teams do not share a domain.
LowerSet down(SpacePtr space, std::span<Team const> teams);

LowerSet meet(LowerSet const & a, LowerSet const & b);
LowerSet join(LowerSet const & a, LowerSet const & b);
/// down{ m u n | m in a, n in b }
LowerSet tensor(LowerSet const & a, LowerSet const & b);
/// { m | for all n in a, m u n in b }
LowerSet wand(LowerSet const & a, LowerSet const & b);
/// { m | every n <= m in a is in b }
LowerSet heyting(LowerSet const & a, LowerSet const & b);

/// Projection A^(X u {v}) -> A^X away from a variable v.
class Projection
{
public:
    Projection(SpacePtr source, Variable v);

    SpacePtr const & source() const noexcept { return source_; }
    SpacePtr const & target() const noexcept { return target_; }
    Variable const & var() const noexcept { return var_; }

    std::size_t image(std::size_t source_index) const { return image_[source_index]; }
    /// Source indices over one target index, i.e. t[v -> a] for every a.
    TeamMask fiber(std::size_t target_index) const { return fiber_[target_index]; }
    std::size_t point(std::size_t target_index, Element a) const { return points_[target_index * base_ + a]; }

    /// Tarski existential exists(pi)(S).
    TeamMask exists(TeamMask s) const;
    /// Tarski universal forall(pi)(S).
    TeamMask forall(TeamMask s) const;
    /// Inverse image pi^-1(T) = T[v -> A].
    TeamMask preimage(TeamMask t) const;

private:
    SpacePtr source_;
    SpacePtr target_;
    Variable var_;
    std::size_t base_;
    std::vector<std::size_t> image_;
    std::vector<TeamMask> fiber_;
    std::vector<std::size_t> points_;
};

Team exists_pi(Team const & s, Variable const & v);
Team forall_pi(Team const & s, Variable const & v);
/// pi^-1(T) for T on X, giving a team on X u {v}.
Team preimage_pi(Team const & t, Variable const & v);

/// A map between powersets of assignments (Tarski level).
struct SetOperator
{
    std::string name;
    SpacePtr source;
    SpacePtr target;
    std::function<TeamMask(TeamMask)> apply;
};

/// A map between lattices of lower sets.
struct TeamOperator
{
    std::string name;
    SpacePtr source;
    SpacePtr target;
    std::function<LowerSet(LowerSet const &)> apply;

    LowerSet operator()(LowerSet const & u) const { return apply(u); }
};

SetOperator exists_pi_op(SpacePtr source, Variable v);
SetOperator forall_pi_op(SpacePtr source, Variable v);
SetOperator preimage_pi_op(SpacePtr target, Variable v);
SetOperator compose(SetOperator const & outer, SetOperator const & inner);

/// L(h): U -> down{ h(T) | T in U }.
TeamOperator lift(SetOperator const & h);
TeamOperator compose(TeamOperator const & outer, TeamOperator const & inner);

/// { T | some f : T -> A has T[v -> f] in U }, by explicit enumeration of
/// choice functions. U is over X u {v}; the result is over X.
LowerSet exists_h(LowerSet const & u, Variable const & v, Bounds const & bounds = {});
/// { T | T[v -> A] in U }.
LowerSet forall_h(LowerSet const & u, Variable const & v, Bounds const & bounds = {});
/// H(pi) = L(pi^-1), from lower sets over X to lower sets over X u {v}.
LowerSet subst_h(LowerSet const & u, Variable const & v);

TeamOperator exists_h_op(SpacePtr source, Variable v, Bounds bounds = {});
TeamOperator forall_h_op(SpacePtr source, Variable v, Bounds bounds = {});
TeamOperator subst_h_op(SpacePtr target, Variable v);

/// D_W = { T | s ~_W t implies s(v) = t(v) } over X. Requires W u {v} in X.
LowerSet dep_lowerset(VarSet const & w, Variable const & v, VarSet const & vars, Structure const & m,
                      Bounds const & bounds = {});

/// exists_H(D_W n U) and forall_H(D_W -> U); U is over X u {v}.
LowerSet guarded_exists_op(LowerSet const & u, VarSet const & w, Variable const & v, Structure const & m,
                           Bounds const & bounds = {});
LowerSet guarded_forall_op(LowerSet const & u, VarSet const & w, Variable const & v, Structure const & m,
                           Bounds const & bounds = {});

/// Compositional denotation: literals denote the down-closure of their
/// maximal flat team, dependence atoms D_W, connectives and quantifiers the
/// lattice operations above. Computed independently of `satisfies`.
/// Sub-denotations are cached per (subformula, variable set); a read-only
/// `shared` denoter is consulted first, which lets parallel workers reuse a
/// pre-computed cache without synchronisation.
class Denoter
{
public:
    explicit Denoter(Structure const & m, Bounds bounds = {}, Denoter const * shared = nullptr);

    LowerSet denote(VarSet const & vars, Formula const & f);
    Structure const & structure() const noexcept { return m_; }

private:
    struct Entry
    {
        VarSet vars;
        Formula pin; // keeps the node alive so its address is not reused
        LowerSet value;
    };

    LowerSet const * lookup(Formula const & f, VarSet const & vars) const;
    LowerSet rec(Formula const & f, VarSet const & vars);
    LowerSet quantifier(Quantified const & q, VarSet const & vars);

    Structure const & m_;
    Bounds bounds_;
    Denoter const * shared_;
    std::unordered_map<Node const *, std::vector<Entry>> cache_;
};

LowerSet denote(Structure const & m, VarSet const & vars, Formula const & f, Bounds const & bounds = {});

/// Satisfaction relativized to the subteams of one team T: bit i is set when
/// the subteam of T made of the members selected by the bits of i satisfies
/// `f` (members numbered in increasing assignment index). Covers literals,
/// dependence atoms, /\, \/, -> and *. Throws FragmentError on the wand and
/// quantifiers, whose clauses look outside the subteams of T.
DenseTeamSet subteam_denotation(Structure const & m, Team const & t, Formula const & f);

/// Every lower set over a space, in a deterministic order. Throws
/// BoundExceeded when there are more than `cap`.
std::vector<LowerSet> all_lower_sets(SpacePtr const & space, std::uint64_t cap = 1'000'000);

struct AdjunctionResult
{
    bool holds = true;
    std::uint64_t source_size = 0;
    std::uint64_t target_size = 0;
    std::uint64_t pairs = 0;
    /// First failing pair (p, q) in enumeration order, rendered.
    std::optional<std::pair<std::string, std::string>> witness;
};

/// Checks left(p) <= q  <=>  p <= right(q) for every p in the source lattice
/// of `left` and q in its target lattice.
AdjunctionResult check_adjunction(TeamOperator const & left, TeamOperator const & right,
                                  Execution exec = Execution::parallel);
AdjunctionResult check_adjunction(SetOperator const & left, SetOperator const & right,
                                  Execution exec = Execution::parallel);

/// Join-prime test by brute force over every pair of lattice elements.
bool is_join_prime(LowerSet const & u);
/// All join-primes of the lattice over `space`, by brute force.
std::vector<LowerSet> join_primes(SpacePtr const & space);
/// { down({T}) | T a team }.
std::vector<LowerSet> principal_lower_sets(SpacePtr const & space);
/// Atoms of the tensor semilattice of join-primes, by brute force.
std::vector<LowerSet> atoms(SpacePtr const & space);

/// Join of tensors of tuple atoms: one disjunct per maximal team, listing
/// the assignment indices of its members.
struct NormalForm
{
    SpacePtr space;
    std::vector<std::vector<std::size_t>> disjuncts;
};

NormalForm normal_form(LowerSet const & u);
LowerSet reconstruct(NormalForm const & nf);
/// Syntactic order: each disjunct of `a` is included in some disjunct of `b`.
bool normal_form_leq(NormalForm const & a, NormalForm const & b);
/// e.g. `x = 0 \/ x = 1`, or `(x = 0 /\ y = 0) * (x = 1 /\ y = 1)`.
std::string render(NormalForm const & nf, Structure const & m);

/// Human-readable `{ {x=0, y=1}, ... }` listing of a team.
std::string render(Team const & t, Structure const & m);
std::string render(LowerSet const & u, Structure const & m);

} // namespace teamsem
