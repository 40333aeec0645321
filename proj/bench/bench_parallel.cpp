// Serial reference path against the OpenMP path for the exhaustive kernels.
// The argument selects the path: 0 serial, 1 parallel.

#include <teamsem/algebra.hpp>
#include <teamsem/laws.hpp>
#include <teamsem/parallel.hpp>

#include <benchmark/benchmark.h>

using namespace teamsem;

namespace
{

Execution exec_of(benchmark::State const & state)
{
    return state.range(0) == 0 ? Execution::serial : Execution::parallel;
}

void label(benchmark::State & state)
{
    state.SetLabel(std::string{to_string(exec_of(state))} + ", " + std::to_string(worker_count()) + " workers");
}

void BM_PropositionSweep(benchmark::State & state)
{
    SuiteOptions opts;
    opts.exec = exec_of(state);
    opts.depth = static_cast<int>(state.range(1));
    Structure const m = sweep_structure(std::nullopt);
    for (auto _ : state)
    {
        Report r = proposition_sweep(m, opts);
        benchmark::DoNotOptimize(r);
    }
    label(state);
}

// meet(-, B) -| B -> - over every pair of lower sets on {x, y}
void BM_HeytingAdjunction(benchmark::State & state)
{
    auto const s = make_space({"x", "y"}, 2);
    auto const all = all_lower_sets(s);
    std::vector<LowerSet> const bs(all.begin(), all.begin() + 8);
    for (auto _ : state)
        for (auto const & b : bs)
        {
            TeamOperator const left{"meet", s, s, [b](LowerSet const & u) { return meet(u, b); }};
            TeamOperator const right{"heyting", s, s, [b](LowerSet const & u) { return heyting(b, u); }};
            benchmark::DoNotOptimize(check_adjunction(left, right, exec_of(state)));
        }
    label(state);
}

void BM_Armstrong(benchmark::State & state)
{
    SuiteOptions opts;
    opts.exec = exec_of(state);
    Structure const m = Structure::uniform(static_cast<std::size_t>(state.range(1)));
    for (auto _ : state)
    {
        Report r = armstrong_check(m, opts);
        benchmark::DoNotOptimize(r);
    }
    label(state);
}

} // namespace

BENCHMARK(BM_PropositionSweep)->ArgsProduct({{0, 1}, {2, 3}})->Unit(benchmark::kMillisecond);
BENCHMARK(BM_HeytingAdjunction)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_Armstrong)->ArgsProduct({{0, 1}, {2, 3}})->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
