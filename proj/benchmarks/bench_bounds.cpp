#include "tbound/activations.hpp"
#include "tbound/compose.hpp"
#include "tbound/composer.hpp"
#include "tbound/genbound.hpp"
#include "tbound/multiindex.hpp"
#include "tbound/oracle.hpp"
#include "tbound/presets.hpp"
#include "tbound/primitives.hpp"

#include <benchmark/benchmark.h>

using namespace tbound;

namespace {

void BM_ActivationTable(benchmark::State& state)
{
    const auto kind = static_cast<ActivationKind>(state.range(0));
    for (auto _ : state)
        benchmark::DoNotOptimize(activation_table(kind, 10));
}
BENCHMARK(BM_ActivationTable)->DenseRange(0, 4);

void BM_EnumPartitions(benchmark::State& state)
{
    const int n = static_cast<int>(state.range(0));
    for (auto _ : state)
        for (const auto& beta : enum_ordered(n, n, true))
            if (total(beta) >= 1)
                benchmark::DoNotOptimize(enum_partitions({n}, beta, PartitionVariant::type));
}
BENCHMARK(BM_EnumPartitions)->DenseRange(2, 6);

void BM_MultiheadType(benchmark::State& state)
{
    ArchSpec s = presets::multihead_base();
    for (auto _ : state)
        benchmark::DoNotOptimize(multihead_type_table(s, static_cast<int>(state.range(0))));
}
BENCHMARK(BM_MultiheadType)->DenseRange(1, 5);

void BM_BlockType(benchmark::State& state)
{
    ArchSpec s = presets::block_base();
    s.i = s.o = static_cast<int>(state.range(1));
    for (auto _ : state)
        benchmark::DoNotOptimize(tblock_type_table(s, static_cast<int>(state.range(0))));
}
BENCHMARK(BM_BlockType)->ArgsProduct({{3, 5}, {5, 20}});

void BM_BlockLevel(benchmark::State& state)
{
    ArchSpec s = presets::block_base();
    for (auto _ : state)
        benchmark::DoNotOptimize(
            tblock_level_table(s, static_cast<int>(state.range(0)), FactorMode::exact_touchard));
}
BENCHMARK(BM_BlockLevel)->Arg(5)->Arg(10)->Arg(20);

void BM_TransformerType(benchmark::State& state)
{
    TransformerSpec t = presets::transformer_base(static_cast<int>(state.range(0)));
    for (auto _ : state)
        benchmark::DoNotOptimize(transformer_bounds(t, Variant::type, 4, FactorMode::exact_touchard));
}
BENCHMARK(BM_TransformerType)->Arg(1)->Arg(2)->Arg(4);

void BM_TransitionTimes(benchmark::State& state)
{
    GenBoundInput in = presets::genbound_base(2, static_cast<int>(state.range(0)));
    for (auto _ : state)
        benchmark::DoNotOptimize(transition_times(in, static_cast<int>(state.range(0))));
}
BENCHMARK(BM_TransitionTimes)->Arg(5)->Arg(10);

void BM_SoundnessTrial(benchmark::State& state)
{
    ArchSpec s = presets::block_base();
    std::uint64_t seed = 0;
    for (auto _ : state)
        benchmark::DoNotOptimize(soundness_check(Component::block, s, 2, 1, ++seed));
}
BENCHMARK(BM_SoundnessTrial)->Unit(benchmark::kMillisecond);

} // namespace

BENCHMARK_MAIN();
