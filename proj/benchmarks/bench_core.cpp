#include <random>

#include <benchmark/benchmark.h>

#include "commands.hpp"
#include "oracles.hpp"

using namespace suspedf;

static void BM_SimulateDemo(benchmark::State& state)
{
	auto ts = cli::demo_taskset(cli::default_epsilon);
	auto ps = cli::demo_patterns(ts);
	for (auto _ : state)
		benchmark::DoNotOptimize(simulate_edf(ts, ps, {TimeValue(24), OnMiss::continue_running}));
}
BENCHMARK(BM_SimulateDemo);

static void BM_DeviRandom(benchmark::State& state)
{
	std::mt19937_64 rng(1);
	std::vector<TaskSet> sets;
	for (int i = 0; i < 64; ++i)
		sets.push_back(oracle::random_rational_taskset(rng, static_cast<std::size_t>(state.range(0))));
	std::size_t i = 0;
	for (auto _ : state)
		benchmark::DoNotOptimize(devi_test(sets[i++ % sets.size()]));
}
BENCHMARK(BM_DeviRandom)->Arg(4)->Arg(16);

static void BM_SmallSearch(benchmark::State& state)
{
	GridSpec spec;
	spec.period_choices = {TimeValue(6), TimeValue(8)};
	spec.wcet_step = TimeValue(1, 2);
	spec.suspension_choices = {TimeValue(0), TimeValue(1)};
	spec.pattern_prefix_step = TimeValue(1);
	for (auto _ : state)
		benchmark::DoNotOptimize(find_counterexamples(spec));
}
BENCHMARK(BM_SmallSearch)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
