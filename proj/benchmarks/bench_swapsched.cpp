#include <swapsched/advisor.hpp>
#include <swapsched/generator.hpp>
#include <swapsched/offload_sim.hpp>
#include <swapsched/scenario_io.hpp>
#include <swapsched/solvers.hpp>

#include <benchmark/benchmark.h>

using namespace swapsched;

namespace {

ProblemInstance instance(std::size_t n, int slots, std::uint64_t seed = 1)
{
	GenParams p;
	p.missions = n;
	p.slots = slots;
	p.capacity = {1, 3};
	p.work = {2, 10};
	p.rating = {1, 20};
	p.density = 0.3;
	p.seed = seed;
	return generate_instance(p);
}

void BM_Greedy(benchmark::State& state)
{
	const auto inst = instance(static_cast<std::size_t>(state.range(0)), static_cast<int>(state.range(1)));
	for (auto _ : state)
		benchmark::DoNotOptimize(solve_greedy(inst, UsageMode::rated).value);
}
BENCHMARK(BM_Greedy)->Args({5, 8})->Args({20, 40})->Args({100, 200});

void BM_Genetic(benchmark::State& state)
{
	const auto inst = instance(static_cast<std::size_t>(state.range(0)), static_cast<int>(state.range(1)));
	for (auto _ : state)
		benchmark::DoNotOptimize(solve_genetic(inst, UsageMode::rated, GaParams{}, 3).value);
}
BENCHMARK(BM_Genetic)->Args({5, 8})->Args({20, 40})->Unit(benchmark::kMillisecond);

void BM_Exact(benchmark::State& state)
{
	const auto inst = instance(static_cast<std::size_t>(state.range(0)), static_cast<int>(state.range(1)));
	for (auto _ : state)
		benchmark::DoNotOptimize(solve_exact(inst, UsageMode::rated).value);
}
BENCHMARK(BM_Exact)->Args({3, 6})->Args({5, 8})->Args({8, 12})->Unit(benchmark::kMicrosecond);

void BM_Simulation(benchmark::State& state)
{
	SimGenParams p;
	p.nodes = static_cast<std::size_t>(state.range(0));
	p.jobs = static_cast<std::size_t>(state.range(1));
	p.horizon = 200;
	p.admission = AdmissionPolicy::offload;
	const auto sc = generate_sim_scenario(p);
	for (auto _ : state)
		benchmark::DoNotOptimize(run_simulation(sc).metrics.completed);
}
BENCHMARK(BM_Simulation)->Args({3, 100})->Args({10, 1000})->Unit(benchmark::kMicrosecond);

void BM_ScenarioRoundTrip(benchmark::State& state)
{
	const ScenarioDocument doc(instance(20, 40));
	for (auto _ : state)
		benchmark::DoNotOptimize(load_scenario(save_scenario(doc)).kind);
}
BENCHMARK(BM_ScenarioRoundTrip)->Unit(benchmark::kMicrosecond);

void BM_AdvisorTraining(benchmark::State& state)
{
	std::vector<TrainingExample> data;
	for (std::uint64_t s = 0; s < 20; ++s) {
		const auto inst = instance(5, 8, s);
		for (std::size_t i = 0; i < inst.mission_count(); ++i)
			data.push_back({extract_features(inst, i), static_cast<int>(s % 2)});
	}
	for (auto _ : state)
		benchmark::DoNotOptimize(train_advisor(data, {}).bias);
}
BENCHMARK(BM_AdvisorTraining)->Unit(benchmark::kMicrosecond);

} // namespace

BENCHMARK_MAIN();
