#include "solver_common.hpp"

#include <numeric>

namespace swapsched {

std::size_t SolveReport::abandoned() const noexcept
{
	return static_cast<std::size_t>(std::count(success.begin(), success.end(), false));
}

namespace detail {

double solo_bound(const ProblemInstance& instance, UsageMode mode)
{
	double bound = 0.0;
	for (std::size_t i = 0; i < instance.mission_count(); ++i) {
		const MissionSpec& m = instance.mission(i);
		const double w = instance.weight(i, mode);
		long long reach = 0;
		for (int t = m.release; t < m.deadline; ++t)
			reach += std::min<long long>(m.rate_cap, units_that_fit(instance.capacity(static_cast<std::size_t>(t)), w));
		if (reach >= m.required_work())
			bound += m.rating;
	}
	return bound;
}

SolveReport make_report(const ProblemInstance& instance, UsageMode mode, Schedule schedule, std::string solver, std::uint64_t seed,
                        Clock::time_point start, std::uint64_t iterations, std::optional<double> upper_bound,
                        bool proven_optimal)
{
	SolveReport r;
	const Objective obj = objective(instance, schedule);
	r.value = obj.value;
	r.success = mission_success(instance, schedule);
	r.schedule = std::move(schedule);
	const double solo = solo_bound(instance, mode);
	r.upper_bound = std::max(upper_bound ? std::min(*upper_bound, solo) : solo, r.value);
	r.optimal = proven_optimal || r.abandoned() == 0 || !value_exceeds(r.upper_bound, r.value);
	if (r.optimal)
		r.upper_bound = r.value;
	r.ratio = r.upper_bound > 0.0 ? std::clamp(r.value / r.upper_bound, 0.0, 1.0) : 1.0;
	r.solver = std::move(solver);
	r.seed = seed;
	r.iterations = iterations;
	r.elapsed_ms = elapsed_ms_since(start);
	return r;
}

} // namespace detail

Permutation rating_order(const ProblemInstance& instance)
{
	Permutation order(instance.mission_count());
	std::iota(order.begin(), order.end(), std::size_t{0});
	const auto& ms = instance.missions();
	std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
		if (ms[a].rating != ms[b].rating)
			return ms[a].rating > ms[b].rating;
		if (ms[a].deadline != ms[b].deadline)
			return ms[a].deadline < ms[b].deadline;
		if (ms[a].id != ms[b].id)
			return ms[a].id < ms[b].id;
		return a < b;
	});
	return order;
}

Decoded decode_priority_order(const ProblemInstance& instance, UsageMode mode, std::span<const std::size_t> order)
{
	const std::size_t n = instance.mission_count();
	const auto T = static_cast<std::size_t>(instance.slots());
	const auto& gamma = instance.interaction();

	std::vector<double> residual = instance.platform().capacity;
	// active[t][j]: mission j holds units in slot t.
	std::vector<std::vector<char>> active(T, std::vector<char>(n, 0));
	Schedule schedule(n, T);

	struct Grant {
		std::size_t slot;
		int units;
		double increment;
	};
	std::vector<Grant> grants;

	for (std::size_t i : order) {
		const MissionSpec& m = instance.mission(i);
		const double w = instance.weight(i, mode);
		int need = m.required_work();
		grants.clear();

		for (auto t = static_cast<std::size_t>(m.release); t < static_cast<std::size_t>(m.deadline) && need > 0; ++t) {
			double inc = 0.0;
			for (std::size_t j = 0; j < n; ++j)
				if (active[t][j])
					inc += gamma.at(i, j);
			const int u = std::min({m.rate_cap, need, detail::units_that_fit(residual[t] - inc, w)});
			if (u >= 1) {
				grants.push_back({t, u, inc});
				need -= u;
			}
		}
		if (need > 0)
			continue;  // abandoned; nothing was committed

		for (const Grant& g : grants) {
			residual[g.slot] -= w * g.units + g.increment;
			active[g.slot][i] = 1;
			schedule.set(i, g.slot, g.units);
		}
	}

	Decoded d{std::move(schedule), {}};
	d.objective = objective(instance, d.schedule);
	return d;
}

SolveReport solve_greedy(const ProblemInstance& instance, UsageMode mode, const SolveControl& control)
{
	const auto start = Clock::now();
	const auto order = rating_order(instance);
	Decoded d = decode_priority_order(instance, mode, order);
	control.notify(d.objective);
	return detail::make_report(instance, mode, std::move(d.schedule), "greedy", 0, start, 1);
}

} // namespace swapsched
