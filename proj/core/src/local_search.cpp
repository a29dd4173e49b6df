#include "solver_common.hpp"

namespace swapsched {

SolveReport solve_local_search(const ProblemInstance& instance, UsageMode mode, double budget_ms,
                               std::uint64_t seed, const SolveControl& control)
{
	if (!(budget_ms > 0.0))
		throw DomainError("solve_local_search: budget_ms must be > 0");
	const auto start = Clock::now();
	const SolveControl ctl = detail::with_budget(control, start, budget_ms);

	Permutation order = rating_order(instance);
	Decoded best = decode_priority_order(instance, mode, order);
	ctl.notify(best.objective);

	const std::size_t n = order.size();
	std::uint64_t moves = 0;
	bool improved = true;
	while (improved && !ctl.expired()) {
		improved = false;
		for (std::size_t a = 0; a + 1 < n && !improved; ++a) {
			for (std::size_t b = a + 1; b < n; ++b) {
				if (ctl.expired())
					break;
				std::swap(order[a], order[b]);
				Decoded cand = decode_priority_order(instance, mode, order);
				if (detail::improves(cand.objective, best.objective)) {
					best = std::move(cand);
					++moves;
					ctl.notify(best.objective);
					improved = true;
					break;
				}
				std::swap(order[a], order[b]);
			}
		}
	}
	return detail::make_report(instance, mode, std::move(best.schedule), "local", seed, start, moves);
}

} // namespace swapsched
