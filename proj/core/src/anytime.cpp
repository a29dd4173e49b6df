#include "solver_common.hpp"

#include <limits>

namespace swapsched {

std::string_view to_string(InnerSolver inner) noexcept
{
	switch (inner) {
	case InnerSolver::greedy: return "greedy";
	case InnerSolver::local: return "local";
	case InnerSolver::ga: return "ga";
	case InnerSolver::exact: return "exact";
	}
	return "unknown";
}

InnerSolver parse_inner_solver(std::string_view name)
{
	for (auto s : {InnerSolver::greedy, InnerSolver::local, InnerSolver::ga, InnerSolver::exact})
		if (name == to_string(s))
			return s;
	throw DomainError("unknown solver '" + std::string(name) + "'");
}

AnytimeResult solve_anytime(InnerSolver inner, const ProblemInstance& instance, UsageMode mode, double budget_ms,
                            std::uint64_t seed, const AnytimeOptions& options)
{
	if (!(budget_ms > 0.0))
		throw DomainError("solve_anytime: budget_ms must be > 0");
	const auto start = Clock::now();

	AnytimeResult result;
	auto& trace = result.checkpoints;
	SolveControl control;
	control.deadline = detail::after_ms(start, budget_ms);
	control.on_incumbent = [&](const Objective& o) {
		const double best = trace.empty() ? o.value : std::max(trace.back().value, o.value);
		if (trace.empty() || best > trace.back().value)
			trace.push_back({detail::elapsed_ms_since(start), best});
	};

	SolveReport inner_report;
	switch (inner) {
	case InnerSolver::greedy:
		inner_report = solve_greedy(instance, mode, control);
		break;
	case InnerSolver::local:
		inner_report = solve_local_search(instance, mode, budget_ms, seed, control);
		break;
	case InnerSolver::ga: {
		GaParams params = options.ga;
		params.generations = std::numeric_limits<std::size_t>::max();
		inner_report = solve_genetic(instance, mode, params, seed, {}, control);
		break;
	}
	case InnerSolver::exact:
		inner_report = solve_exact(instance, mode, options.exact, control);
		break;
	}

	// Non-exact inners keep the solo bound; exact supplies its own.
	SolveReport& r = result.report;
	r = std::move(inner_report);
	r.solver = "anytime:" + std::string(to_string(inner));
	r.seed = seed;
	r.elapsed_ms = detail::elapsed_ms_since(start);
	if (trace.empty() || trace.back().value < r.value)
		trace.push_back({r.elapsed_ms, r.value});
	return result;
}

} // namespace swapsched
