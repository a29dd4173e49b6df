#ifndef SWAPSCHED_SOLVERS_HPP
#define SWAPSCHED_SOLVERS_HPP

#include <swapsched/model.hpp>

#include <chrono>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace swapsched {

using Clock = std::chrono::steady_clock;
using Permutation = std::vector<std::size_t>;

struct SolveReport {
	Schedule schedule;
	double value = 0.0;
	std::vector<bool> success;
	double upper_bound = 0.0;
	double ratio = 1.0;
	bool optimal = false;
	std::string solver;
	std::uint64_t seed = 0;
	double elapsed_ms = 0.0;
	std::uint64_t iterations = 0;

	std::size_t abandoned() const noexcept;
};

// Cooperative cancellation and incumbent notification shared by all solvers.
// Solvers poll expired() at iteration boundaries; nothing is interrupted
// preemptively.
struct SolveControl {
	std::optional<Clock::time_point> deadline;
	std::function<void(const Objective&)> on_incumbent;

	bool expired() const { return deadline && Clock::now() >= *deadline; }
	void notify(const Objective& incumbent) const
	{
		if (on_incumbent)
			on_incumbent(incumbent);
	}
};

// Rating descending, then deadline ascending, then id ascending.
Permutation rating_order(const ProblemInstance& instance);

struct Decoded {
	Schedule schedule;
	Objective objective;
};

// List-scheduling decoder. Missions are visited in `order`; each takes units
// earliest-first inside its window up to its required work, limited by the
// rate cap and the slot's residual capacity after paying any interaction
// increment for becoming active there. A mission that cannot reach its
// required work is rolled back and abandoned.
Decoded decode_priority_order(const ProblemInstance& instance, UsageMode mode, std::span<const std::size_t> order);

SolveReport solve_greedy(const ProblemInstance& instance, UsageMode mode, const SolveControl& control = {});

// First-improvement descent over transpositions of the priority order.
// `iterations` counts improving moves.
SolveReport solve_local_search(const ProblemInstance& instance, UsageMode mode, double budget_ms,
                               std::uint64_t seed, const SolveControl& control = {});

struct GaParams {
	std::size_t population = 32;
	std::size_t generations = 60;
	double crossover_prob = 0.9;
	double mutation_prob = 0.2;
	std::size_t tournament = 3;
	std::size_t elitism = 2;

	// Throws DomainError on out-of-range parameters.
	void validate() const;
};

// Permutation-encoded GA decoded through decode_priority_order. `seed_orders`
// (e.g. from advise_order) join the rating order in the initial population.
// `iterations` counts completed generations.
SolveReport solve_genetic(const ProblemInstance& instance, UsageMode mode, const GaParams& params,
                          std::uint64_t seed, std::span<const Permutation> seed_orders = {},
                          const SolveControl& control = {});

struct ExactLimits {
	std::size_t max_missions = 8;
	std::size_t max_slots = 16;
	std::uint64_t max_nodes = 50'000'000;
};

// Branch-and-bound over per-mission success decisions, rating order,
// include-first. Bound: current value plus ratings of undecided missions.
// Each candidate success set is checked by a depth-first allocation search.
// Throws ResourceLimitError when the instance or the node count exceeds
// `limits`. When `control` expires the incumbent is returned with
// optimal = false and the tightest open-node bound.
SolveReport solve_exact(const ProblemInstance& instance, UsageMode mode, const ExactLimits& limits = {},
                        const SolveControl& control = {});

// Whether the missions in `members` can all reach their required work
// together; on success returns a witness allocating exactly the required
// work to each member.
std::optional<Schedule> find_allocation(const ProblemInstance& instance, UsageMode mode,
                                        std::span<const std::size_t> members);

enum class InnerSolver { greedy, local, ga, exact };

std::string_view to_string(InnerSolver inner) noexcept;
InnerSolver parse_inner_solver(std::string_view name);

struct Checkpoint {
	double elapsed_ms = 0.0;
	double value = 0.0;
};

struct AnytimeOptions {
	// generations is ignored; the GA runs until the budget or a certified optimum.
	GaParams ga{};
	ExactLimits exact{64, 4096, UINT64_MAX};
};

struct AnytimeResult {
	SolveReport report;
	std::vector<Checkpoint> checkpoints;  // best value so far, non-decreasing
};

AnytimeResult solve_anytime(InnerSolver inner, const ProblemInstance& instance, UsageMode mode, double budget_ms,
                            std::uint64_t seed, const AnytimeOptions& options = {});

} // namespace swapsched

#endif
