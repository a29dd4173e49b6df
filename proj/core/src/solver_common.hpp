#ifndef SWAPSCHED_SOLVER_COMMON_HPP
#define SWAPSCHED_SOLVER_COMMON_HPP

#include <swapsched/solvers.hpp>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <random>

namespace swapsched::detail {

// Unit-count slack. Tighter than kUsageTolerance so that anything a solver
// builds also passes check_feasibility.
inline constexpr double kUnitSlack = 1e-10;

// Largest u >= 0 with weight * u <= avail (up to kUnitSlack).
inline int units_that_fit(double avail, double weight)
{
	const double u = std::floor(avail / weight + kUnitSlack);
	if (u <= 0.0)
		return 0;
	return u > static_cast<double>(std::numeric_limits<int>::max()) ? std::numeric_limits<int>::max()
	                                                                 : static_cast<int>(u);
}

// Strict improvement on (value, headroom). Value tolerance is relative so
// that rescaling every rating by a power of two preserves all decisions.
inline bool improves(const Objective& cand, const Objective& inc)
{
	const double tol = 1e-12 * std::max(std::abs(cand.value), std::abs(inc.value));
	if (cand.value > inc.value + tol)
		return true;
	if (cand.value < inc.value - tol)
		return false;
	return cand.headroom > inc.headroom + 1e-9;
}

inline bool value_exceeds(double cand, double inc)
{
	return cand > inc + 1e-12 * std::max(std::abs(cand), std::abs(inc));
}

inline double elapsed_ms_since(Clock::time_point start)
{
	return std::chrono::duration<double, std::milli>(Clock::now() - start).count();
}

inline Clock::time_point after_ms(Clock::time_point start, double ms)
{
	return start + std::chrono::duration_cast<Clock::duration>(std::chrono::duration<double, std::milli>(ms));
}

// Earlier of the control's deadline and start + budget.
inline SolveControl with_budget(const SolveControl& control, Clock::time_point start, double budget_ms)
{
	SolveControl c = control;
	const auto own = after_ms(start, budget_ms);
	c.deadline = control.deadline ? std::min(*control.deadline, own) : own;
	return c;
}

// Sum of ratings of missions that reach their required work when alone on
// the platform. Valid upper bound on the objective in `mode`.
double solo_bound(const ProblemInstance& instance, UsageMode mode);

// Fills value, success, ratio from the schedule. The bound is the tighter of
// `upper_bound` and solo_bound.
SolveReport make_report(const ProblemInstance& instance, UsageMode mode, Schedule schedule, std::string solver, std::uint64_t seed,
                        Clock::time_point start, std::uint64_t iterations, std::optional<double> upper_bound = {},
                        bool proven_optimal = false);

// Portable draws from a 64-bit Mersenne twister; the standard distributions
// are implementation-defined, these are not.
inline std::size_t uniform_index(std::mt19937_64& rng, std::size_t n)
{
	const std::uint64_t bound = n;
	const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() - std::numeric_limits<std::uint64_t>::max() % bound;
	std::uint64_t x;
	do {
		x = rng();
	} while (x >= limit);
	return static_cast<std::size_t>(x % bound);
}

inline double uniform_unit(std::mt19937_64& rng)
{
	return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

template<class T>
void shuffle(std::vector<T>& v, std::mt19937_64& rng)
{
	for (std::size_t i = v.size(); i > 1; --i)
		std::swap(v[i - 1], v[uniform_index(rng, i)]);
}

} // namespace swapsched::detail

#endif
