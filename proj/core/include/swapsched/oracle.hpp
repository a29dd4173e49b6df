#ifndef SWAPSCHED_ORACLE_HPP
#define SWAPSCHED_ORACLE_HPP

// Exhaustive reference solver for test suites. Not used by any production path.

#include <swapsched/model.hpp>

#include <cstdint>

namespace swapsched {

struct OracleResult {
	double value = 0.0;
	Schedule schedule;
};

// Enumerates every integer allocation matrix with a[i][t] in
// [0, min(rate_cap, floor(P[t] / w_i))] inside windows and row sums <= total_work,
// and returns the best feasible one by (value, headroom, lexicographically
// smallest matrix). Throws ResourceLimitError when the number of candidate
// matrices exceeds `max_states`.
OracleResult brute_force_oracle(const ProblemInstance& instance, UsageMode mode,
                                std::uint64_t max_states = 20'000'000);

} // namespace swapsched

#endif
