#ifndef SWAPSCHED_GENERATOR_HPP
#define SWAPSCHED_GENERATOR_HPP

// Seeded random instances for property sweeps and benchmarks. Output depends
// only on the parameters (own integer draws over std::mt19937_64), so a seed
// reproduces the same instance on every platform.

#include <swapsched/model.hpp>
#include <swapsched/offload_sim.hpp>

#include <cstdint>

namespace swapsched {

template<class T>
struct Range {
	T lo{};
	T hi{};

	bool operator==(const Range&) const = default;
};

struct GenParams {
	std::size_t missions = 3;
	int slots = 6;
	Range<int> capacity{1, 4};         // integer-valued P[t]
	Range<int> work{1, 4};             // total_work
	Range<double> fraction{0.5, 1.0};  // snapped to multiples of 0.05
	Range<int> rating{1, 10};
	Range<int> rate_cap{1, 3};
	double density = 0.0;              // probability that a pair interacts
	Range<double> gamma{0.25, 1.0};    // snapped to multiples of 0.25
	std::uint64_t seed = 0;

	// Throws DomainError on empty or out-of-domain ranges.
	void validate() const;
};

ProblemInstance generate_instance(const GenParams& params);

struct SimGenParams {
	std::size_t nodes = 3;
	std::size_t jobs = 20;
	int horizon = 30;
	Range<int> rate{1, 4};
	Range<int> latency{0, 3};
	Range<int> work{1, 6};
	Range<int> slack{1, 8};      // hard deadline = arrival + slack
	double hard_share = 0.7;     // probability a job is hard
	Range<int> priority{1, 3};
	double rear_share = 0.3;     // probability a node is rear-zone
	AdmissionPolicy admission = AdmissionPolicy::offload;
	AssignmentPolicy assignment = AssignmentPolicy::earliest_finish;
	std::uint64_t seed = 0;

	void validate() const;
};

SimScenario generate_sim_scenario(const SimGenParams& params);

} // namespace swapsched

#endif
