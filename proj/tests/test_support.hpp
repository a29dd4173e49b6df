#ifndef SWAPSCHED_TEST_SUPPORT_HPP
#define SWAPSCHED_TEST_SUPPORT_HPP

#include <swapsched/generator.hpp>
#include <swapsched/model.hpp>
#include <swapsched/offload_sim.hpp>

#include <cmath>
#include <string>
#include <vector>

namespace swapsched::testing {

// Two missions over three slots of capacity 2. Ratings (2, 1), so rated
// weights are (1, 0.5). Each mission needs ceil(0.75 * 4) = 3 units with a
// rate cap of 2 over the full window [0, 3).
inline ProblemInstance instance_a()
{
	std::vector<MissionSpec> ms{
		{"x1", 0, 3, 4, 0.75, 2, 2.0},
		{"x2", 0, 3, 4, 0.75, 2, 1.0},
	};
	return ProblemInstance(TimeGrid{3}, ms, PlatformProfile{{2.0, 2.0, 2.0}});
}

inline MissionSpec mission(std::string id, int release, int deadline, int work, double fraction, int cap,
                           double rating)
{
	return MissionSpec{std::move(id), release, deadline, work, fraction, cap, rating};
}

// Rating order fails here: the top mission hogs both slots, while the two
// lower-rated single-slot missions together are worth more.
inline ProblemInstance greedy_trap()
{
	std::vector<MissionSpec> ms{
		mission("a", 0, 2, 2, 1.0, 1, 3.0),
		mission("b", 0, 1, 1, 1.0, 1, 2.0),
		mission("c", 1, 2, 1, 1.0, 1, 2.0),
	};
	return ProblemInstance(TimeGrid{2}, ms, PlatformProfile{{1.0, 1.0}});
}

// Constraint check written from the model definition, sharing no code with
// check_feasibility.
inline bool naive_feasible(const ProblemInstance& inst, const Schedule& s, UsageMode mode)
{
	const auto& ms = inst.missions();
	const std::size_t n = ms.size();
	const int T = inst.slots();
	double top = 0.0;
	for (const auto& m : ms)
		top = std::max(top, m.rating);
	for (std::size_t i = 0; i < n; ++i) {
		int total = 0;
		for (int t = 0; t < T; ++t) {
			const int a = s.at(i, static_cast<std::size_t>(t));
			if (a < 0 || a > ms[i].rate_cap)
				return false;
			if (a > 0 && (t < ms[i].release || t >= ms[i].deadline))
				return false;
			total += a;
		}
		if (total > ms[i].total_work)
			return false;
	}
	for (int t = 0; t < T; ++t) {
		double demand = 0.0;
		for (std::size_t i = 0; i < n; ++i) {
			const double w = mode == UsageMode::raw ? 1.0 : ms[i].rating / top;
			demand += w * s.at(i, static_cast<std::size_t>(t));
		}
		for (std::size_t i = 0; i < n; ++i)
			for (std::size_t j = 0; j < n; ++j)
				if (i < j && s.at(i, static_cast<std::size_t>(t)) > 0 && s.at(j, static_cast<std::size_t>(t)) > 0)
					demand += inst.interaction().at(i, j);
		if (inst.capacity(static_cast<std::size_t>(t)) - demand < -1e-9)
			return false;
	}
	return true;
}

// Tiny instances of the oracle-equivalence suite: n <= 2, T <= 4, P <= 3, C <= 4.
inline GenParams tiny_params(std::uint64_t seed)
{
	GenParams p;
	p.missions = 1 + seed % 2;
	p.slots = 1 + static_cast<int>((seed / 2) % 4);
	p.capacity = {0, 3};
	p.work = {1, 4};
	p.fraction = {0.25, 1.0};
	p.rating = {1, 6};
	p.rate_cap = {1, 3};
	p.density = (seed % 3 == 0) ? 0.0 : 0.7;
	p.gamma = {0.25, 1.0};
	p.seed = seed;
	return p;
}

// Desk-scale instances: n <= 5, T <= 8.
inline GenParams small_params(std::uint64_t seed)
{
	GenParams p;
	p.missions = 2 + seed % 4;
	p.slots = 3 + static_cast<int>((seed / 4) % 6);
	p.capacity = {1, 4};
	p.work = {1, 6};
	p.fraction = {0.4, 1.0};
	p.rating = {1, 10};
	p.rate_cap = {1, 3};
	p.density = (seed % 2 == 0) ? 0.0 : 0.4;
	p.gamma = {0.25, 1.0};
	p.seed = seed;
	return p;
}

// Origin node of rate 1 receives a frame every tick needing 2 units within 2 ticks.
inline SimScenario camera_frames(AdmissionPolicy admission, bool with_remote, int frames = 10)
{
	SimScenario sc;
	sc.horizon = frames + 4;
	sc.admission = admission;
	sc.nodes.push_back({"edge", 1, 0, Zone::hostile});
	if (with_remote)
		sc.nodes.push_back({"hpc", 4, 1, Zone::rear});
	for (int t = 0; t < frames; ++t) {
		JobSpec j;
		j.id = (t < 10 ? "f0" : "f") + std::to_string(t);
		j.arrival = t;
		j.work = 2;
		j.deadline = HardDeadline{t + 2};
		j.priority_label = 1;
		j.origin = "edge";
		sc.jobs.push_back(std::move(j));
	}
	return sc;
}

} // namespace swapsched::testing

#endif
