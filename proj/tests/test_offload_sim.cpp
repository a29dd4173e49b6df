#include "test_support.hpp"

#include <swapsched/generator.hpp>
#include <swapsched/offload_sim.hpp>

#include <gtest/gtest.h>

#include <map>
#include <set>
#include <sstream>

using namespace swapsched;
using swapsched::testing::camera_frames;

namespace {

NodeState idle(std::string id, int rate, int latency, Zone zone = Zone::hostile)
{
	return NodeState{NodeSpec{std::move(id), rate, latency, zone}, {}, {}, 0};
}

JobSpec hard_job(std::string id, int arrival, int work, int deadline, int label = 1, std::string origin = "n")
{
	return JobSpec{std::move(id), arrival, work, HardDeadline{deadline}, label, std::move(origin)};
}

JobSpec flexible_job(std::string id, int arrival, int work, std::string origin = "n")
{
	return JobSpec{std::move(id), arrival, work, FlexibleDeadline{1.0}, 1, std::move(origin)};
}

SimGenParams sweep_params(std::uint64_t seed)
{
	SimGenParams p;
	p.nodes = 1 + seed % 4;
	p.jobs = 5 + seed % 30;
	p.horizon = 10 + static_cast<int>(seed % 25);
	p.admission = seed % 2 == 0 ? AdmissionPolicy::offload : AdmissionPolicy::terminate;
	p.assignment = seed % 3 == 0 ? AssignmentPolicy::priority_first : AssignmentPolicy::earliest_finish;
	p.seed = seed;
	return p;
}

struct LogLine {
	int tick = 0;
	std::string event;
	std::string job;
	std::string node;
	std::map<std::string, std::string> detail;
};

LogLine parse_line(const std::string& line)
{
	std::istringstream is(line);
	LogLine out;
	std::string word, job, node, detail;
	is >> word >> out.tick >> out.event >> job >> node >> detail;
	EXPECT_EQ(word, "tick");
	out.job = job.substr(job.find('=') + 1);
	out.node = node.substr(node.find('=') + 1);
	std::istringstream ds(detail.substr(detail.find('=') + 1));
	std::string kv;
	while (std::getline(ds, kv, ','))
		out.detail[kv.substr(0, kv.find('='))] = kv.substr(kv.find('=') + 1);
	return out;
}

const std::set<std::string> kTerminalEvents{"complete", "fail", "terminate", "stranded", "inflight"};

} // namespace

// --- admission ----------------------------------------------------------------------

TEST(Admission, HardJobProjectionAgainstDeadline)
{
	const NodeState node = idle("n", 1, 0);
	EXPECT_EQ(local_admission(node, hard_job("j", 0, 3, 2), AdmissionPolicy::terminate, 0, 10),
	          AdmissionDecision::terminate);
	EXPECT_EQ(local_admission(node, hard_job("j", 0, 3, 3), AdmissionPolicy::terminate, 0, 10),
	          AdmissionDecision::admit);
	EXPECT_EQ(local_admission(node, hard_job("j", 0, 3, 2), AdmissionPolicy::offload, 0, 10),
	          AdmissionDecision::offload);
}

TEST(Admission, QueuedWorkAheadCounts)
{
	NodeState node = idle("n", 2, 0);
	node.queue.push_back(make_queued(hard_job("early", 0, 4, 9)));
	// (4 + 2) / 2 = 3 ticks.
	EXPECT_EQ(node.projected_completion(make_queued(hard_job("late", 1, 2, 4)), 1), 4);
	EXPECT_EQ(local_admission(node, hard_job("late", 1, 2, 4), AdmissionPolicy::terminate, 1, 10),
	          AdmissionDecision::admit);
	EXPECT_EQ(local_admission(node, hard_job("late", 1, 2, 3), AdmissionPolicy::terminate, 1, 10),
	          AdmissionDecision::terminate);
	// A higher label jumps the queue.
	EXPECT_EQ(local_admission(node, hard_job("late", 1, 2, 2, 5), AdmissionPolicy::terminate, 1, 10),
	          AdmissionDecision::admit);
}

TEST(Admission, FlexibleJobs)
{
	const NodeState node = idle("n", 1, 0);
	EXPECT_EQ(local_admission(node, flexible_job("f", 0, 50), AdmissionPolicy::terminate, 0, 10),
	          AdmissionDecision::admit);
	EXPECT_EQ(local_admission(node, flexible_job("f", 0, 50), AdmissionPolicy::offload, 0, 10),
	          AdmissionDecision::offload);
	EXPECT_EQ(local_admission(node, flexible_job("f", 0, 5), AdmissionPolicy::offload, 0, 10),
	          AdmissionDecision::admit);
}

// --- global assignment ----------------------------------------------------------------

TEST(GlobalAssign, PrefersLowLatency)
{
	const std::vector<NodeState> cluster{idle("far", 1, 5), idle("near", 1, 0)};
	EXPECT_EQ(global_assign(cluster, hard_job("j", 0, 2, 9), AssignmentPolicy::earliest_finish, 0), 1u);
}

TEST(GlobalAssign, BusyFastBeatsIdleSlow)
{
	std::vector<NodeState> cluster{idle("slow", 1, 0), idle("fast", 4, 0)};
	cluster[1].queue.push_back(make_queued(hard_job("q0", 0, 8, 20)));
	const JobSpec job = hard_job("z", 1, 4, 20);
	const QueuedJob probe = make_queued(job);
	EXPECT_EQ(cluster[0].projected_completion(probe, 1), 5);
	EXPECT_EQ(cluster[1].projected_completion(probe, 1), 4);
	EXPECT_EQ(global_assign(cluster, job, AssignmentPolicy::earliest_finish, 1), 1u);
}

TEST(GlobalAssign, TiesByNodeId)
{
	const std::vector<NodeState> cluster{idle("b", 1, 0), idle("a", 1, 0)};
	EXPECT_EQ(global_assign(cluster, hard_job("j", 0, 1, 9), AssignmentPolicy::earliest_finish, 0), 1u);
}

TEST(GlobalAssign, PriorityFirstRoutesByZone)
{
	const std::vector<NodeState> cluster{idle("front", 4, 0, Zone::hostile), idle("back", 1, 3, Zone::rear)};
	EXPECT_EQ(global_assign(cluster, flexible_job("f", 0, 4), AssignmentPolicy::priority_first, 0), 1u);
	EXPECT_EQ(global_assign(cluster, flexible_job("f", 0, 4), AssignmentPolicy::earliest_finish, 0), 0u);
	EXPECT_EQ(global_assign(cluster, hard_job("h", 0, 4, 9), AssignmentPolicy::priority_first, 0), 0u);
	// No hostile candidate left: falls back to whatever remains.
	EXPECT_EQ(global_assign(cluster, hard_job("h", 0, 4, 9), AssignmentPolicy::priority_first, 0, {0}), 1u);
}

TEST(GlobalAssign, NoCandidates)
{
	EXPECT_THROW(global_assign({}, hard_job("j", 0, 1, 2), AssignmentPolicy::earliest_finish, 0), NoRemoteNodeError);
	const std::vector<NodeState> one{idle("n", 1, 0)};
	EXPECT_THROW(global_assign(one, hard_job("j", 0, 1, 2), AssignmentPolicy::earliest_finish, 0, {0}),
	             NoRemoteNodeError);
}

// --- simulation examples -------------------------------------------------------------------

TEST(Simulation, NoJobs)
{
	SimScenario sc;
	sc.nodes.push_back({"n", 2, 0, Zone::hostile});
	sc.horizon = 5;
	const auto r = run_simulation(sc);
	EXPECT_TRUE(r.log.empty());
	EXPECT_EQ(r.metrics.dispositions(), 0u);
	EXPECT_EQ(r.metrics.utilization.at("n"), 0.0);
	EXPECT_TRUE(r.metrics.mean_response.empty());
}

TEST(Simulation, PreemptionTrace)
{
	SimScenario sc;
	sc.nodes.push_back({"n", 1, 0, Zone::hostile});
	sc.jobs.push_back(hard_job("A", 0, 2, 5, 1));
	sc.jobs.push_back(hard_job("B", 1, 1, 3, 2));
	sc.horizon = 4;
	const auto r = run_simulation(sc);
	const std::vector<std::string> expected{
		"tick 0 arrive job=A node=n detail=work=2,priority=1",
		"tick 0 admit job=A node=n detail=projected=2",
		"tick 1 arrive job=B node=n detail=work=1,priority=2",
		"tick 1 admit job=B node=n detail=projected=2",
		"tick 1 preempt job=A node=n detail=by=B,remaining=1",
		"tick 1 complete job=B node=n detail=finish=2,response=1",
		"tick 2 complete job=A node=n detail=finish=3,response=3",
	};
	EXPECT_EQ(r.log, expected);
	EXPECT_EQ(r.metrics.completed, 2u);
	EXPECT_EQ(r.metrics.utilization.at("n"), 0.75);
	EXPECT_EQ(r.metrics.mean_response, (std::map<int, double>{{1, 3.0}, {2, 1.0}}));
}

TEST(Simulation, CameraFramesTerminate)
{
	const auto r = run_simulation(camera_frames(AdmissionPolicy::terminate, false));
	EXPECT_EQ(r.metrics.completed, 5u);
	EXPECT_EQ(r.metrics.terminated_at_admission, 5u);
	EXPECT_EQ(r.metrics.failed_deadline, 0u);
	EXPECT_EQ(r.metrics.dispositions(), 10u);
}

TEST(Simulation, CameraFramesOffloadToRemote)
{
	const auto r = run_simulation(camera_frames(AdmissionPolicy::offload, true));
	EXPECT_EQ(r.metrics.completed, 10u);
	EXPECT_EQ(r.metrics.offloaded, 5u);
	EXPECT_EQ(r.metrics.failed_deadline, 0u);
	EXPECT_EQ(r.metrics.terminated_at_admission, 0u);
}

TEST(Simulation, OffloadWithoutRemoteFails)
{
	const auto r = run_simulation(camera_frames(AdmissionPolicy::offload, false));
	EXPECT_EQ(r.metrics.completed, 5u);
	EXPECT_EQ(r.metrics.failed_deadline, 5u);
	EXPECT_EQ(r.metrics.offloaded, 0u);
}

TEST(Simulation, FlexibleStrandedCountsInFlight)
{
	SimScenario sc;
	sc.nodes.push_back({"n", 1, 0, Zone::hostile});
	sc.jobs.push_back(flexible_job("f", 0, 20));
	sc.horizon = 5;
	sc.admission = AdmissionPolicy::offload;
	const auto r = run_simulation(sc);
	EXPECT_EQ(r.metrics.in_flight_at_horizon, 1u);
	ASSERT_EQ(r.log.size(), 2u);
	EXPECT_EQ(r.log[1], "tick 0 stranded job=f node=n detail=reason=no_remote_node");
}

TEST(Simulation, UnfinishedWorkAtHorizon)
{
	SimScenario sc;
	sc.nodes.push_back({"n", 1, 0, Zone::hostile});
	sc.jobs.push_back(hard_job("late", 0, 9, 20));
	sc.jobs.push_back(hard_job("due", 0, 1, 3));
	sc.jobs.push_back(flexible_job("flex", 1, 9));
	sc.horizon = 3;
	const auto r = run_simulation(sc);
	// "due" wins the id tie-break at equal labels and arrival; "late" has
	// its deadline past the horizon so it stays in flight.
	EXPECT_EQ(r.metrics.completed, 1u);
	EXPECT_EQ(r.metrics.in_flight_at_horizon, 2u);
	EXPECT_EQ(r.metrics.failed_deadline, 0u);
}

TEST(Simulation, RejectsInvalidScenario)
{
	SimScenario sc;
	sc.nodes.push_back({"n", 0, -1, Zone::hostile});
	sc.jobs.push_back(hard_job("j", 2, 0, 2, 0, "ghost"));
	sc.horizon = 0;
	try {
		run_simulation(sc);
		FAIL() << "expected ValidationError";
	}
	catch (const ValidationError& e) {
		std::set<std::string> locators;
		for (const auto& d : e.issues())
			locators.insert(d.locator);
		EXPECT_EQ(locators, (std::set<std::string>{"horizon", "nodes[0].rate", "nodes[0].link_latency", "jobs[0].work",
		                                            "jobs[0].deadline", "jobs[0].priority", "jobs[0].origin"}));
	}
}

// --- properties -------------------------------------------------------------------------------

TEST(SimulationProperties, ConservationAndSingleTerminalEvent)
{
	for (std::uint64_t seed = 0; seed < 100; ++seed) {
		const auto sc = generate_sim_scenario(sweep_params(seed));
		const auto r = run_simulation(sc);
		EXPECT_EQ(r.metrics.dispositions(), sc.jobs.size()) << "seed " << seed;
		std::map<std::string, int> terminal;
		for (const auto& line : r.log) {
			const auto l = parse_line(line);
			if (kTerminalEvents.contains(l.event))
				++terminal[l.job];
		}
		EXPECT_EQ(terminal.size(), sc.jobs.size());
		for (const auto& [job, count] : terminal)
			EXPECT_EQ(count, 1) << job;
	}
}

TEST(SimulationProperties, DeterministicLog)
{
	for (std::uint64_t seed = 0; seed < 30; ++seed) {
		const auto sc = generate_sim_scenario(sweep_params(seed));
		const auto a = run_simulation(sc, seed);
		const auto b = run_simulation(sc, seed + 1);
		EXPECT_EQ(format_event_log(a.log), format_event_log(b.log));
		EXPECT_EQ(a.metrics, b.metrics);
	}
}

TEST(SimulationProperties, DeadlinesAndUtilization)
{
	for (std::uint64_t seed = 0; seed < 100; ++seed) {
		const auto sc = generate_sim_scenario(sweep_params(seed));
		const auto r = run_simulation(sc);
		std::map<std::string, const JobSpec*> jobs;
		for (const auto& j : sc.jobs)
			jobs[j.id] = &j;
		for (const auto& line : r.log) {
			const auto l = parse_line(line);
			if (l.event != "complete")
				continue;
			const JobSpec& j = *jobs.at(l.job);
			const int finish = std::stoi(l.detail.at("finish"));
			EXPECT_GT(finish, j.arrival);
			EXPECT_LE(finish, sc.horizon);
			if (auto d = j.hard_deadline())
				EXPECT_LE(finish, *d) << l.job;
		}
		for (const auto& [node, u] : r.metrics.utilization) {
			EXPECT_GE(u, 0.0);
			EXPECT_LE(u, 1.0);
		}
	}
}

TEST(SimulationProperties, CompletedWorkFitsServiceCapacity)
{
	for (std::uint64_t seed = 0; seed < 100; ++seed) {
		const auto sc = generate_sim_scenario(sweep_params(seed));
		const auto r = run_simulation(sc);
		std::map<std::string, int> work;
		for (const auto& j : sc.jobs)
			work[j.id] = j.work;
		std::map<std::string, long long> served;
		std::map<std::string, int> rate;
		for (const auto& n : sc.nodes)
			rate[n.id] = n.rate;
		for (const auto& line : r.log) {
			const auto l = parse_line(line);
			if (l.event == "complete")
				served[l.node] += work.at(l.job);
		}
		for (const auto& [node, total] : served)
			EXPECT_LE(total, static_cast<long long>(rate.at(node)) * r.metrics.utilization.at(node) * sc.horizon + 1e-9);
	}
}

TEST(SimulationProperties, ExtraRemoteNodeNeverHurtsHardCompletions)
{
	for (std::uint64_t seed = 0; seed < 200; ++seed) {
		auto p = sweep_params(seed);
		p.admission = AdmissionPolicy::offload;
		const auto base = generate_sim_scenario(p);
		auto bigger = base;
		bigger.nodes.push_back({"zz-extra", 4, 0, Zone::hostile});
		const auto a = run_simulation(base);
		const auto b = run_simulation(bigger);
		EXPECT_GE(b.metrics.completed, a.metrics.completed) << "seed " << seed;
	}
}
