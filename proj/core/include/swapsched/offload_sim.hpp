#ifndef SWAPSCHED_OFFLOAD_SIM_HPP
#define SWAPSCHED_OFFLOAD_SIM_HPP

// Tick-driven simulator of edge nodes that admit, terminate or off-load jobs
// carrying time-to-complete restrictions, with a global engine assigning
// off-loaded jobs across the cluster.
//
// Service model: a node performs `rate` work units per tick on its queue,
// highest priority label first (preemptive, work retained), ties by
// (arrival, id). Work done during tick t is complete at time t + 1, which
// must not exceed a hard deadline. Off-loaded jobs reach their target
// `link_latency` ticks after assignment.

#include <swapsched/errors.hpp>

#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace swapsched {

enum class Zone { hostile, rear };
enum class AdmissionPolicy { terminate, offload };
enum class AssignmentPolicy { earliest_finish, priority_first };

std::string_view to_string(Zone z) noexcept;
std::string_view to_string(AdmissionPolicy p) noexcept;
std::string_view to_string(AssignmentPolicy p) noexcept;
Zone parse_zone(std::string_view s);
AdmissionPolicy parse_admission_policy(std::string_view s);
AssignmentPolicy parse_assignment_policy(std::string_view s);

struct NodeSpec {
	std::string id;
	int rate = 1;           // work units per tick
	int link_latency = 0;   // ticks from the off-load engine to this node
	Zone zone = Zone::hostile;

	bool operator==(const NodeSpec&) const = default;
};

struct HardDeadline {
	int tick = 0;
	bool operator==(const HardDeadline&) const = default;
};

struct FlexibleDeadline {
	double weight = 1.0;
	bool operator==(const FlexibleDeadline&) const = default;
};

struct JobSpec {
	std::string id;
	int arrival = 0;
	int work = 1;
	std::variant<HardDeadline, FlexibleDeadline> deadline = HardDeadline{1};
	int priority_label = 1;  // larger is more urgent
	std::string origin;

	bool is_hard() const noexcept { return std::holds_alternative<HardDeadline>(deadline); }
	std::optional<int> hard_deadline() const noexcept;

	bool operator==(const JobSpec&) const = default;
};

struct SimScenario {
	std::vector<NodeSpec> nodes;
	std::vector<JobSpec> jobs;
	int horizon = 1;
	AdmissionPolicy admission = AdmissionPolicy::terminate;
	AssignmentPolicy assignment = AssignmentPolicy::earliest_finish;

	bool operator==(const SimScenario&) const = default;
};

// Locators follow the scenario file layout (jobs[3].deadline).
std::vector<Diagnostic> validate_sim_scenario(const SimScenario& scenario);

struct SimMetrics {
	std::uint64_t completed = 0;
	std::uint64_t failed_deadline = 0;
	std::uint64_t terminated_at_admission = 0;
	std::uint64_t offloaded = 0;  // tally, not a disposition
	std::uint64_t in_flight_at_horizon = 0;
	std::map<std::string, double> utilization;  // node id -> busy ticks / horizon
	std::map<int, double> mean_response;        // priority label -> mean (completion - arrival)

	std::uint64_t dispositions() const noexcept
	{
		return completed + failed_deadline + terminated_at_admission + in_flight_at_horizon;
	}

	bool operator==(const SimMetrics&) const = default;
};

// A job waiting at (or travelling to) a node.
struct QueuedJob {
	std::string id;
	int arrival = 0;
	int priority_label = 1;
	int remaining = 1;
	std::optional<int> deadline;  // hard jobs only

	// Service order: higher label first, then earlier arrival, then id.
	bool served_before(const QueuedJob& other) const noexcept;
};

QueuedJob make_queued(const JobSpec& job);

struct NodeState {
	NodeSpec spec;
	std::vector<QueuedJob> queue;
	std::vector<QueuedJob> incoming;  // assigned, still in transit
	std::uint64_t busy_ticks = 0;

	// Remaining work of queued and incoming jobs served before `probe`.
	long long work_ahead_of(const QueuedJob& probe) const;
	// now + ceil((work ahead + probe.remaining) / rate)
	long long projected_completion(const QueuedJob& probe, int now) const;
};

enum class AdmissionDecision { admit, terminate, offload };
std::string_view to_string(AdmissionDecision d) noexcept;

// Myopic check at the job's origin node. Hard jobs whose projected
// completion passes the deadline are terminated or off-loaded per policy;
// flexible jobs stay local unless the policy is offload and the projection
// passes the horizon.
AdmissionDecision local_admission(const NodeState& node, const JobSpec& job, AdmissionPolicy policy, int now,
                                  int horizon);

class NoRemoteNodeError : public std::runtime_error {
public:
	using std::runtime_error::runtime_error;
};

// Picks a node index for an off-loaded job. earliest_finish minimises
// now + link_latency + ceil((work ahead + work) / rate), ties by node id.
// priority_first first narrows the candidates: hard jobs to hostile-zone
// nodes, flexible jobs to rear-zone nodes, whenever such nodes exist.
// Nodes listed in `excluded` are skipped. Throws NoRemoteNodeError if no
// candidate remains.
std::size_t global_assign(const std::vector<NodeState>& cluster, const JobSpec& job, AssignmentPolicy policy, int now,
                          const std::vector<std::size_t>& excluded = {});

struct SimResult {
	SimMetrics metrics;
	// Lines of the form: tick <t> <event> job=<id> node=<id> detail=<k=v,...>
	std::vector<std::string> log;
};

std::string format_event_log(const std::vector<std::string>& log);

// Throws ValidationError on an invalid scenario. `seed` is reserved for
// randomized workload extensions; core event ordering never depends on it.
SimResult run_simulation(const SimScenario& scenario, std::uint64_t seed = 0);

} // namespace swapsched

#endif
