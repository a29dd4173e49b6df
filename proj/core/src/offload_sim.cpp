#include <swapsched/offload_sim.hpp>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>
#include <unordered_map>

namespace swapsched {

std::string_view to_string(Zone z) noexcept
{
	return z == Zone::hostile ? "hostile" : "rear";
}

std::string_view to_string(AdmissionPolicy p) noexcept
{
	return p == AdmissionPolicy::terminate ? "terminate" : "offload";
}

std::string_view to_string(AssignmentPolicy p) noexcept
{
	return p == AssignmentPolicy::earliest_finish ? "earliest_finish" : "priority_first";
}

std::string_view to_string(AdmissionDecision d) noexcept
{
	switch (d) {
	case AdmissionDecision::admit: return "admit";
	case AdmissionDecision::terminate: return "terminate";
	case AdmissionDecision::offload: return "offload";
	}
	return "unknown";
}

Zone parse_zone(std::string_view s)
{
	if (s == "hostile")
		return Zone::hostile;
	if (s == "rear")
		return Zone::rear;
	throw DomainError("unknown zone '" + std::string(s) + "' (expected hostile or rear)");
}

AdmissionPolicy parse_admission_policy(std::string_view s)
{
	if (s == "terminate")
		return AdmissionPolicy::terminate;
	if (s == "offload")
		return AdmissionPolicy::offload;
	throw DomainError("unknown admission policy '" + std::string(s) + "' (expected terminate or offload)");
}

AssignmentPolicy parse_assignment_policy(std::string_view s)
{
	if (s == "earliest_finish")
		return AssignmentPolicy::earliest_finish;
	if (s == "priority_first")
		return AssignmentPolicy::priority_first;
	throw DomainError("unknown assignment policy '" + std::string(s)
	                  + "' (expected earliest_finish or priority_first)");
}

std::optional<int> JobSpec::hard_deadline() const noexcept
{
	if (const auto* h = std::get_if<HardDeadline>(&deadline))
		return h->tick;
	return std::nullopt;
}

std::vector<Diagnostic> validate_sim_scenario(const SimScenario& sc)
{
	std::vector<Diagnostic> out;
	auto error = [&](std::string loc, std::string msg) {
		out.push_back({Diagnostic::Severity::error, std::move(loc), std::move(msg)});
	};
	if (sc.horizon < 1)
		error("horizon", "must be >= 1, got " + std::to_string(sc.horizon));

	std::unordered_map<std::string, std::size_t> node_ids;
	for (std::size_t k = 0; k < sc.nodes.size(); ++k) {
		const NodeSpec& n = sc.nodes[k];
		const std::string loc = "nodes[" + std::to_string(k) + "]";
		if (n.id.empty())
			error(loc + ".id", "must be non-empty");
		else if (!node_ids.emplace(n.id, k).second)
			error(loc + ".id", "duplicate node id '" + n.id + "'");
		if (n.rate < 1)
			error(loc + ".rate", "must be >= 1");
		if (n.link_latency < 0)
			error(loc + ".link_latency", "must be >= 0");
	}

	std::unordered_map<std::string, std::size_t> job_ids;
	for (std::size_t k = 0; k < sc.jobs.size(); ++k) {
		const JobSpec& j = sc.jobs[k];
		const std::string loc = "jobs[" + std::to_string(k) + "]";
		if (j.id.empty())
			error(loc + ".id", "must be non-empty");
		else if (!job_ids.emplace(j.id, k).second)
			error(loc + ".id", "duplicate job id '" + j.id + "'");
		if (j.arrival < 0)
			error(loc + ".arrival", "must be >= 0");
		if (j.work < 1)
			error(loc + ".work", "must be >= 1");
		if (auto d = j.hard_deadline()) {
			if (*d <= j.arrival)
				error(loc + ".deadline", "hard deadline must be > arrival");
		}
		else {
			const double w = std::get<FlexibleDeadline>(j.deadline).weight;
			if (!(w > 0.0) || !std::isfinite(w))
				error(loc + ".deadline", "flexible weight must be positive and finite");
		}
		if (j.priority_label < 1)
			error(loc + ".priority", "must be >= 1");
		if (!node_ids.contains(j.origin))
			error(loc + ".origin", "unknown node '" + j.origin + "'");
	}
	return out;
}

bool QueuedJob::served_before(const QueuedJob& other) const noexcept
{
	if (priority_label != other.priority_label)
		return priority_label > other.priority_label;
	if (arrival != other.arrival)
		return arrival < other.arrival;
	return id < other.id;
}

QueuedJob make_queued(const JobSpec& job)
{
	return {job.id, job.arrival, job.priority_label, job.work, job.hard_deadline()};
}

long long NodeState::work_ahead_of(const QueuedJob& probe) const
{
	long long ahead = 0;
	for (const auto* list : {&queue, &incoming})
		for (const QueuedJob& q : *list)
			if (q.id != probe.id && q.served_before(probe))
				ahead += q.remaining;
	return ahead;
}

long long NodeState::projected_completion(const QueuedJob& probe, int now) const
{
	const long long work = work_ahead_of(probe) + probe.remaining;
	return now + (work + spec.rate - 1) / spec.rate;
}

AdmissionDecision local_admission(const NodeState& node, const JobSpec& job, AdmissionPolicy policy, int now,
                                  int horizon)
{
	const long long projection = node.projected_completion(make_queued(job), now);
	if (auto deadline = job.hard_deadline()) {
		if (projection <= *deadline)
			return AdmissionDecision::admit;
		return policy == AdmissionPolicy::terminate ? AdmissionDecision::terminate : AdmissionDecision::offload;
	}
	if (policy == AdmissionPolicy::offload && projection > horizon)
		return AdmissionDecision::offload;
	return AdmissionDecision::admit;
}

std::size_t global_assign(const std::vector<NodeState>& cluster, const JobSpec& job, AssignmentPolicy policy, int now,
                          const std::vector<std::size_t>& excluded)
{
	std::vector<std::size_t> candidates;
	for (std::size_t k = 0; k < cluster.size(); ++k)
		if (std::find(excluded.begin(), excluded.end(), k) == excluded.end())
			candidates.push_back(k);
	if (candidates.empty())
		throw NoRemoteNodeError("no remote node available for job '" + job.id + "'");

	if (policy == AssignmentPolicy::priority_first) {
		const Zone wanted = job.is_hard() ? Zone::hostile : Zone::rear;
		std::vector<std::size_t> zoned;
		std::copy_if(candidates.begin(), candidates.end(), std::back_inserter(zoned),
		             [&](std::size_t k) { return cluster[k].spec.zone == wanted; });
		if (!zoned.empty())
			candidates = std::move(zoned);
	}

	const QueuedJob probe = make_queued(job);
	std::size_t best = candidates.front();
	long long best_finish = 0;
	bool first = true;
	for (std::size_t k : candidates) {
		const NodeState& node = cluster[k];
		const long long finish = node.projected_completion(probe, now) + node.spec.link_latency;
		if (first || finish < best_finish || (finish == best_finish && node.spec.id < cluster[best].spec.id)) {
			best = k;
			best_finish = finish;
			first = false;
		}
	}
	return best;
}

std::string format_event_log(const std::vector<std::string>& log)
{
	std::string out;
	for (const auto& line : log) {
		out += line;
		out += '\n';
	}
	return out;
}

namespace {

enum class Disposition { pending, completed, failed, terminated, in_flight };

struct Delivery {
	int tick;
	std::size_t node;
	std::string job;
};

class Simulation {
public:
	explicit Simulation(const SimScenario& sc)
	: sc_(sc)
	, disposition_(sc.jobs.size(), Disposition::pending)
	, last_served_(sc.nodes.size())
	{
		for (std::size_t k = 0; k < sc.nodes.size(); ++k) {
			cluster_.push_back(NodeState{sc.nodes[k], {}, {}, 0});
			node_index_.emplace(sc.nodes[k].id, k);
		}
		for (std::size_t k = 0; k < sc.jobs.size(); ++k)
			job_index_.emplace(sc.jobs[k].id, k);
		arrival_order_.resize(sc.jobs.size());
		std::iota(arrival_order_.begin(), arrival_order_.end(), std::size_t{0});
		std::stable_sort(arrival_order_.begin(), arrival_order_.end(), [&](std::size_t a, std::size_t b) {
			const auto& ja = sc.jobs[a];
			const auto& jb = sc.jobs[b];
			if (ja.arrival != jb.arrival)
				return ja.arrival < jb.arrival;
			return ja.id < jb.id;
		});
	}

	SimResult run()
	{
		std::size_t next_arrival = 0;
		for (int t = 0; t < sc_.horizon; ++t) {
			deliver(t);
			while (next_arrival < arrival_order_.size() && sc_.jobs[arrival_order_[next_arrival]].arrival == t)
				arrive(arrival_order_[next_arrival++], t);
			expire(t);
			for (std::size_t k = 0; k < cluster_.size(); ++k)
				serve(k, t);
		}
		finish();
		return std::move(result_);
	}

private:
	void log(int t, std::string_view event, std::string_view job, std::string_view node, const std::string& detail)
	{
		std::ostringstream os;
		os << "tick " << t << ' ' << event << " job=" << job << " node=" << (node.empty() ? "-" : node)
		   << " detail=" << detail;
		result_.log.push_back(os.str());
	}

	void settle(const std::string& job, Disposition d)
	{
		disposition_[job_index_.at(job)] = d;
		auto& m = result_.metrics;
		switch (d) {
		case Disposition::completed: ++m.completed; break;
		case Disposition::failed: ++m.failed_deadline; break;
		case Disposition::terminated: ++m.terminated_at_admission; break;
		case Disposition::in_flight: ++m.in_flight_at_horizon; break;
		case Disposition::pending: break;
		}
	}

	void enqueue(std::size_t node, QueuedJob q) { cluster_[node].queue.push_back(std::move(q)); }

	void deliver(int t)
	{
		auto due = std::stable_partition(deliveries_.begin(), deliveries_.end(),
		                                 [t](const Delivery& d) { return d.tick != t; });
		std::vector<Delivery> now(due, deliveries_.end());
		deliveries_.erase(due, deliveries_.end());
		for (const Delivery& d : now)
			land(d, t);
	}

	void land(const Delivery& d, int t)
	{
		auto& incoming = cluster_[d.node].incoming;
		auto it = std::find_if(incoming.begin(), incoming.end(), [&](const QueuedJob& q) { return q.id == d.job; });
		QueuedJob q = std::move(*it);
		incoming.erase(it);
		log(t, "deliver", q.id, cluster_[d.node].spec.id, "");
		enqueue(d.node, std::move(q));
	}

	void arrive(std::size_t j, int t)
	{
		const JobSpec& job = sc_.jobs[j];
		const std::size_t origin = node_index_.at(job.origin);
		NodeState& node = cluster_[origin];
		const long long projection = node.projected_completion(make_queued(job), t);
		log(t, "arrive", job.id, job.origin,
		    "work=" + std::to_string(job.work) + ",priority=" + std::to_string(job.priority_label));

		switch (local_admission(node, job, sc_.admission, t, sc_.horizon)) {
		case AdmissionDecision::admit:
			log(t, "admit", job.id, job.origin, "projected=" + std::to_string(projection));
			enqueue(origin, make_queued(job));
			break;
		case AdmissionDecision::terminate:
			log(t, "terminate", job.id, job.origin,
			    "projected=" + std::to_string(projection) + ",deadline=" + std::to_string(*job.hard_deadline()));
			settle(job.id, Disposition::terminated);
			break;
		case AdmissionDecision::offload:
			offload(j, origin, t);
			break;
		}
	}

	void offload(std::size_t j, std::size_t origin, int t)
	{
		const JobSpec& job = sc_.jobs[j];
		std::size_t target = 0;
		try {
			target = global_assign(cluster_, job, sc_.assignment, t, {origin});
		}
		catch (const NoRemoteNodeError&) {
			if (job.is_hard()) {
				log(t, "fail", job.id, job.origin, "reason=no_remote_node");
				settle(job.id, Disposition::failed);
			}
			else {
				log(t, "stranded", job.id, job.origin, "reason=no_remote_node");
				settle(job.id, Disposition::in_flight);
			}
			return;
		}
		NodeState& node = cluster_[target];
		const int eta = t + node.spec.link_latency;
		log(t, "offload", job.id, job.origin,
		    "target=" + node.spec.id + ",eta=" + std::to_string(eta) + ",projected="
		        + std::to_string(node.projected_completion(make_queued(job), t) + node.spec.link_latency));
		++result_.metrics.offloaded;
		node.incoming.push_back(make_queued(job));
		Delivery d{eta, target, job.id};
		if (eta == t)
			land(d, t);
		else
			deliveries_.push_back(std::move(d));
	}

	void expire(int t)
	{
		for (NodeState& node : cluster_) {
			auto& q = node.queue;
			for (auto it = q.begin(); it != q.end();) {
				if (it->deadline && *it->deadline <= t) {
					log(t, "fail", it->id, node.spec.id,
					    "deadline=" + std::to_string(*it->deadline) + ",remaining=" + std::to_string(it->remaining));
					settle(it->id, Disposition::failed);
					it = q.erase(it);
				}
				else {
					++it;
				}
			}
		}
	}

	void serve(std::size_t k, int t)
	{
		NodeState& node = cluster_[k];
		auto& q = node.queue;
		int capacity = node.spec.rate;
		bool busy = false;
		bool first = true;
		std::optional<std::string> unfinished;
		while (capacity > 0 && !q.empty()) {
			auto top = std::min_element(q.begin(), q.end(),
			                            [](const QueuedJob& a, const QueuedJob& b) { return a.served_before(b); });
			if (first && last_served_[k] && *last_served_[k] != top->id) {
				const std::string& prev = *last_served_[k];
				auto p = std::find_if(q.begin(), q.end(), [&](const QueuedJob& x) { return x.id == prev; });
				if (p != q.end())
					log(t, "preempt", prev, node.spec.id, "by=" + top->id + ",remaining=" + std::to_string(p->remaining));
			}
			first = false;
			const int done = std::min(capacity, top->remaining);
			top->remaining -= done;
			capacity -= done;
			busy = true;
			if (top->remaining == 0) {
				const int finish_time = t + 1;
				const int response = finish_time - top->arrival;
				log(t, "complete", top->id, node.spec.id,
				    "finish=" + std::to_string(finish_time) + ",response=" + std::to_string(response));
				auto& acc = response_[top->priority_label];
				acc.first += response;
				acc.second += 1;
				settle(top->id, Disposition::completed);
				q.erase(top);
			}
			else {
				unfinished = top->id;
			}
		}
		last_served_[k] = unfinished;
		if (busy)
			++node.busy_ticks;
	}

	void finish()
	{
		const int h = sc_.horizon;
		auto close = [&](const QueuedJob& q, const std::string& node) {
			if (q.deadline && *q.deadline <= h) {
				log(h, "fail", q.id, node, "deadline=" + std::to_string(*q.deadline) + ",remaining=" + std::to_string(q.remaining));
				settle(q.id, Disposition::failed);
			}
			else {
				log(h, "inflight", q.id, node, "remaining=" + std::to_string(q.remaining));
				settle(q.id, Disposition::in_flight);
			}
		};
		for (NodeState& node : cluster_) {
			std::vector<QueuedJob> left = node.queue;
			left.insert(left.end(), node.incoming.begin(), node.incoming.end());
			std::sort(left.begin(), left.end(), [](const QueuedJob& a, const QueuedJob& b) { return a.served_before(b); });
			for (const QueuedJob& q : left)
				close(q, node.spec.id);
		}
		for (std::size_t j : arrival_order_)
			if (disposition_[j] == Disposition::pending)
				close(make_queued(sc_.jobs[j]), sc_.jobs[j].origin);

		auto& m = result_.metrics;
		for (const NodeState& node : cluster_)
			m.utilization[node.spec.id] = static_cast<double>(node.busy_ticks) / h;
		for (const auto& [label, acc] : response_)
			m.mean_response[label] = acc.first / static_cast<double>(acc.second);
	}

	const SimScenario& sc_;
	std::vector<NodeState> cluster_;
	std::unordered_map<std::string, std::size_t> node_index_;
	std::unordered_map<std::string, std::size_t> job_index_;
	std::vector<std::size_t> arrival_order_;
	std::vector<Disposition> disposition_;
	std::vector<std::optional<std::string>> last_served_;
	std::vector<Delivery> deliveries_;
	std::map<int, std::pair<double, std::uint64_t>> response_;
	SimResult result_;
};

} // namespace

SimResult run_simulation(const SimScenario& scenario, std::uint64_t /*seed*/)
{
	auto diags = validate_sim_scenario(scenario);
	if (!diags.empty())
		throw ValidationError(std::move(diags));
	return Simulation(scenario).run();
}

} // namespace swapsched
