#include "solver_common.hpp"

#include <bit>
#include <cstring>
#include <numeric>
#include <unordered_map>
#include <unordered_set>

namespace swapsched {

namespace {

// Depth-first search for an allocation giving each member exactly its
// required work. Members are placed in deadline order; each member's units
// are distributed over its window slot by slot, largest share first.
// Failed (member, slot-state) configurations are memoised.
class AllocationSearch {
public:
	AllocationSearch(const ProblemInstance& instance, UsageMode mode, std::span<const std::size_t> members,
	                 const SolveControl* control, std::uint64_t* node_counter, std::uint64_t node_limit)
	: inst_(instance)
	, mode_(mode)
	, members_(members.begin(), members.end())
	, T_(static_cast<std::size_t>(instance.slots()))
	, n_(instance.mission_count())
	, residual_(instance.platform().capacity)
	, active_(T_ * n_, 0)
	, schedule_(n_, T_)
	, control_(control)
	, nodes_(node_counter)
	, node_limit_(node_limit)
	{
		const auto& ms = inst_.missions();
		std::sort(members_.begin(), members_.end(), [&](std::size_t a, std::size_t b) {
			if (ms[a].deadline != ms[b].deadline)
				return ms[a].deadline < ms[b].deadline;
			if (ms[a].release != ms[b].release)
				return ms[a].release < ms[b].release;
			return a < b;
		});
		gamma_matters_ = !inst_.interaction().is_zero();
		for (std::size_t i : members_) {
			weight_.push_back(inst_.weight(i, mode_));
			need_.push_back(inst_.mission(i).required_work());
		}
	}

	// nullopt + interrupted() when the control expired mid-search.
	std::optional<Schedule> run()
	{
		if (place(0))
			return schedule_;
		return std::nullopt;
	}

	bool interrupted() const noexcept { return interrupted_; }

private:
	bool is_active(std::size_t t, std::size_t j) const { return active_[t * n_ + j] != 0; }

	double increment(std::size_t i, std::size_t t) const
	{
		if (!gamma_matters_)
			return 0.0;
		double inc = 0.0;
		for (std::size_t j = 0; j < n_; ++j)
			if (is_active(t, j))
				inc += inst_.interaction().at(i, j);
		return inc;
	}

	int slot_cap(std::size_t k, std::size_t t) const
	{
		const std::size_t i = members_[k];
		return std::min(inst_.mission(i).rate_cap, detail::units_that_fit(residual_[t] - increment(i, t), weight_[k]));
	}

	// Relaxation ignoring interaction increments of members not yet placed.
	bool remaining_fit(std::size_t from) const
	{
		double demand = 0.0;
		std::vector<char> covered(T_, 0);
		for (std::size_t k = from; k < members_.size(); ++k) {
			const MissionSpec& m = inst_.mission(members_[k]);
			long long room = 0;
			for (auto t = static_cast<std::size_t>(m.release); t < static_cast<std::size_t>(m.deadline); ++t) {
				room += std::min(m.rate_cap, detail::units_that_fit(residual_[t], weight_[k]));
				covered[t] = 1;
			}
			if (room < need_[k])
				return false;
			demand += weight_[k] * need_[k];
		}
		double supply = 0.0;
		for (std::size_t t = 0; t < T_; ++t)
			if (covered[t])
				supply += std::max(0.0, residual_[t]);
		return demand <= supply + detail::kUnitSlack * static_cast<double>(T_ + 1);
	}

	std::string state_key(std::size_t k) const
	{
		std::string key(sizeof(std::size_t) + T_ * sizeof(double), '\0');
		std::memcpy(key.data(), &k, sizeof(k));
		std::memcpy(key.data() + sizeof(k), residual_.data(), T_ * sizeof(double));
		if (gamma_matters_)
			key.append(active_.begin(), active_.end());
		return key;
	}

	bool tick()
	{
		if (interrupted_)
			return false;
		if (nodes_ && ++*nodes_ > node_limit_)
			throw ResourceLimitError("solve_exact: node limit of " + std::to_string(node_limit_) + " exceeded");
		if (control_ && (++poll_ & 0x3ff) == 0 && control_->expired()) {
			interrupted_ = true;
			return false;
		}
		return true;
	}

	bool place(std::size_t k)
	{
		if (k == members_.size())
			return true;
		if (!tick())
			return false;
		const std::string key = state_key(k);
		if (failed_.contains(key))
			return false;
		bool ok = remaining_fit(k) && fill(k, static_cast<std::size_t>(inst_.mission(members_[k]).release), need_[k]);
		if (!ok && !interrupted_)
			failed_.insert(key);
		return ok;
	}

	bool fill(std::size_t k, std::size_t t, int need)
	{
		if (need == 0)
			return place(k + 1);
		const std::size_t i = members_[k];
		const auto end = static_cast<std::size_t>(inst_.mission(i).deadline);
		if (t >= end || !tick())
			return false;

		long long room = 0;
		for (std::size_t s = t; s < end && room < need; ++s)
			room += slot_cap(k, s);
		if (room < need)
			return false;

		const double inc = increment(i, t);
		const int top = std::min(need, slot_cap(k, t));
		for (int u = top; u >= 1; --u) {
			const double used = weight_[k] * u + inc;
			residual_[t] -= used;
			active_[t * n_ + i] = 1;
			schedule_.set(i, t, u);
			if (fill(k, t + 1, need - u))
				return true;
			residual_[t] += used;
			active_[t * n_ + i] = 0;
			schedule_.set(i, t, 0);
			if (interrupted_)
				return false;
		}
		return fill(k, t + 1, need);
	}

	const ProblemInstance& inst_;
	UsageMode mode_;
	std::vector<std::size_t> members_;
	std::size_t T_;
	std::size_t n_;
	std::vector<double> residual_;
	std::vector<char> active_;
	Schedule schedule_;
	std::vector<double> weight_;
	std::vector<int> need_;
	bool gamma_matters_ = false;
	const SolveControl* control_;
	std::uint64_t* nodes_;
	std::uint64_t node_limit_;
	std::uint64_t poll_ = 0;
	bool interrupted_ = false;
	std::unordered_set<std::string> failed_;
};

class BranchAndBound {
public:
	BranchAndBound(const ProblemInstance& instance, UsageMode mode, const ExactLimits& limits,
	               const SolveControl& control)
	: inst_(instance)
	, mode_(mode)
	, limits_(limits)
	, control_(control)
	, order_(rating_order(instance))
	{
		const std::size_t n = order_.size();
		suffix_.assign(n + 1, 0.0);
		for (std::size_t k = n; k-- > 0;)
			suffix_[k] = suffix_[k + 1] + inst_.mission(order_[k]).rating;
	}

	void run(double incumbent_value, std::uint64_t incumbent_mask)
	{
		best_value_ = incumbent_value;
		best_mask_ = incumbent_mask;
		witness_.emplace(0, Schedule::zeros_for(inst_));
		search(0, 0, 0.0);
	}

	bool interrupted() const noexcept { return interrupted_; }
	double open_bound() const noexcept { return open_bound_; }
	std::uint64_t best_mask() const noexcept { return best_mask_; }
	std::uint64_t nodes() const noexcept { return nodes_; }

	const Schedule* witness(std::uint64_t mask) const
	{
		auto it = witness_.find(mask);
		return it == witness_.end() || !it->second ? nullptr : &*it->second;
	}

private:
	void mark_open(double bound) { open_bound_ = std::max(open_bound_, bound); }

	bool feasible(std::uint64_t mask)
	{
		if (auto it = witness_.find(mask); it != witness_.end())
			return it->second.has_value();
		std::vector<std::size_t> members;
		for (std::size_t i = 0; i < inst_.mission_count(); ++i)
			if (mask >> i & 1U)
				members.push_back(i);
		AllocationSearch search(inst_, mode_, members, &control_, &nodes_, limits_.max_nodes);
		auto found = search.run();
		if (search.interrupted()) {
			interrupted_ = true;
			return false;
		}
		witness_.emplace(mask, std::move(found));
		return witness_.at(mask).has_value();
	}

	void search(std::size_t k, std::uint64_t mask, double value)
	{
		if (interrupted_ || control_.expired()) {
			interrupted_ = true;
			mark_open(value + suffix_[k]);
			return;
		}
		if (++nodes_ > limits_.max_nodes)
			throw ResourceLimitError("solve_exact: node limit of " + std::to_string(limits_.max_nodes) + " exceeded");
		if (detail::value_exceeds(value, best_value_)) {
			best_value_ = value;
			best_mask_ = mask;
			control_.notify({value, 0.0});
		}
		if (k == order_.size() || !detail::value_exceeds(value + suffix_[k], best_value_))
			return;

		const std::size_t i = order_[k];
		const std::uint64_t with = mask | (std::uint64_t{1} << i);
		const double r = inst_.mission(i).rating;
		const bool include = feasible(with);
		if (interrupted_) {
			// Stopped while testing the include branch: nothing below is settled.
			mark_open(value + suffix_[k]);
			return;
		}
		if (include)
			search(k + 1, with, value + r);
		if (interrupted_) {
			// The include subtree recorded its own open nodes; the exclude branch is untouched.
			mark_open(value + suffix_[k + 1]);
			return;
		}
		search(k + 1, mask, value);
	}

	const ProblemInstance& inst_;
	UsageMode mode_;
	ExactLimits limits_;
	const SolveControl& control_;
	Permutation order_;
	std::vector<double> suffix_;
	double best_value_ = 0.0;
	std::uint64_t best_mask_ = 0;
	std::uint64_t nodes_ = 0;
	bool interrupted_ = false;
	double open_bound_ = 0.0;
	std::unordered_map<std::uint64_t, std::optional<Schedule>> witness_;
};

} // namespace

std::optional<Schedule> find_allocation(const ProblemInstance& instance, UsageMode mode,
                                        std::span<const std::size_t> members)
{
	for (std::size_t i : members)
		if (i >= instance.mission_count())
			throw RangeError("find_allocation: mission index out of range");
	AllocationSearch search(instance, mode, members, nullptr, nullptr, UINT64_MAX);
	return search.run();
}

SolveReport solve_exact(const ProblemInstance& instance, UsageMode mode, const ExactLimits& limits,
                        const SolveControl& control)
{
	const std::size_t n = instance.mission_count();
	const auto T = static_cast<std::size_t>(instance.slots());
	if (n > limits.max_missions || n > 64)
		throw ResourceLimitError("solve_exact: " + std::to_string(n) + " missions exceeds limit of "
		                         + std::to_string(std::min<std::size_t>(limits.max_missions, 64)));
	if (T > limits.max_slots)
		throw ResourceLimitError("solve_exact: " + std::to_string(T) + " slots exceeds limit of "
		                         + std::to_string(limits.max_slots));

	const auto start = Clock::now();

	// Greedy incumbent; its success set is feasible by construction.
	Decoded greedy = decode_priority_order(instance, mode, rating_order(instance));
	std::uint64_t greedy_mask = 0;
	const auto greedy_success = mission_success(instance, greedy.schedule);
	for (std::size_t i = 0; i < n; ++i)
		if (greedy_success[i])
			greedy_mask |= std::uint64_t{1} << i;
	control.notify(greedy.objective);

	BranchAndBound bb(instance, mode, limits, control);
	bb.run(greedy.objective.value, greedy_mask);

	Schedule schedule = greedy.schedule;
	if (bb.best_mask() != greedy_mask) {
		if (const Schedule* w = bb.witness(bb.best_mask()))
			schedule = *w;
	}
	const bool complete = !bb.interrupted();
	std::optional<double> bound;
	if (!complete)
		bound = bb.open_bound();
	return detail::make_report(instance, mode, std::move(schedule), "exact", 0, start, bb.nodes(), bound, complete);
}

} // namespace swapsched
