#include <swapsched/oracle.hpp>

#include <cmath>
#include <functional>

namespace swapsched {

namespace {

// All rows a[i][.] for one mission: in-window cells bounded by `cell_cap`,
// row sum <= total_work.
std::vector<std::vector<int>> enumerate_rows(const MissionSpec& m, const std::vector<int>& cell_cap, std::size_t T)
{
	std::vector<std::vector<int>> rows;
	std::vector<int> row(T, 0);
	std::function<void(std::size_t, int)> rec = [&](std::size_t t, int left) {
		if (t == T) {
			rows.push_back(row);
			return;
		}
		const int top = m.in_window(static_cast<int>(t)) ? std::min(cell_cap[t], left) : 0;
		for (int u = 0; u <= top; ++u) {
			row[t] = u;
			rec(t + 1, left - u);
		}
		row[t] = 0;
	};
	rec(0, m.total_work);
	return rows;
}

} // namespace

OracleResult brute_force_oracle(const ProblemInstance& instance, UsageMode mode, std::uint64_t max_states)
{
	const std::size_t n = instance.mission_count();
	const auto T = static_cast<std::size_t>(instance.slots());

	std::vector<std::vector<std::vector<int>>> choices(n);
	std::uint64_t states = 1;
	for (std::size_t i = 0; i < n; ++i) {
		const MissionSpec& m = instance.mission(i);
		const double w = instance.weight(i, mode);
		std::vector<int> cap(T);
		for (std::size_t t = 0; t < T; ++t) {
			const double fit = std::floor(instance.capacity(t) / w + 1e-9);
			cap[t] = static_cast<int>(std::min<double>(m.rate_cap, std::max(0.0, fit)));
		}
		choices[i] = enumerate_rows(m, cap, T);
		states *= choices[i].size();
		if (states > max_states)
			throw ResourceLimitError("brute_force_oracle: more than " + std::to_string(max_states)
			                         + " candidate schedules");
	}

	OracleResult best{0.0, Schedule(n, T)};
	Objective best_obj = objective(instance, best.schedule);
	Schedule cur(n, T);

	// Rows are generated in ascending lexicographic order, so iterating
	// mission by mission visits whole matrices in ascending order; replacing
	// only on strict improvement keeps the smallest matrix among ties.
	std::function<void(std::size_t)> rec = [&](std::size_t i) {
		if (i == n) {
			if (!check_feasibility(instance, cur, mode).feasible)
				return;
			const Objective obj = objective(instance, cur);
			if (obj.value > best_obj.value || (obj.value == best_obj.value && obj.headroom > best_obj.headroom)) {
				best_obj = obj;
				best.schedule = cur;
			}
			return;
		}
		for (const auto& row : choices[i]) {
			for (std::size_t t = 0; t < T; ++t)
				cur.set(i, t, row[t]);
			rec(i + 1);
		}
		cur.clear_mission(i);
	};
	rec(0);
	best.value = best_obj.value;
	return best;
}

} // namespace swapsched
