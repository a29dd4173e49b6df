#include <swapsched/generator.hpp>

#include "solver_common.hpp"

#include <cmath>

namespace swapsched {

namespace {

int draw(std::mt19937_64& rng, Range<int> r)
{
	return r.lo + static_cast<int>(detail::uniform_index(rng, static_cast<std::size_t>(r.hi - r.lo) + 1));
}

// Uniform over the values k / denominator inside [r.lo, r.hi].
double draw_snapped(std::mt19937_64& rng, Range<double> r, int denominator)
{
	const auto lo = static_cast<long long>(std::ceil(r.lo * denominator - 1e-9));
	const auto hi = static_cast<long long>(std::floor(r.hi * denominator + 1e-9));
	if (hi < lo)
		return r.lo;
	const auto k = lo + static_cast<long long>(detail::uniform_index(rng, static_cast<std::size_t>(hi - lo) + 1));
	return static_cast<double>(k) / denominator;
}

bool bernoulli(std::mt19937_64& rng, double p)
{
	return detail::uniform_unit(rng) < p;
}

void require(bool cond, const char* what)
{
	if (!cond)
		throw DomainError(what);
}

} // namespace

void GenParams::validate() const
{
	require(slots >= 1, "GenParams: slots must be >= 1");
	require(capacity.lo >= 0 && capacity.lo <= capacity.hi, "GenParams: capacity range must satisfy 0 <= lo <= hi");
	require(work.lo >= 1 && work.lo <= work.hi, "GenParams: work range must satisfy 1 <= lo <= hi");
	require(fraction.lo > 0.0 && fraction.lo <= fraction.hi && fraction.hi <= 1.0,
	        "GenParams: fraction range must satisfy 0 < lo <= hi <= 1");
	require(rating.lo >= 1 && rating.lo <= rating.hi, "GenParams: rating range must satisfy 1 <= lo <= hi");
	require(rate_cap.lo >= 1 && rate_cap.lo <= rate_cap.hi, "GenParams: rate_cap range must satisfy 1 <= lo <= hi");
	require(density >= 0.0 && density <= 1.0, "GenParams: density must lie in [0, 1]");
	require(gamma.lo >= 0.0 && gamma.lo <= gamma.hi, "GenParams: gamma range must satisfy 0 <= lo <= hi");
}

ProblemInstance generate_instance(const GenParams& p)
{
	p.validate();
	std::mt19937_64 rng(p.seed);

	PlatformProfile platform;
	for (int t = 0; t < p.slots; ++t)
		platform.capacity.push_back(draw(rng, p.capacity));

	std::vector<MissionSpec> missions;
	for (std::size_t i = 0; i < p.missions; ++i) {
		MissionSpec m;
		m.id = "m" + std::to_string(i);
		m.release = draw(rng, {0, p.slots - 1});
		m.deadline = draw(rng, {m.release + 1, p.slots});
		m.total_work = draw(rng, p.work);
		double f = draw_snapped(rng, p.fraction, 20);
		m.fraction = f > 0.0 ? std::min(f, 1.0) : p.fraction.lo;
		m.rate_cap = draw(rng, p.rate_cap);
		m.rating = draw(rng, p.rating);
		missions.push_back(std::move(m));
	}

	const std::size_t n = p.missions;
	std::vector<std::vector<double>> gamma(n, std::vector<double>(n, 0.0));
	for (std::size_t i = 0; i < n; ++i)
		for (std::size_t j = i + 1; j < n; ++j)
			if (bernoulli(rng, p.density))
				gamma[i][j] = gamma[j][i] = draw_snapped(rng, p.gamma, 4);

	return ProblemInstance(TimeGrid{p.slots}, std::move(missions), std::move(platform), InteractionModel(gamma));
}

void SimGenParams::validate() const
{
	require(nodes >= 1, "SimGenParams: nodes must be >= 1");
	require(horizon >= 1, "SimGenParams: horizon must be >= 1");
	require(rate.lo >= 1 && rate.lo <= rate.hi, "SimGenParams: rate range must satisfy 1 <= lo <= hi");
	require(latency.lo >= 0 && latency.lo <= latency.hi, "SimGenParams: latency range must satisfy 0 <= lo <= hi");
	require(work.lo >= 1 && work.lo <= work.hi, "SimGenParams: work range must satisfy 1 <= lo <= hi");
	require(slack.lo >= 1 && slack.lo <= slack.hi, "SimGenParams: slack range must satisfy 1 <= lo <= hi");
	require(priority.lo >= 1 && priority.lo <= priority.hi, "SimGenParams: priority range must satisfy 1 <= lo <= hi");
	require(hard_share >= 0.0 && hard_share <= 1.0, "SimGenParams: hard_share must lie in [0, 1]");
	require(rear_share >= 0.0 && rear_share <= 1.0, "SimGenParams: rear_share must lie in [0, 1]");
}

SimScenario generate_sim_scenario(const SimGenParams& p)
{
	p.validate();
	std::mt19937_64 rng(p.seed);
	SimScenario sc;
	sc.horizon = p.horizon;
	sc.admission = p.admission;
	sc.assignment = p.assignment;
	for (std::size_t k = 0; k < p.nodes; ++k) {
		NodeSpec n;
		n.id = "n" + std::to_string(k);
		n.rate = draw(rng, p.rate);
		n.link_latency = draw(rng, p.latency);
		n.zone = bernoulli(rng, p.rear_share) ? Zone::rear : Zone::hostile;
		sc.nodes.push_back(std::move(n));
	}
	for (std::size_t k = 0; k < p.jobs; ++k) {
		JobSpec j;
		j.id = "j" + std::to_string(k);
		j.arrival = draw(rng, {0, p.horizon - 1});
		j.work = draw(rng, p.work);
		if (bernoulli(rng, p.hard_share))
			j.deadline = HardDeadline{j.arrival + draw(rng, p.slack)};
		else
			j.deadline = FlexibleDeadline{1.0};
		j.priority_label = draw(rng, p.priority);
		j.origin = sc.nodes[detail::uniform_index(rng, sc.nodes.size())].id;
		sc.jobs.push_back(std::move(j));
	}
	return sc;
}

} // namespace swapsched
