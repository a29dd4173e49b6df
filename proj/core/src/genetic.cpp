#include "solver_common.hpp"

#include <map>
#include <numeric>

namespace swapsched {

void GaParams::validate() const
{
	if (population < 2)
		throw DomainError("GaParams: population must be >= 2");
	if (generations < 1)
		throw DomainError("GaParams: generations must be >= 1");
	if (!(crossover_prob >= 0.0 && crossover_prob <= 1.0))
		throw DomainError("GaParams: crossover_prob must lie in [0, 1]");
	if (!(mutation_prob >= 0.0 && mutation_prob <= 1.0))
		throw DomainError("GaParams: mutation_prob must lie in [0, 1]");
	if (tournament < 1)
		throw DomainError("GaParams: tournament must be >= 1");
	if (elitism >= population)
		throw DomainError("GaParams: elitism must be < population");
}

namespace {

bool is_permutation_of(const Permutation& p, std::size_t n)
{
	if (p.size() != n)
		return false;
	std::vector<char> seen(n, 0);
	for (std::size_t v : p) {
		if (v >= n || seen[v])
			return false;
		seen[v] = 1;
	}
	return true;
}

// Order crossover (OX1): keep parent a's slice [lo, hi], fill the rest in
// parent b's order starting after hi.
Permutation order_crossover(const Permutation& a, const Permutation& b, std::mt19937_64& rng)
{
	const std::size_t n = a.size();
	if (n < 2)
		return a;
	std::size_t lo = detail::uniform_index(rng, n);
	std::size_t hi = detail::uniform_index(rng, n);
	if (lo > hi)
		std::swap(lo, hi);

	Permutation child(n);
	std::vector<char> taken(n, 0);
	for (std::size_t k = lo; k <= hi; ++k) {
		child[k] = a[k];
		taken[a[k]] = 1;
	}
	std::size_t pos = (hi + 1) % n;
	for (std::size_t k = 0; k < n; ++k) {
		const std::size_t gene = b[(hi + 1 + k) % n];
		if (taken[gene])
			continue;
		child[pos] = gene;
		taken[gene] = 1;
		pos = (pos + 1) % n;
	}
	return child;
}

class Evaluator {
public:
	Evaluator(const ProblemInstance& instance, UsageMode mode)
	: instance_(instance)
	, mode_(mode)
	{
	}

	const Objective& fitness(const Permutation& p)
	{
		auto it = cache_.find(p);
		if (it == cache_.end())
			it = cache_.emplace(p, decode_priority_order(instance_, mode_, p).objective).first;
		return it->second;
	}

private:
	const ProblemInstance& instance_;
	UsageMode mode_;
	std::map<Permutation, Objective> cache_;
};

} // namespace

SolveReport solve_genetic(const ProblemInstance& instance, UsageMode mode, const GaParams& params, std::uint64_t seed,
                          std::span<const Permutation> seed_orders, const SolveControl& control)
{
	params.validate();
	const auto start = Clock::now();
	const std::size_t n = instance.mission_count();
	const double bound = detail::solo_bound(instance, mode);
	std::mt19937_64 rng(seed);
	Evaluator eval(instance, mode);

	std::vector<Permutation> pop;
	pop.reserve(params.population);
	pop.push_back(rating_order(instance));
	for (const auto& s : seed_orders) {
		if (pop.size() == params.population)
			break;
		if (!is_permutation_of(s, n))
			throw DomainError("solve_genetic: seed order is not a permutation of the missions");
		pop.push_back(s);
	}
	Permutation identity(n);
	std::iota(identity.begin(), identity.end(), std::size_t{0});
	while (pop.size() < params.population) {
		Permutation p = identity;
		detail::shuffle(p, rng);
		pop.push_back(std::move(p));
	}

	Permutation best = pop.front();
	Objective best_fit = eval.fitness(best);
	control.notify(best_fit);

	auto consider = [&](const Permutation& p) {
		const Objective& f = eval.fitness(p);
		if (detail::improves(f, best_fit)) {
			best = p;
			best_fit = f;
			control.notify(best_fit);
		}
	};
	for (const auto& p : pop) {
		if (control.expired())
			break;
		consider(p);
	}

	auto certified = [&] { return !detail::value_exceeds(bound, best_fit.value); };

	std::vector<std::size_t> rank(params.population);
	std::vector<Objective> fit(params.population);
	std::uint64_t generation = 0;
	while (generation < params.generations && !control.expired() && !certified()) {
		for (std::size_t k = 0; k < pop.size(); ++k)
			fit[k] = eval.fitness(pop[k]);
		std::iota(rank.begin(), rank.end(), std::size_t{0});
		std::stable_sort(rank.begin(), rank.end(),
		                 [&](std::size_t a, std::size_t b) { return detail::improves(fit[a], fit[b]); });

		auto tournament = [&]() -> const Permutation& {
			std::size_t winner = detail::uniform_index(rng, pop.size());
			for (std::size_t k = 1; k < params.tournament; ++k) {
				const std::size_t c = detail::uniform_index(rng, pop.size());
				if (detail::improves(fit[c], fit[winner]))
					winner = c;
			}
			return pop[winner];
		};

		std::vector<Permutation> next;
		next.reserve(params.population);
		for (std::size_t e = 0; e < params.elitism; ++e)
			next.push_back(pop[rank[e]]);
		bool stopped = false;
		while (next.size() < params.population) {
			const Permutation& a = tournament();
			const Permutation& b = tournament();
			Permutation child = detail::uniform_unit(rng) < params.crossover_prob ? order_crossover(a, b, rng) : a;
			if (n >= 2 && detail::uniform_unit(rng) < params.mutation_prob) {
				const std::size_t x = detail::uniform_index(rng, n);
				const std::size_t y = detail::uniform_index(rng, n);
				std::swap(child[x], child[y]);
			}
			if (control.expired()) {
				stopped = true;
				break;
			}
			consider(child);
			next.push_back(std::move(child));
		}
		if (stopped)
			break;
		pop = std::move(next);
		++generation;
	}

	Decoded d = decode_priority_order(instance, mode, best);
	return detail::make_report(instance, mode, std::move(d.schedule), "ga", seed, start, generation);
}

} // namespace swapsched
