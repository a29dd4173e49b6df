#include <swapsched/advisor.hpp>

#include <algorithm>
#include <cmath>
#include <numeric>

namespace swapsched {

Features extract_features(const ProblemInstance& instance, std::size_t mission)
{
	const MissionSpec& m = instance.mission(mission);
	const auto& cap = instance.platform().capacity;
	const double total_capacity = std::accumulate(cap.begin(), cap.end(), 0.0);
	if (!(total_capacity > 0.0))
		throw DomainError("extract_features: platform has zero total capacity");
	const double req = m.required_work();
	return {
		m.rating / instance.ratings().max_rating(),
		req / total_capacity,
		static_cast<double>(m.window_length()) * m.rate_cap / req,
		instance.interaction().degree(mission),
	};
}

double AdvisorWeights::logit(const Features& x) const noexcept
{
	double z = bias;
	for (std::size_t k = 0; k < kFeatureCount; ++k)
		z += coefficients[k] * x[k];
	return z;
}

double AdvisorWeights::score(const Features& x) const noexcept
{
	return 1.0 / (1.0 + std::exp(-logit(x)));
}

ParameterVector to_parameters(const AdvisorWeights& w) noexcept
{
	ParameterVector p{};
	std::copy(w.coefficients.begin(), w.coefficients.end(), p.begin());
	p[kFeatureCount] = w.bias;
	return p;
}

AdvisorWeights from_parameters(const ParameterVector& p) noexcept
{
	AdvisorWeights w;
	std::copy(p.begin(), p.begin() + kFeatureCount, w.coefficients.begin());
	w.bias = p[kFeatureCount];
	return w;
}

namespace {

// log(1 + e^z), stable for large |z|.
double softplus(double z)
{
	return z > 0.0 ? z + std::log1p(std::exp(-z)) : std::log1p(std::exp(z));
}

void check_dataset(std::span<const TrainingExample> data)
{
	if (data.empty())
		throw DomainError("advisor: empty training set");
	for (const auto& ex : data) {
		if (ex.label != 0 && ex.label != 1)
			throw DomainError("advisor: labels must be 0 or 1");
		for (double v : ex.features)
			if (!std::isfinite(v))
				throw DomainError("advisor: non-finite feature");
	}
}

} // namespace

double advisor_loss(const AdvisorWeights& weights, std::span<const TrainingExample> data)
{
	check_dataset(data);
	double sum = 0.0;
	for (const auto& ex : data) {
		const double z = weights.logit(ex.features);
		// -[y log s(z) + (1-y) log(1 - s(z))]
		sum += ex.label == 1 ? softplus(-z) : softplus(z);
	}
	return sum / static_cast<double>(data.size());
}

ParameterVector advisor_gradient(const AdvisorWeights& weights, std::span<const TrainingExample> data)
{
	check_dataset(data);
	ParameterVector g{};
	for (const auto& ex : data) {
		const double err = weights.score(ex.features) - ex.label;
		for (std::size_t k = 0; k < kFeatureCount; ++k)
			g[k] += err * ex.features[k];
		g[kFeatureCount] += err;
	}
	for (double& v : g)
		v /= static_cast<double>(data.size());
	return g;
}

TrainResult train_advisor_traced(std::span<const TrainingExample> data, const TrainingHyper& hyper)
{
	check_dataset(data);
	if (!(hyper.rate > 0.0) || !std::isfinite(hyper.rate))
		throw DomainError("advisor: learning rate must be positive");
	TrainResult out;
	ParameterVector p{};
	out.loss.reserve(hyper.epochs + 1);
	for (std::size_t epoch = 0; epoch < hyper.epochs; ++epoch) {
		const AdvisorWeights w = from_parameters(p);
		out.loss.push_back(advisor_loss(w, data));
		const ParameterVector g = advisor_gradient(w, data);
		for (std::size_t k = 0; k < p.size(); ++k)
			p[k] -= hyper.rate * g[k];
	}
	out.weights = from_parameters(p);
	out.loss.push_back(advisor_loss(out.weights, data));
	return out;
}

AdvisorWeights train_advisor(std::span<const TrainingExample> data, const TrainingHyper& hyper)
{
	return train_advisor_traced(data, hyper).weights;
}

std::vector<TrainingExample> label_with_exact(std::span<const ProblemInstance> instances, UsageMode mode,
                                              const ExactLimits& limits)
{
	std::vector<TrainingExample> out;
	for (const auto& inst : instances) {
		const SolveReport rep = solve_exact(inst, mode, limits);
		for (std::size_t i = 0; i < inst.mission_count(); ++i)
			out.push_back({extract_features(inst, i), rep.success[i] ? 1 : 0});
	}
	return out;
}

Permutation advise_order(const ProblemInstance& instance, const AdvisorWeights& weights)
{
	const std::size_t n = instance.mission_count();
	std::vector<double> score(n);
	for (std::size_t i = 0; i < n; ++i)
		score[i] = weights.score(extract_features(instance, i));
	Permutation order(n);
	std::iota(order.begin(), order.end(), std::size_t{0});
	const auto& ms = instance.missions();
	std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
		if (score[a] != score[b])
			return score[a] > score[b];
		if (ms[a].rating != ms[b].rating)
			return ms[a].rating > ms[b].rating;
		if (ms[a].id != ms[b].id)
			return ms[a].id < ms[b].id;
		return a < b;
	});
	return order;
}

} // namespace swapsched
