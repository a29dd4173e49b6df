#ifndef SWAPSCHED_ADVISOR_HPP
#define SWAPSCHED_ADVISOR_HPP

// Logistic priority advisor: learns from exact-solver success sets which
// missions tend to be worth scheduling first, and emits priority orders
// consumable by the greedy decoder and the GA.

#include <swapsched/model.hpp>
#include <swapsched/solvers.hpp>

#include <array>
#include <span>
#include <vector>

namespace swapsched {

inline constexpr std::size_t kFeatureCount = 4;
using Features = std::array<double, kFeatureCount>;

// (rating / max rating, required work / total capacity,
//  window length * rate cap / required work, sum of interaction row).
// Throws DomainError when total capacity is zero, RangeError on a bad index.
Features extract_features(const ProblemInstance& instance, std::size_t mission);

struct AdvisorWeights {
	Features coefficients{};
	double bias = 0.0;

	double logit(const Features& x) const noexcept;
	double score(const Features& x) const noexcept;

	bool operator==(const AdvisorWeights&) const = default;
};

struct TrainingExample {
	Features features{};
	int label = 0;
};

struct TrainingHyper {
	double rate = 0.1;
	std::size_t epochs = 100;
};

// Parameter vector layout: coefficients[0..3], bias.
using ParameterVector = std::array<double, kFeatureCount + 1>;

ParameterVector to_parameters(const AdvisorWeights& w) noexcept;
AdvisorWeights from_parameters(const ParameterVector& p) noexcept;

// Mean binary cross-entropy.
double advisor_loss(const AdvisorWeights& weights, std::span<const TrainingExample> data);
// Analytic gradient of advisor_loss.
ParameterVector advisor_gradient(const AdvisorWeights& weights, std::span<const TrainingExample> data);

struct TrainResult {
	AdvisorWeights weights;
	std::vector<double> loss;  // epochs + 1 entries, loss before each update and after the last
};

// Full-batch gradient descent from zero weights.
// Throws DomainError on an empty dataset, labels outside {0,1} or non-finite features.
TrainResult train_advisor_traced(std::span<const TrainingExample> data, const TrainingHyper& hyper);
AdvisorWeights train_advisor(std::span<const TrainingExample> data, const TrainingHyper& hyper);

// Labels each mission of each instance by membership in solve_exact's success set.
std::vector<TrainingExample> label_with_exact(std::span<const ProblemInstance> instances, UsageMode mode,
                                              const ExactLimits& limits = {});

// Descending score; ties by rating descending, then id ascending.
Permutation advise_order(const ProblemInstance& instance, const AdvisorWeights& weights);

} // namespace swapsched

#endif
