#include "test_support.hpp"

#include <swapsched/model.hpp>

#include <gtest/gtest.h>

#include <random>

using namespace swapsched;
using swapsched::testing::instance_a;
using swapsched::testing::mission;

namespace {

ProblemInstance three_way_instance(double g01, double g12, double g02)
{
	std::vector<MissionSpec> ms{
		mission("p", 0, 1, 1, 1.0, 1, 1.0),
		mission("q", 0, 1, 1, 1.0, 1, 1.0),
		mission("r", 0, 1, 1, 1.0, 1, 1.0),
	};
	std::vector<std::vector<double>> g{{0, g01, g02}, {g01, 0, g12}, {g02, g12, 0}};
	return ProblemInstance(TimeGrid{1}, ms, PlatformProfile{{100.0}}, InteractionModel(g));
}

Schedule full_window(const ProblemInstance& inst, int units)
{
	Schedule s = Schedule::zeros_for(inst);
	for (std::size_t i = 0; i < inst.mission_count(); ++i)
		for (int t = inst.mission(i).release; t < inst.mission(i).deadline; ++t)
			s.set(i, static_cast<std::size_t>(t), units);
	return s;
}

} // namespace

TEST(MissionSpec, RequiredWorkRoundsUp)
{
	EXPECT_EQ(mission("m", 0, 1, 4, 0.75, 1, 1).required_work(), 3);
	EXPECT_EQ(mission("m", 0, 1, 3, 0.9, 1, 1).required_work(), 3);
	EXPECT_EQ(mission("m", 0, 1, 20, 0.55, 1, 1).required_work(), 11);
	EXPECT_EQ(mission("m", 0, 1, 5, 1.0, 1, 1).required_work(), 5);
	EXPECT_EQ(mission("m", 0, 1, 5, 0.01, 1, 1).required_work(), 1);
}

TEST(InteractionCost, ZeroGammaIsZero)
{
	auto inst = instance_a();
	EXPECT_EQ(interaction_cost(inst, full_window(inst, 1), 0), 0.0);
}

TEST(InteractionCost, SinglePair)
{
	std::vector<MissionSpec> ms{mission("a", 0, 1, 2, 1.0, 2, 1.0), mission("b", 0, 1, 1, 1.0, 1, 1.0)};
	ProblemInstance inst(TimeGrid{1}, ms, PlatformProfile{{10.0}}, InteractionModel({{0, 1.5}, {1.5, 0}}));
	Schedule s = Schedule::from_matrix({{2}, {1}}, 1);
	EXPECT_EQ(interaction_cost(inst, s, 0), 1.5);
}

TEST(InteractionCost, ThreeActiveMatchesPairEnumeration)
{
	auto inst = three_way_instance(1.0, 2.0, 4.0);
	Schedule s = Schedule::from_matrix({{1}, {1}, {1}}, 1);

	// Oracle: every unordered pair, counted once via the ordered double sum.
	double pairs = 0.0;
	for (std::size_t i = 0; i < 3; ++i)
		for (std::size_t j = 0; j < 3; ++j)
			if (i != j)
				pairs += inst.interaction().at(i, j);
	pairs /= 2.0;

	EXPECT_EQ(pairs, 7.0);
	EXPECT_EQ(interaction_cost(inst, s, 0), 7.0);

	s.set(1, 0, 0);  // only p and r active
	EXPECT_EQ(interaction_cost(inst, s, 0), 4.0);
}

TEST(InteractionCost, SlotOutOfRange)
{
	auto inst = instance_a();
	EXPECT_THROW(interaction_cost(inst, Schedule::zeros_for(inst), 3), RangeError);
}

TEST(EvaluateUsage, EmptyMissionList)
{
	ProblemInstance inst(TimeGrid{1}, {}, PlatformProfile{{10.0}});
	Schedule s(0, 1);
	EXPECT_EQ(evaluate_usage(inst, s, UsageMode::raw, 0), 10.0);
	EXPECT_EQ(evaluate_usage(inst, s, UsageMode::rated, 0), 10.0);
}

TEST(EvaluateUsage, RawSingleMission)
{
	ProblemInstance inst(TimeGrid{1}, {mission("m", 0, 1, 4, 1.0, 4, 3.0)}, PlatformProfile{{10.0}});
	EXPECT_EQ(evaluate_usage(inst, Schedule::from_matrix({{4}}, 1), UsageMode::raw, 0), 6.0);
}

TEST(EvaluateUsage, RatedHalvesLowerRatedDemand)
{
	std::vector<MissionSpec> ms{mission("a", 0, 1, 1, 1.0, 1, 2.0), mission("b", 0, 1, 1, 1.0, 1, 1.0)};
	ProblemInstance inst(TimeGrid{1}, ms, PlatformProfile{{2.0}});
	Schedule s = Schedule::from_matrix({{1}, {1}}, 1);
	// 2 - 1 * 1 - 0.5 * 1
	EXPECT_EQ(evaluate_usage(inst, s, UsageMode::rated, 0), 0.5);
	EXPECT_EQ(evaluate_usage(inst, s, UsageMode::raw, 0), 0.0);
}

TEST(EvaluateUsage, SlotOutOfRange)
{
	auto inst = instance_a();
	EXPECT_THROW(evaluate_usage(inst, Schedule::zeros_for(inst), UsageMode::raw, 7), RangeError);
}

TEST(EvaluateUsage, MayGoNegative)
{
	ProblemInstance inst(TimeGrid{1}, {mission("m", 0, 1, 4, 1.0, 4, 3.0)}, PlatformProfile{{1.0}});
	EXPECT_EQ(evaluate_usage(inst, Schedule::from_matrix({{3}}, 1), UsageMode::raw, 0), -2.0);
}

TEST(CheckFeasibility, ZeroScheduleIsFeasible)
{
	auto inst = instance_a();
	for (auto mode : {UsageMode::raw, UsageMode::rated})
		EXPECT_TRUE(check_feasibility(inst, Schedule::zeros_for(inst), mode).feasible);
}

TEST(CheckFeasibility, RateCapViolationLocated)
{
	auto inst = instance_a();
	Schedule s = Schedule::zeros_for(inst);
	s.set(1, 2, inst.mission(1).rate_cap + 1);
	const auto v = check_feasibility(inst, s, UsageMode::raw);
	ASSERT_FALSE(v.feasible);
	bool found = false;
	for (const auto& x : v.violations)
		if (x.kind == Violation::Kind::rate_cap && x.mission == 1u && x.slot == 2u)
			found = true;
	EXPECT_TRUE(found);
}

TEST(CheckFeasibility, InstanceAUnitEverywhere)
{
	auto inst = instance_a();
	Schedule s = full_window(inst, 1);
	EXPECT_TRUE(check_feasibility(inst, s, UsageMode::rated).feasible);
	double lowest = 1e9;
	for (std::size_t t = 0; t < 3; ++t)
		lowest = std::min(lowest, evaluate_usage(inst, s, UsageMode::rated, t));
	EXPECT_EQ(lowest, 0.5);
	EXPECT_TRUE(check_feasibility(inst, s, UsageMode::raw).feasible);
}

TEST(CheckFeasibility, EachViolationKind)
{
	std::vector<MissionSpec> ms{mission("a", 1, 3, 3, 1.0, 2, 1.0)};
	ProblemInstance inst(TimeGrid{4}, ms, PlatformProfile{{5.0, 5.0, 1.0, 5.0}});

	auto kinds = [&](const Schedule& s) {
		std::vector<Violation::Kind> out;
		for (const auto& v : check_feasibility(inst, s, UsageMode::raw).violations)
			out.push_back(v.kind);
		return out;
	};
	using K = Violation::Kind;
	EXPECT_EQ(kinds(Schedule::from_matrix({{1, 0, 0, 0}}, 4)), std::vector<K>{K::window});
	EXPECT_EQ(kinds(Schedule::from_matrix({{0, 0, 0, 1}}, 4)), std::vector<K>{K::window});
	EXPECT_EQ(kinds(Schedule::from_matrix({{0, 3, 0, 0}}, 4)), std::vector<K>{K::rate_cap});
	EXPECT_EQ(kinds(Schedule::from_matrix({{0, 2, 2, 0}}, 4)), (std::vector<K>{K::total_work, K::capacity}));
	EXPECT_EQ(kinds(Schedule::from_matrix({{0, -1, 0, 0}}, 4)), std::vector<K>{K::negative});
}

TEST(CheckFeasibility, ShapeMismatch)
{
	auto inst = instance_a();
	EXPECT_THROW(check_feasibility(inst, Schedule(2, 4), UsageMode::raw), ShapeError);
	EXPECT_THROW(check_feasibility(inst, Schedule(3, 3), UsageMode::raw), ShapeError);
}

TEST(MissionSuccess, FractionThresholds)
{
	ProblemInstance a(TimeGrid{3}, {mission("m", 0, 3, 4, 0.75, 1, 1.0)}, PlatformProfile{{1, 1, 1}});
	EXPECT_EQ(mission_success(a, Schedule::from_matrix({{1, 1, 1}}, 3)), std::vector<bool>{true});

	ProblemInstance b(TimeGrid{3}, {mission("m", 0, 3, 3, 0.9, 1, 1.0)}, PlatformProfile{{1, 1, 1}});
	EXPECT_EQ(mission_success(b, Schedule::from_matrix({{1, 1, 0}}, 3)), std::vector<bool>{false});
}

TEST(MissionSuccess, InstanceABothComplete)
{
	auto inst = instance_a();
	Schedule s = full_window(inst, 1);
	EXPECT_EQ(mission_success(inst, s), (std::vector<bool>{true, true}));
}

TEST(Objective, Values)
{
	auto inst = instance_a();
	EXPECT_EQ(objective(inst, Schedule::zeros_for(inst)).value, 0.0);
	EXPECT_EQ(objective(inst, full_window(inst, 1)).value, 3.0);

	ProblemInstance one(TimeGrid{1}, {mission("m", 0, 1, 1, 1.0, 1, 5.0)}, PlatformProfile{{1}});
	EXPECT_EQ(objective(one, Schedule::from_matrix({{1}}, 1)).value, 5.0);
}

TEST(Objective, HeadroomIsRatedUsageSum)
{
	auto inst = instance_a();
	// Each slot: 2 - 1 - 0.5.
	EXPECT_DOUBLE_EQ(objective(inst, full_window(inst, 1)).headroom, 1.5);
	EXPECT_DOUBLE_EQ(objective(inst, Schedule::zeros_for(inst)).headroom, 6.0);
}

TEST(NormalizedWeights, Examples)
{
	EXPECT_EQ(normalized_weights(std::vector<double>{2, 1}), (std::vector<double>{1.0, 0.5}));
	EXPECT_EQ(normalized_weights(std::vector<double>{7}), std::vector<double>{1.0});
	const auto a = normalized_weights(std::vector<double>{5, 3});
	const auto b = normalized_weights(std::vector<double>{10, 6});
	EXPECT_EQ(a, b);
	EXPECT_DOUBLE_EQ(a[1], 0.6);
}

TEST(NormalizedWeights, DomainErrors)
{
	EXPECT_THROW(normalized_weights(std::vector<double>{}), DomainError);
	EXPECT_THROW(normalized_weights(std::vector<double>{1, 0}), DomainError);
	EXPECT_THROW(normalized_weights(std::vector<double>{-2, 1}), DomainError);
}

TEST(NormalizedWeights, ScaleInvariance)
{
	std::mt19937_64 rng(11);
	std::uniform_real_distribution<double> r(0.1, 50.0);
	std::uniform_real_distribution<double> k(0.01, 100.0);
	for (int trial = 0; trial < 200; ++trial) {
		std::vector<double> base(1 + trial % 7);
		for (auto& x : base)
			x = r(rng);
		const double scale = k(rng);
		std::vector<double> scaled = base;
		for (auto& x : scaled)
			x *= scale;
		const auto wa = normalized_weights(base);
		const auto wb = normalized_weights(scaled);
		for (std::size_t i = 0; i < wa.size(); ++i)
			EXPECT_NEAR(wa[i], wb[i], 1e-9 * std::abs(wa[i]));

		std::vector<double> pow2 = base;
		for (auto& x : pow2)
			x *= 64.0;
		EXPECT_EQ(normalized_weights(pow2), wa);
	}
}

TEST(RatingTable, OrderAndMax)
{
	RatingTable t({1.0, 4.0, 2.0, 4.0});
	EXPECT_EQ(t.max_rating(), 4.0);
	EXPECT_EQ(t.order(), (std::vector<std::size_t>{1, 3, 2, 0}));
}

TEST(SwapRatings, Examples)
{
	RatingTable t({2.0, 1.0});
	EXPECT_EQ(swap_ratings(t, 0, 0), t);

	RatingTable s = swap_ratings(t, 0, 1);
	EXPECT_EQ(s.ratings(), (std::vector<double>{1.0, 2.0}));
	EXPECT_EQ(s.max_rating(), 2.0);
	EXPECT_EQ(s.order(), (std::vector<std::size_t>{1, 0}));
	EXPECT_EQ(t.ratings(), (std::vector<double>{2.0, 1.0}));  // original untouched

	EXPECT_EQ(swap_ratings(s, 0, 1), t);
	EXPECT_THROW(swap_ratings(t, 0, 2), RangeError);
}

TEST(SwapRatings, PreservesMultisetAndMax)
{
	std::mt19937_64 rng(3);
	for (int trial = 0; trial < 100; ++trial) {
		std::vector<double> r(2 + trial % 6);
		for (auto& x : r)
			x = 1.0 + static_cast<double>(rng() % 100) / 7.0;
		RatingTable t(r);
		const std::size_t i = rng() % r.size();
		const std::size_t j = rng() % r.size();
		RatingTable s = swap_ratings(t, i, j);
		auto a = t.ratings();
		auto b = s.ratings();
		std::sort(a.begin(), a.end());
		std::sort(b.begin(), b.end());
		EXPECT_EQ(a, b);
		EXPECT_EQ(s.max_rating(), t.max_rating());
		for (std::size_t k = 1; k < s.order().size(); ++k)
			EXPECT_GE(s.rating(s.order()[k - 1]), s.rating(s.order()[k]));
	}
}

TEST(ProblemInstance, WithRatingsAppliesSwap)
{
	auto inst = instance_a();
	auto swapped = inst.with_ratings(swap_ratings(inst.ratings(), 0, 1));
	EXPECT_EQ(swapped.mission(0).rating, 1.0);
	EXPECT_EQ(swapped.mission(1).rating, 2.0);
	EXPECT_EQ(swapped.weight(0, UsageMode::rated), 0.5);
	EXPECT_EQ(swapped.weight(1, UsageMode::rated), 1.0);
}

TEST(ProblemInstance, ValidationErrorsCarryLocators)
{
	std::vector<MissionSpec> ms{mission("a", 2, 2, 0, 0.0, 0, -1.0)};
	try {
		ProblemInstance inst(TimeGrid{3}, ms, PlatformProfile{{1, -1}});
		FAIL() << "expected ValidationError";
	}
	catch (const ValidationError& e) {
		std::vector<std::string> locs;
		for (const auto& d : e.issues())
			locs.push_back(d.locator);
		for (const char* want : {"platform.capacity", "platform.capacity[1]", "missions[0].deadline",
		                         "missions[0].total_work", "missions[0].fraction", "missions[0].rate_cap",
		                         "missions[0].rating"})
			EXPECT_NE(std::find(locs.begin(), locs.end(), want), locs.end()) << want;
	}
}

TEST(ProblemInstance, FullFractionWarns)
{
	ProblemInstance inst(TimeGrid{1}, {mission("m", 0, 1, 1, 1.0, 1, 1.0)}, PlatformProfile{{1}});
	ASSERT_EQ(inst.warnings().size(), 1u);
	EXPECT_EQ(inst.warnings()[0].locator, "missions[0].fraction");
}

TEST(ProblemInstance, AsymmetricGammaRejected)
{
	std::vector<MissionSpec> ms{mission("a", 0, 1, 1, 0.5, 1, 1), mission("b", 0, 1, 1, 0.5, 1, 1)};
	EXPECT_THROW(ProblemInstance(TimeGrid{1}, ms, PlatformProfile{{1}}, InteractionModel({{0, 1}, {2, 0}})),
	             ValidationError);
	EXPECT_THROW(ProblemInstance(TimeGrid{1}, ms, PlatformProfile{{1}}, InteractionModel({{1, 1}, {1, 0}})),
	             ValidationError);
}

// --- properties over generated instances ----------------------------------

TEST(ModelProperties, RawZeroGammaReducesToCapacityMinusAllocation)
{
	for (std::uint64_t seed = 0; seed < 200; ++seed) {
		auto p = swapsched::testing::small_params(seed);
		p.density = 0.0;
		const auto inst = generate_instance(p);
		std::mt19937_64 rng(seed);
		Schedule s = Schedule::zeros_for(inst);
		for (std::size_t i = 0; i < inst.mission_count(); ++i)
			for (std::size_t t = 0; t < s.slots(); ++t)
				s.set(i, t, static_cast<int>(rng() % 4));
		for (std::size_t t = 0; t < s.slots(); ++t) {
			double expect = inst.capacity(t);
			for (std::size_t i = 0; i < inst.mission_count(); ++i)
				expect -= s.at(i, t);
			EXPECT_EQ(evaluate_usage(inst, s, UsageMode::raw, t), expect);
		}
	}
}

TEST(ModelProperties, CheckFeasibilityAgreesWithNaiveChecker)
{
	int feasible = 0;
	int infeasible = 0;
	for (std::uint64_t seed = 0; seed < 400; ++seed) {
		auto p = swapsched::testing::small_params(seed);
		p.density = 0.5;
		const auto inst = generate_instance(p);
		std::mt19937_64 rng(seed * 7 + 1);
		Schedule s = Schedule::zeros_for(inst);
		for (std::size_t i = 0; i < inst.mission_count(); ++i) {
			const auto& m = inst.mission(i);
			for (std::size_t t = 0; t < s.slots(); ++t) {
				// Mostly in-window, occasionally out of bounds.
				const bool inside = m.in_window(static_cast<int>(t));
				if (inside || rng() % 10 == 0)
					s.set(i, t, static_cast<int>(rng() % (m.rate_cap + (rng() % 4 == 0 ? 2 : 1))));
			}
		}
		for (auto mode : {UsageMode::raw, UsageMode::rated}) {
			const bool a = check_feasibility(inst, s, mode).feasible;
			EXPECT_EQ(a, swapsched::testing::naive_feasible(inst, s, mode)) << "seed " << seed;
			(a ? feasible : infeasible)++;
		}
	}
	EXPECT_GT(feasible, 20);
	EXPECT_GT(infeasible, 20);
}

TEST(ModelProperties, AddingUnitsNeverRevokesSuccess)
{
	for (std::uint64_t seed = 0; seed < 200; ++seed) {
		const auto inst = generate_instance(swapsched::testing::small_params(seed));
		std::mt19937_64 rng(seed);
		Schedule s = Schedule::zeros_for(inst);
		auto before = mission_success(inst, s);
		for (int step = 0; step < 30; ++step) {
			const std::size_t i = rng() % inst.mission_count();
			const auto& m = inst.mission(i);
			const auto t = static_cast<std::size_t>(m.release + static_cast<int>(rng() % m.window_length()));
			if (s.at(i, t) >= m.rate_cap || s.mission_total(i) >= m.total_work)
				continue;
			s.add(i, t, 1);
			const auto after = mission_success(inst, s);
			for (std::size_t k = 0; k < after.size(); ++k)
				EXPECT_TRUE(!before[k] || after[k]);
			before = after;
		}
	}
}
