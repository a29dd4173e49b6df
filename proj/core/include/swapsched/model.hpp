#ifndef SWAPSCHED_MODEL_HPP
#define SWAPSCHED_MODEL_HPP

// Power-budget mission model on a discrete time grid.
//
// A platform offers capacity P[t] in each unit slot t. Mission i may draw
// integer compute units a[i][t] inside its window [release, deadline), at
// most rate_cap per slot and total_work overall, and counts as successful
// once ceil(fraction * total_work) units are in. Net headroom in a slot is
//
//     usage(t) = P[t] - sum_i w_i * a[i][t] - sum_{i<j} gamma[i][j] * [both active]
//
// with w_i = 1 (raw mode) or w_i = rating_i / max rating (rated mode).
// A schedule is feasible when it respects every window, cap and total and
// usage(t) >= 0 for all t.

#include <swapsched/errors.hpp>

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace swapsched {

enum class UsageMode { raw, rated };

std::string_view to_string(UsageMode mode) noexcept;
UsageMode parse_usage_mode(std::string_view text);

// Slack allowed below zero when comparing accumulated floating-point usage.
inline constexpr double kUsageTolerance = 1e-9;

struct TimeGrid {
	int slots = 1;

	bool operator==(const TimeGrid&) const = default;
};

struct MissionSpec {
	std::string id;
	int release = 0;
	int deadline = 1;      // exclusive
	int total_work = 1;
	double fraction = 1.0;
	int rate_cap = 1;
	double rating = 1.0;

	// ceil(fraction * total_work), the units needed for success.
	int required_work() const noexcept;
	int window_length() const noexcept { return deadline - release; }
	bool in_window(int slot) const noexcept { return slot >= release && slot < deadline; }

	bool operator==(const MissionSpec&) const = default;
};

struct PlatformProfile {
	std::vector<double> capacity;

	bool operator==(const PlatformProfile&) const = default;
};

// Symmetric pairwise concurrency penalty with zero diagonal.
class InteractionModel {
public:
	InteractionModel() = default;
	explicit InteractionModel(std::size_t n);
	explicit InteractionModel(const std::vector<std::vector<double>>& gamma);

	std::size_t size() const noexcept { return n_; }
	double at(std::size_t i, std::size_t j) const;
	bool is_zero() const noexcept;
	// Sum of row i.
	double degree(std::size_t i) const;
	std::vector<std::vector<double>> to_matrix() const;

	bool operator==(const InteractionModel&) const = default;

private:
	std::size_t n_ = 0;
	std::vector<double> coeff_;
};

// Ratings R_i, their maximum N, and the non-increasing priority order.
class RatingTable {
public:
	RatingTable() = default;
	explicit RatingTable(std::vector<double> ratings);

	std::size_t size() const noexcept { return ratings_.size(); }
	double rating(std::size_t i) const;
	const std::vector<double>& ratings() const noexcept { return ratings_; }
	double max_rating() const noexcept { return max_; }
	// Mission indices sorted by rating, highest first; equal ratings keep index order.
	const std::vector<std::size_t>& order() const noexcept { return order_; }

	bool operator==(const RatingTable&) const = default;

private:
	std::vector<double> ratings_;
	double max_ = 0.0;
	std::vector<std::size_t> order_;
};

// w_i = R_i / max R. Throws DomainError on an empty list or a rating <= 0.
std::vector<double> normalized_weights(std::span<const double> ratings);

// Copy of `table` with the ratings of missions i and j exchanged.
RatingTable swap_ratings(const RatingTable& table, std::size_t i, std::size_t j);

// Invariant check used by ProblemInstance and the scenario loader. Locators
// follow the scenario file layout (missions[2].fraction, interaction.gamma[0][1]).
std::vector<Diagnostic> validate_model(const TimeGrid& grid, const std::vector<MissionSpec>& missions,
                                       const PlatformProfile& platform, const InteractionModel& interaction);

class ProblemInstance {
public:
	// Throws ValidationError if any invariant fails. Warnings are kept.
	ProblemInstance(TimeGrid grid, std::vector<MissionSpec> missions, PlatformProfile platform,
	                InteractionModel interaction);
	ProblemInstance(TimeGrid grid, std::vector<MissionSpec> missions, PlatformProfile platform);

	int slots() const noexcept { return grid_.slots; }
	std::size_t mission_count() const noexcept { return missions_.size(); }
	const TimeGrid& grid() const noexcept { return grid_; }
	const std::vector<MissionSpec>& missions() const noexcept { return missions_; }
	const MissionSpec& mission(std::size_t i) const;
	const PlatformProfile& platform() const noexcept { return platform_; }
	double capacity(std::size_t slot) const;
	const InteractionModel& interaction() const noexcept { return interaction_; }
	const RatingTable& ratings() const noexcept { return ratings_; }
	const std::vector<Diagnostic>& warnings() const noexcept { return warnings_; }

	double weight(std::size_t i, UsageMode mode) const;
	std::vector<double> weights(UsageMode mode) const;
	double rating_sum() const noexcept;

	// Same instance with mission ratings replaced by `table`'s.
	ProblemInstance with_ratings(const RatingTable& table) const;

	bool operator==(const ProblemInstance& other) const;

private:
	TimeGrid grid_;
	std::vector<MissionSpec> missions_;
	PlatformProfile platform_;
	InteractionModel interaction_;
	RatingTable ratings_;
	std::vector<double> rated_weights_;
	std::vector<Diagnostic> warnings_;
};

// Integer allocation matrix a[i][t], row-major.
class Schedule {
public:
	Schedule() = default;
	Schedule(std::size_t missions, std::size_t slots);
	static Schedule zeros_for(const ProblemInstance& instance);

	std::size_t missions() const noexcept { return missions_; }
	std::size_t slots() const noexcept { return slots_; }
	int at(std::size_t i, std::size_t t) const;
	void set(std::size_t i, std::size_t t, int units);
	void add(std::size_t i, std::size_t t, int units) { set(i, t, at(i, t) + units); }
	int mission_total(std::size_t i) const;
	void clear_mission(std::size_t i);
	bool active(std::size_t i, std::size_t t) const { return at(i, t) > 0; }
	std::span<const int> row(std::size_t i) const;
	std::vector<std::vector<int>> to_matrix() const;
	static Schedule from_matrix(const std::vector<std::vector<int>>& rows, std::size_t slots);

	bool operator==(const Schedule&) const = default;
	// Lexicographic over the row-major cells.
	auto operator<=>(const Schedule& other) const { return cells_ <=> other.cells_; }

private:
	std::size_t missions_ = 0;
	std::size_t slots_ = 0;
	std::vector<int> cells_;
};

struct Violation {
	enum class Kind { window, rate_cap, total_work, capacity, negative };

	Kind kind = Kind::capacity;
	std::optional<std::size_t> mission;
	std::optional<std::size_t> slot;
	double magnitude = 0.0;

	bool operator==(const Violation&) const = default;
};

std::string_view to_string(Violation::Kind kind) noexcept;

struct FeasibilityVerdict {
	bool feasible = true;
	std::vector<Violation> violations;
};

// sum_{i<j} gamma[i][j] over pairs both active in `slot`.
double interaction_cost(const ProblemInstance& instance, const Schedule& schedule, std::size_t slot);

double evaluate_usage(const ProblemInstance& instance, const Schedule& schedule, UsageMode mode,
                      std::size_t slot);

FeasibilityVerdict check_feasibility(const ProblemInstance& instance, const Schedule& schedule,
                                     UsageMode mode);

std::vector<bool> mission_success(const ProblemInstance& instance, const Schedule& schedule);

struct Objective {
	double value = 0.0;     // sum of ratings of successful missions
	double headroom = 0.0;  // sum over slots of rated-mode usage; tie-break only
};

Objective objective(const ProblemInstance& instance, const Schedule& schedule);

// Throws ShapeError when `schedule` is not missions x slots of `instance`.
void require_shape(const ProblemInstance& instance, const Schedule& schedule);

} // namespace swapsched

#endif
