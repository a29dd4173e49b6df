#include <swapsched/model.hpp>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

namespace swapsched {

std::string to_string(const Diagnostic& d)
{
	std::string out = d.severity == Diagnostic::Severity::error ? "error: " : "warning: ";
	if (!d.locator.empty()) {
		out += d.locator;
		out += ": ";
	}
	out += d.message;
	return out;
}

namespace {

std::string join_issues(const std::vector<Diagnostic>& issues)
{
	std::string msg = "validation failed";
	for (const auto& d : issues) {
		msg += "\n  ";
		msg += to_string(d);
	}
	return msg;
}

} // namespace

ValidationError::ValidationError(std::vector<Diagnostic> issues)
: std::runtime_error(join_issues(issues))
, issues_(std::move(issues))
{
}

std::string_view to_string(UsageMode mode) noexcept
{
	return mode == UsageMode::raw ? "raw" : "rated";
}

UsageMode parse_usage_mode(std::string_view text)
{
	if (text == "raw")
		return UsageMode::raw;
	if (text == "rated")
		return UsageMode::rated;
	throw DomainError("unknown usage mode '" + std::string(text) + "' (expected raw or rated)");
}

int MissionSpec::required_work() const noexcept
{
	// Guard against p*C landing a hair above an integer (0.55 * 20).
	const double exact = fraction * static_cast<double>(total_work);
	return static_cast<int>(std::ceil(exact - 1e-9));
}

// ---------------------------------------------------------------------------
// InteractionModel

InteractionModel::InteractionModel(std::size_t n)
: n_(n)
, coeff_(n * n, 0.0)
{
}

InteractionModel::InteractionModel(const std::vector<std::vector<double>>& gamma)
: n_(gamma.size())
, coeff_(n_ * n_, 0.0)
{
	for (std::size_t i = 0; i < n_; ++i) {
		if (gamma[i].size() != n_)
			throw ShapeError("interaction matrix row " + std::to_string(i) + " has "
			                 + std::to_string(gamma[i].size()) + " entries, expected "
			                 + std::to_string(n_));
		std::copy(gamma[i].begin(), gamma[i].end(), coeff_.begin() + static_cast<std::ptrdiff_t>(i * n_));
	}
}

double InteractionModel::at(std::size_t i, std::size_t j) const
{
	if (i >= n_ || j >= n_)
		throw RangeError("interaction index out of range");
	return coeff_[i * n_ + j];
}

bool InteractionModel::is_zero() const noexcept
{
	return std::all_of(coeff_.begin(), coeff_.end(), [](double g) { return g == 0.0; });
}

double InteractionModel::degree(std::size_t i) const
{
	if (i >= n_)
		throw RangeError("interaction index out of range");
	double sum = 0.0;
	for (std::size_t j = 0; j < n_; ++j)
		sum += coeff_[i * n_ + j];
	return sum;
}

std::vector<std::vector<double>> InteractionModel::to_matrix() const
{
	std::vector<std::vector<double>> rows(n_, std::vector<double>(n_));
	for (std::size_t i = 0; i < n_; ++i)
		for (std::size_t j = 0; j < n_; ++j)
			rows[i][j] = coeff_[i * n_ + j];
	return rows;
}

// ---------------------------------------------------------------------------
// Ratings

RatingTable::RatingTable(std::vector<double> ratings)
: ratings_(std::move(ratings))
{
	for (std::size_t i = 0; i < ratings_.size(); ++i) {
		if (!(ratings_[i] > 0.0) || !std::isfinite(ratings_[i]))
			throw DomainError("rating " + std::to_string(i) + " must be positive and finite");
	}
	max_ = ratings_.empty() ? 0.0 : *std::max_element(ratings_.begin(), ratings_.end());
	order_.resize(ratings_.size());
	std::iota(order_.begin(), order_.end(), std::size_t{0});
	std::stable_sort(order_.begin(), order_.end(),
	                 [this](std::size_t a, std::size_t b) { return ratings_[a] > ratings_[b]; });
}

double RatingTable::rating(std::size_t i) const
{
	if (i >= ratings_.size())
		throw RangeError("rating index out of range");
	return ratings_[i];
}

std::vector<double> normalized_weights(std::span<const double> ratings)
{
	if (ratings.empty())
		throw DomainError("normalized_weights: empty rating list");
	for (double r : ratings)
		if (!(r > 0.0) || !std::isfinite(r))
			throw DomainError("normalized_weights: ratings must be positive and finite");
	const double top = *std::max_element(ratings.begin(), ratings.end());
	std::vector<double> w;
	w.reserve(ratings.size());
	for (double r : ratings)
		w.push_back(r / top);
	return w;
}

RatingTable swap_ratings(const RatingTable& table, std::size_t i, std::size_t j)
{
	if (i >= table.size() || j >= table.size())
		throw RangeError("swap_ratings: mission index out of range");
	std::vector<double> r = table.ratings();
	std::swap(r[i], r[j]);
	return RatingTable(std::move(r));
}

// ---------------------------------------------------------------------------
// Validation

namespace {

std::string mission_loc(std::size_t i, const char* field)
{
	return "missions[" + std::to_string(i) + "]." + field;
}

} // namespace

std::vector<Diagnostic> validate_model(const TimeGrid& grid, const std::vector<MissionSpec>& missions,
                                       const PlatformProfile& platform, const InteractionModel& interaction)
{
	using Sev = Diagnostic::Severity;
	std::vector<Diagnostic> out;
	auto error = [&](std::string loc, std::string msg) { out.push_back({Sev::error, std::move(loc), std::move(msg)}); };

	const int T = grid.slots;
	if (T < 1)
		error("grid.slots", "must be >= 1, got " + std::to_string(T));

	if (static_cast<long long>(platform.capacity.size()) != static_cast<long long>(T))
		error("platform.capacity", "length " + std::to_string(platform.capacity.size())
		                               + " does not match grid.slots " + std::to_string(T));
	for (std::size_t t = 0; t < platform.capacity.size(); ++t) {
		const double p = platform.capacity[t];
		if (!std::isfinite(p) || p < 0.0)
			error("platform.capacity[" + std::to_string(t) + "]", "must be finite and >= 0");
	}

	for (std::size_t i = 0; i < missions.size(); ++i) {
		const MissionSpec& m = missions[i];
		if (m.id.empty())
			error(mission_loc(i, "id"), "must be non-empty");
		for (std::size_t k = 0; k < i; ++k)
			if (!m.id.empty() && missions[k].id == m.id)
				error(mission_loc(i, "id"), "duplicate id '" + m.id + "' (also missions["
				                                + std::to_string(k) + "])");
		if (m.release < 0)
			error(mission_loc(i, "release"), "must be >= 0");
		if (m.deadline <= m.release)
			error(mission_loc(i, "deadline"), "must be > release");
		if (m.deadline > T)
			error(mission_loc(i, "deadline"), "must be <= grid.slots (" + std::to_string(T) + ")");
		if (m.total_work < 1)
			error(mission_loc(i, "total_work"), "must be >= 1");
		if (!(m.fraction > 0.0) || !(m.fraction <= 1.0))
			error(mission_loc(i, "fraction"), "must lie in (0, 1]");
		else if (m.fraction == 1.0)
			out.push_back({Sev::warning, mission_loc(i, "fraction"),
			               "fraction 1 demands full completion (no approximation)"});
		if (m.rate_cap < 1)
			error(mission_loc(i, "rate_cap"), "must be >= 1");
		if (!(m.rating > 0.0) || !std::isfinite(m.rating))
			error(mission_loc(i, "rating"), "must be positive and finite");
	}

	const std::size_t n = missions.size();
	if (interaction.size() != n) {
		error("interaction.gamma", "must be " + std::to_string(n) + "x" + std::to_string(n) + ", got "
		                               + std::to_string(interaction.size()) + "x"
		                               + std::to_string(interaction.size()));
	}
	else {
		for (std::size_t i = 0; i < n; ++i) {
			const std::string diag = "interaction.gamma[" + std::to_string(i) + "][" + std::to_string(i) + "]";
			if (interaction.at(i, i) != 0.0)
				error(diag, "diagonal must be zero");
			for (std::size_t j = 0; j < n; ++j) {
				const double g = interaction.at(i, j);
				const std::string loc = "interaction.gamma[" + std::to_string(i) + "][" + std::to_string(j) + "]";
				if (!std::isfinite(g) || g < 0.0)
					error(loc, "must be finite and >= 0");
				if (j > i && g != interaction.at(j, i))
					error(loc, "asymmetric: gamma[" + std::to_string(i) + "][" + std::to_string(j)
					               + "] != gamma[" + std::to_string(j) + "][" + std::to_string(i) + "]");
			}
		}
	}
	return out;
}

// ---------------------------------------------------------------------------
// ProblemInstance

ProblemInstance::ProblemInstance(TimeGrid grid, std::vector<MissionSpec> missions, PlatformProfile platform,
                                 InteractionModel interaction)
: grid_(grid)
, missions_(std::move(missions))
, platform_(std::move(platform))
, interaction_(std::move(interaction))
{
	auto diags = validate_model(grid_, missions_, platform_, interaction_);
	std::vector<Diagnostic> errors;
	for (auto& d : diags) {
		if (d.severity == Diagnostic::Severity::error)
			errors.push_back(std::move(d));
		else
			warnings_.push_back(std::move(d));
	}
	if (!errors.empty())
		throw ValidationError(std::move(errors));

	std::vector<double> r;
	r.reserve(missions_.size());
	for (const auto& m : missions_)
		r.push_back(m.rating);
	ratings_ = RatingTable(r);
	if (!r.empty())
		rated_weights_ = normalized_weights(r);
}

ProblemInstance::ProblemInstance(TimeGrid grid, std::vector<MissionSpec> missions, PlatformProfile platform)
: ProblemInstance(grid, missions, std::move(platform), InteractionModel(missions.size()))
{
}

const MissionSpec& ProblemInstance::mission(std::size_t i) const
{
	if (i >= missions_.size())
		throw RangeError("mission index " + std::to_string(i) + " out of range");
	return missions_[i];
}

double ProblemInstance::capacity(std::size_t slot) const
{
	if (slot >= platform_.capacity.size())
		throw RangeError("slot " + std::to_string(slot) + " out of range");
	return platform_.capacity[slot];
}

double ProblemInstance::weight(std::size_t i, UsageMode mode) const
{
	if (i >= missions_.size())
		throw RangeError("mission index " + std::to_string(i) + " out of range");
	return mode == UsageMode::raw ? 1.0 : rated_weights_[i];
}

std::vector<double> ProblemInstance::weights(UsageMode mode) const
{
	if (mode == UsageMode::rated)
		return rated_weights_;
	return std::vector<double>(missions_.size(), 1.0);
}

double ProblemInstance::rating_sum() const noexcept
{
	double sum = 0.0;
	for (const auto& m : missions_)
		sum += m.rating;
	return sum;
}

ProblemInstance ProblemInstance::with_ratings(const RatingTable& table) const
{
	if (table.size() != missions_.size())
		throw ShapeError("rating table size does not match mission count");
	auto missions = missions_;
	for (std::size_t i = 0; i < missions.size(); ++i)
		missions[i].rating = table.rating(i);
	return ProblemInstance(grid_, std::move(missions), platform_, interaction_);
}

bool ProblemInstance::operator==(const ProblemInstance& other) const
{
	return grid_ == other.grid_ && missions_ == other.missions_ && platform_ == other.platform_
	    && interaction_ == other.interaction_;
}

// ---------------------------------------------------------------------------
// Schedule

Schedule::Schedule(std::size_t missions, std::size_t slots)
: missions_(missions)
, slots_(slots)
, cells_(missions * slots, 0)
{
}

Schedule Schedule::zeros_for(const ProblemInstance& instance)
{
	return Schedule(instance.mission_count(), static_cast<std::size_t>(instance.slots()));
}

int Schedule::at(std::size_t i, std::size_t t) const
{
	if (i >= missions_ || t >= slots_)
		throw RangeError("schedule cell (" + std::to_string(i) + ", " + std::to_string(t) + ") out of range");
	return cells_[i * slots_ + t];
}

void Schedule::set(std::size_t i, std::size_t t, int units)
{
	if (i >= missions_ || t >= slots_)
		throw RangeError("schedule cell (" + std::to_string(i) + ", " + std::to_string(t) + ") out of range");
	cells_[i * slots_ + t] = units;
}

int Schedule::mission_total(std::size_t i) const
{
	const auto r = row(i);
	return std::accumulate(r.begin(), r.end(), 0);
}

void Schedule::clear_mission(std::size_t i)
{
	if (i >= missions_)
		throw RangeError("schedule mission index out of range");
	std::fill_n(cells_.begin() + static_cast<std::ptrdiff_t>(i * slots_), slots_, 0);
}

std::span<const int> Schedule::row(std::size_t i) const
{
	if (i >= missions_)
		throw RangeError("schedule mission index out of range");
	return std::span<const int>(cells_).subspan(i * slots_, slots_);
}

std::vector<std::vector<int>> Schedule::to_matrix() const
{
	std::vector<std::vector<int>> rows;
	rows.reserve(missions_);
	for (std::size_t i = 0; i < missions_; ++i) {
		auto r = row(i);
		rows.emplace_back(r.begin(), r.end());
	}
	return rows;
}

Schedule Schedule::from_matrix(const std::vector<std::vector<int>>& rows, std::size_t slots)
{
	Schedule s(rows.size(), slots);
	for (std::size_t i = 0; i < rows.size(); ++i) {
		if (rows[i].size() != slots)
			throw ShapeError("schedule row " + std::to_string(i) + " has " + std::to_string(rows[i].size())
			                 + " slots, expected " + std::to_string(slots));
		for (std::size_t t = 0; t < slots; ++t)
			s.set(i, t, rows[i][t]);
	}
	return s;
}

// ---------------------------------------------------------------------------
// Evaluation kernel

std::string_view to_string(Violation::Kind kind) noexcept
{
	switch (kind) {
	case Violation::Kind::window: return "window";
	case Violation::Kind::rate_cap: return "rate_cap";
	case Violation::Kind::total_work: return "total_work";
	case Violation::Kind::capacity: return "capacity";
	case Violation::Kind::negative: return "negative";
	}
	return "unknown";
}

void require_shape(const ProblemInstance& instance, const Schedule& schedule)
{
	if (schedule.missions() != instance.mission_count()
	    || schedule.slots() != static_cast<std::size_t>(instance.slots())) {
		std::ostringstream os;
		os << "schedule is " << schedule.missions() << "x" << schedule.slots() << ", instance needs "
		   << instance.mission_count() << "x" << instance.slots();
		throw ShapeError(os.str());
	}
}

namespace {

void require_slot(const ProblemInstance& instance, std::size_t slot)
{
	if (slot >= static_cast<std::size_t>(instance.slots()))
		throw RangeError("slot " + std::to_string(slot) + " out of range [0, " + std::to_string(instance.slots())
		                 + ")");
}

} // namespace

double interaction_cost(const ProblemInstance& instance, const Schedule& schedule, std::size_t slot)
{
	require_slot(instance, slot);
	require_shape(instance, schedule);
	const auto& gamma = instance.interaction();
	const std::size_t n = instance.mission_count();
	double cost = 0.0;
	for (std::size_t i = 0; i < n; ++i) {
		if (schedule.at(i, slot) <= 0)
			continue;
		for (std::size_t j = i + 1; j < n; ++j)
			if (schedule.at(j, slot) > 0)
				cost += gamma.at(i, j);
	}
	return cost;
}

double evaluate_usage(const ProblemInstance& instance, const Schedule& schedule, UsageMode mode,
                      std::size_t slot)
{
	require_slot(instance, slot);
	require_shape(instance, schedule);
	double usage = instance.capacity(slot);
	for (std::size_t i = 0; i < instance.mission_count(); ++i)
		usage -= instance.weight(i, mode) * schedule.at(i, slot);
	return usage - interaction_cost(instance, schedule, slot);
}

FeasibilityVerdict check_feasibility(const ProblemInstance& instance, const Schedule& schedule, UsageMode mode)
{
	require_shape(instance, schedule);
	FeasibilityVerdict verdict;
	auto& out = verdict.violations;
	const auto T = static_cast<std::size_t>(instance.slots());

	for (std::size_t i = 0; i < instance.mission_count(); ++i) {
		const MissionSpec& m = instance.mission(i);
		long long total = 0;
		for (std::size_t t = 0; t < T; ++t) {
			const int a = schedule.at(i, t);
			if (a < 0) {
				out.push_back({Violation::Kind::negative, i, t, static_cast<double>(-a)});
				continue;
			}
			if (a > 0 && !m.in_window(static_cast<int>(t)))
				out.push_back({Violation::Kind::window, i, t, static_cast<double>(a)});
			if (a > m.rate_cap)
				out.push_back({Violation::Kind::rate_cap, i, t, static_cast<double>(a - m.rate_cap)});
			total += a;
		}
		if (total > m.total_work)
			out.push_back({Violation::Kind::total_work, i, std::nullopt, static_cast<double>(total - m.total_work)});
	}
	for (std::size_t t = 0; t < T; ++t) {
		const double usage = evaluate_usage(instance, schedule, mode, t);
		if (usage < -kUsageTolerance)
			out.push_back({Violation::Kind::capacity, std::nullopt, t, -usage});
	}
	verdict.feasible = out.empty();
	return verdict;
}

std::vector<bool> mission_success(const ProblemInstance& instance, const Schedule& schedule)
{
	require_shape(instance, schedule);
	std::vector<bool> success(instance.mission_count(), false);
	for (std::size_t i = 0; i < instance.mission_count(); ++i) {
		const MissionSpec& m = instance.mission(i);
		long long done = 0;
		const int end = std::min(m.deadline, instance.slots());
		for (int t = 0; t < end; ++t)
			done += schedule.at(i, static_cast<std::size_t>(t));
		success[i] = done >= m.required_work();
	}
	return success;
}

Objective objective(const ProblemInstance& instance, const Schedule& schedule)
{
	const auto success = mission_success(instance, schedule);
	Objective obj;
	for (std::size_t i = 0; i < success.size(); ++i)
		if (success[i])
			obj.value += instance.mission(i).rating;
	for (std::size_t t = 0; t < static_cast<std::size_t>(instance.slots()); ++t)
		obj.headroom += evaluate_usage(instance, schedule, UsageMode::rated, t);
	return obj;
}

} // namespace swapsched
