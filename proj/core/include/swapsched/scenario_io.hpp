#ifndef SWAPSCHED_SCENARIO_IO_HPP
#define SWAPSCHED_SCENARIO_IO_HPP

// Versioned JSON scenario files.
//
// kind "optimize":
//   grid.slots, platform.capacity[], missions[]{id, release, deadline,
//   total_work, fraction, rate_cap, rating}, interaction.gamma[][] (optional)
// kind "simulate":
//   horizon, policies{admission, assignment}, nodes[]{id, rate,
//   link_latency, zone}, jobs[]{id, arrival, work, deadline{class, tick |
//   weight}, priority, origin}

#include <swapsched/model.hpp>
#include <swapsched/offload_sim.hpp>

#include <filesystem>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace swapsched {

inline constexpr int kSchemaVersion = 1;

enum class ScenarioKind { optimize, simulate };

std::string_view to_string(ScenarioKind kind) noexcept;

struct ScenarioDocument {
	int schema_version = kSchemaVersion;
	ScenarioKind kind = ScenarioKind::optimize;
	std::variant<ProblemInstance, SimScenario> body;

	explicit ScenarioDocument(ProblemInstance instance);
	explicit ScenarioDocument(SimScenario scenario);

	// Throw std::bad_variant_access when the kind does not match.
	const ProblemInstance& instance() const { return std::get<ProblemInstance>(body); }
	const SimScenario& simulation() const { return std::get<SimScenario>(body); }

	bool operator==(const ScenarioDocument&) const = default;
};

// Parses and fully validates. Throws ParseError on malformed text and
// ValidationError (with locators) on unknown schema versions, missing or
// mistyped fields, and model invariant violations.
ScenarioDocument load_scenario(std::string_view text);
ScenarioDocument load_scenario_file(const std::filesystem::path& path);

// Every error and warning for `text`; never throws on bad content.
// A syntax error is reported with an empty locator.
std::vector<Diagnostic> diagnose_scenario(std::string_view text);

// Round-trip exact: load_scenario(save_scenario(d)) == d.
std::string save_scenario(const ScenarioDocument& doc);

} // namespace swapsched

#endif
