#include <swapsched/scenario_io.hpp>

#include "json_emit.hpp"

#include <fstream>
#include <limits>
#include <sstream>

namespace swapsched {

using detail::Json;

std::string_view to_string(ScenarioKind kind) noexcept
{
	return kind == ScenarioKind::optimize ? "optimize" : "simulate";
}

ScenarioDocument::ScenarioDocument(ProblemInstance instance)
: kind(ScenarioKind::optimize)
, body(std::move(instance))
{
}

ScenarioDocument::ScenarioDocument(SimScenario scenario)
: kind(ScenarioKind::simulate)
, body(std::move(scenario))
{
}

namespace {

// Typed field access that records a diagnostic instead of throwing.
class Reader {
public:
	std::vector<Diagnostic> diags;

	void error(std::string loc, std::string msg)
	{
		diags.push_back({Diagnostic::Severity::error, std::move(loc), std::move(msg)});
	}

	bool ok() const
	{
		for (const auto& d : diags)
			if (d.severity == Diagnostic::Severity::error)
				return false;
		return true;
	}

	const Json* field(const Json& obj, const std::string& key, const std::string& loc, bool required = true)
	{
		if (!obj.is_object()) {
			error(loc, "expected an object");
			return nullptr;
		}
		auto it = obj.find(key);
		if (it == obj.end()) {
			if (required)
				error(join(loc, key), "missing field");
			return nullptr;
		}
		return &*it;
	}

	int integer(const Json& obj, const std::string& key, const std::string& loc, int fallback = 0)
	{
		const Json* v = field(obj, key, loc);
		return v ? as_int(*v, join(loc, key), fallback) : fallback;
	}

	int as_int(const Json& v, const std::string& loc, int fallback = 0)
	{
		if (!v.is_number_integer()) {
			error(loc, "expected an integer");
			return fallback;
		}
		if (v.is_number_unsigned()) {
			const auto u = v.get<std::uint64_t>();
			if (u > static_cast<std::uint64_t>(std::numeric_limits<int>::max())) {
				error(loc, "integer out of range");
				return fallback;
			}
			return static_cast<int>(u);
		}
		const auto s = v.get<std::int64_t>();
		if (s < std::numeric_limits<int>::min() || s > std::numeric_limits<int>::max()) {
			error(loc, "integer out of range");
			return fallback;
		}
		return static_cast<int>(s);
	}

	double real(const Json& obj, const std::string& key, const std::string& loc, double fallback = 0.0)
	{
		const Json* v = field(obj, key, loc);
		return v ? as_real(*v, join(loc, key), fallback) : fallback;
	}

	double as_real(const Json& v, const std::string& loc, double fallback = 0.0)
	{
		if (!v.is_number()) {
			error(loc, "expected a number");
			return fallback;
		}
		return v.get<double>();
	}

	std::string text(const Json& obj, const std::string& key, const std::string& loc)
	{
		const Json* v = field(obj, key, loc);
		if (!v)
			return {};
		if (!v->is_string()) {
			error(join(loc, key), "expected a string");
			return {};
		}
		return v->get<std::string>();
	}

	const Json* array(const Json& obj, const std::string& key, const std::string& loc, bool required = true)
	{
		const Json* v = field(obj, key, loc, required);
		if (v && !v->is_array()) {
			error(join(loc, key), "expected an array");
			return nullptr;
		}
		return v;
	}

	static std::string join(const std::string& loc, const std::string& key) { return loc.empty() ? key : loc + "." + key; }
	static std::string index(const std::string& loc, std::size_t i) { return loc + "[" + std::to_string(i) + "]"; }
};

Json parse_json(std::string_view text)
{
	try {
		return Json::parse(text.begin(), text.end());
	}
	catch (const Json::parse_error& e) {
		throw ParseError(std::string("scenario syntax error: ") + e.what());
	}
}

ProblemInstance read_optimize(const Json& root, Reader& rd)
{
	TimeGrid grid;
	if (const Json* g = rd.field(root, "grid", ""))
		grid.slots = rd.integer(*g, "slots", "grid", 1);

	PlatformProfile platform;
	if (const Json* p = rd.field(root, "platform", ""))
		if (const Json* cap = rd.array(*p, "capacity", "platform"))
			for (std::size_t t = 0; t < cap->size(); ++t)
				platform.capacity.push_back(rd.as_real((*cap)[t], Reader::index("platform.capacity", t)));

	std::vector<MissionSpec> missions;
	if (const Json* ms = rd.array(root, "missions", "")) {
		for (std::size_t i = 0; i < ms->size(); ++i) {
			const Json& m = (*ms)[i];
			const std::string loc = Reader::index("missions", i);
			MissionSpec spec;
			spec.id = rd.text(m, "id", loc);
			spec.release = rd.integer(m, "release", loc, 0);
			spec.deadline = rd.integer(m, "deadline", loc, 1);
			spec.total_work = rd.integer(m, "total_work", loc, 1);
			spec.fraction = rd.real(m, "fraction", loc, 1.0);
			spec.rate_cap = rd.integer(m, "rate_cap", loc, 1);
			spec.rating = rd.real(m, "rating", loc, 1.0);
			missions.push_back(std::move(spec));
		}
	}

	const std::size_t n = missions.size();
	InteractionModel interaction(n);
	if (const Json* inter = rd.field(root, "interaction", "", false)) {
		if (const Json* gamma = rd.array(*inter, "gamma", "interaction")) {
			std::vector<std::vector<double>> rows;
			bool square = gamma->size() == n;
			for (std::size_t i = 0; i < gamma->size(); ++i) {
				const Json& row = (*gamma)[i];
				const std::string loc = Reader::index("interaction.gamma", i);
				if (!row.is_array()) {
					rd.error(loc, "expected an array");
					square = false;
					continue;
				}
				if (row.size() != n) {
					rd.error(loc, "has " + std::to_string(row.size()) + " entries, expected " + std::to_string(n));
					square = false;
				}
				std::vector<double> r;
				for (std::size_t j = 0; j < row.size(); ++j)
					r.push_back(rd.as_real(row[j], Reader::index(loc, j)));
				rows.push_back(std::move(r));
			}
			if (!square && gamma->size() != n)
				rd.error("interaction.gamma", "must have " + std::to_string(n) + " rows, got "
				                                  + std::to_string(gamma->size()));
			if (square)
				interaction = InteractionModel(rows);
		}
	}

	if (!rd.ok())
		throw ValidationError(rd.diags);
	for (auto& d : validate_model(grid, missions, platform, interaction))
		rd.diags.push_back(std::move(d));
	if (!rd.ok())
		throw ValidationError(rd.diags);
	return ProblemInstance(grid, std::move(missions), std::move(platform), std::move(interaction));
}

template<class F>
void parse_enum(Reader& rd, const std::string& value, const std::string& loc, F&& parse)
{
	try {
		parse(value);
	}
	catch (const DomainError& e) {
		rd.error(loc, e.what());
	}
}

SimScenario read_simulate(const Json& root, Reader& rd)
{
	SimScenario sc;
	sc.horizon = rd.integer(root, "horizon", "", 1);
	if (const Json* pol = rd.field(root, "policies", "")) {
		const std::string adm = rd.text(*pol, "admission", "policies");
		const std::string asg = rd.text(*pol, "assignment", "policies");
		parse_enum(rd, adm, "policies.admission", [&](const std::string& s) { sc.admission = parse_admission_policy(s); });
		parse_enum(rd, asg, "policies.assignment",
		           [&](const std::string& s) { sc.assignment = parse_assignment_policy(s); });
	}
	if (const Json* nodes = rd.array(root, "nodes", "")) {
		for (std::size_t k = 0; k < nodes->size(); ++k) {
			const Json& n = (*nodes)[k];
			const std::string loc = Reader::index("nodes", k);
			NodeSpec spec;
			spec.id = rd.text(n, "id", loc);
			spec.rate = rd.integer(n, "rate", loc, 1);
			spec.link_latency = rd.integer(n, "link_latency", loc, 0);
			const std::string zone = rd.text(n, "zone", loc);
			parse_enum(rd, zone, loc + ".zone", [&](const std::string& s) { spec.zone = parse_zone(s); });
			sc.nodes.push_back(std::move(spec));
		}
	}
	if (const Json* jobs = rd.array(root, "jobs", "")) {
		for (std::size_t k = 0; k < jobs->size(); ++k) {
			const Json& j = (*jobs)[k];
			const std::string loc = Reader::index("jobs", k);
			JobSpec spec;
			spec.id = rd.text(j, "id", loc);
			spec.arrival = rd.integer(j, "arrival", loc, 0);
			spec.work = rd.integer(j, "work", loc, 1);
			spec.priority_label = rd.integer(j, "priority", loc, 1);
			spec.origin = rd.text(j, "origin", loc);
			if (const Json* d = rd.field(j, "deadline", loc)) {
				const std::string dloc = loc + ".deadline";
				const std::string cls = rd.text(*d, "class", dloc);
				if (cls == "hard")
					spec.deadline = HardDeadline{rd.integer(*d, "tick", dloc, spec.arrival + 1)};
				else if (cls == "flexible")
					spec.deadline = FlexibleDeadline{rd.real(*d, "weight", dloc, 1.0)};
				else if (!cls.empty())
					rd.error(dloc + ".class", "expected hard or flexible, got '" + cls + "'");
			}
			sc.jobs.push_back(std::move(spec));
		}
	}
	if (!rd.ok())
		throw ValidationError(rd.diags);
	for (auto& d : validate_sim_scenario(sc))
		rd.diags.push_back(std::move(d));
	if (!rd.ok())
		throw ValidationError(rd.diags);
	return sc;
}

ScenarioDocument read_document(const Json& root, Reader& rd)
{
	if (!root.is_object()) {
		rd.error("", "scenario must be a JSON object");
		throw ValidationError(rd.diags);
	}
	const int version = rd.integer(root, "schema_version", "", kSchemaVersion);
	const std::string kind = rd.text(root, "kind", "");
	if (!rd.ok())
		throw ValidationError(rd.diags);
	if (version != kSchemaVersion) {
		rd.error("schema_version", "unsupported schema version " + std::to_string(version) + " (supported: "
		                               + std::to_string(kSchemaVersion) + ")");
		throw ValidationError(rd.diags);
	}
	if (kind == "optimize")
		return ScenarioDocument(read_optimize(root, rd));
	if (kind == "simulate")
		return ScenarioDocument(read_simulate(root, rd));
	rd.error("kind", "expected optimize or simulate, got '" + kind + "'");
	throw ValidationError(rd.diags);
}

Json to_json(const ProblemInstance& inst)
{
	Json root = Json::object();
	root["grid"] = {{"slots", inst.slots()}};
	root["platform"] = {{"capacity", inst.platform().capacity}};
	Json missions = Json::array();
	for (const auto& m : inst.missions()) {
		missions.push_back({{"id", m.id},
		                    {"release", m.release},
		                    {"deadline", m.deadline},
		                    {"total_work", m.total_work},
		                    {"fraction", m.fraction},
		                    {"rate_cap", m.rate_cap},
		                    {"rating", m.rating}});
	}
	root["missions"] = std::move(missions);
	root["interaction"] = {{"gamma", inst.interaction().to_matrix()}};
	return root;
}

Json to_json(const SimScenario& sc)
{
	Json root = Json::object();
	root["horizon"] = sc.horizon;
	root["policies"] = {{"admission", std::string(to_string(sc.admission))},
	                    {"assignment", std::string(to_string(sc.assignment))}};
	Json nodes = Json::array();
	for (const auto& n : sc.nodes)
		nodes.push_back({{"id", n.id}, {"rate", n.rate}, {"link_latency", n.link_latency},
		                 {"zone", std::string(to_string(n.zone))}});
	root["nodes"] = std::move(nodes);
	Json jobs = Json::array();
	for (const auto& j : sc.jobs) {
		Json d;
		if (auto h = j.hard_deadline())
			d = {{"class", "hard"}, {"tick", *h}};
		else
			d = {{"class", "flexible"}, {"weight", std::get<FlexibleDeadline>(j.deadline).weight}};
		jobs.push_back({{"id", j.id}, {"arrival", j.arrival}, {"work", j.work}, {"deadline", std::move(d)},
		                {"priority", j.priority_label}, {"origin", j.origin}});
	}
	root["jobs"] = std::move(jobs);
	return root;
}

// Shortest representation that parses back to the same double.
std::string roundtrip_real(double v)
{
	return Json(v).dump();
}

} // namespace

ScenarioDocument load_scenario(std::string_view text)
{
	const Json root = parse_json(text);
	Reader rd;
	return read_document(root, rd);
}

ScenarioDocument load_scenario_file(const std::filesystem::path& path)
{
	std::ifstream in(path, std::ios::binary);
	if (!in)
		throw ParseError("cannot read scenario file '" + path.string() + "'");
	std::ostringstream ss;
	ss << in.rdbuf();
	return load_scenario(ss.str());
}

std::vector<Diagnostic> diagnose_scenario(std::string_view text)
{
	try {
		const ScenarioDocument doc = load_scenario(text);
		if (doc.kind == ScenarioKind::optimize)
			return doc.instance().warnings();
		return {};
	}
	catch (const ParseError& e) {
		return {{Diagnostic::Severity::error, "", e.what()}};
	}
	catch (const ValidationError& e) {
		return e.issues();
	}
}

std::string save_scenario(const ScenarioDocument& doc)
{
	Json root = doc.kind == ScenarioKind::optimize ? to_json(doc.instance()) : to_json(doc.simulation());
	root["schema_version"] = doc.schema_version;
	root["kind"] = std::string(to_string(doc.kind));
	return detail::emit_document(root, roundtrip_real);
}

} // namespace swapsched
