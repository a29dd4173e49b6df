#include <swapsched/report_io.hpp>
#include <swapsched/scenario_io.hpp>

#include "json_emit.hpp"

#include <cmath>
#include <cstdio>

namespace swapsched {

using detail::Json;

std::string format_real(double v)
{
	if (!std::isfinite(v))
		throw DomainError("format_real: non-finite value");
	if (v == 0.0)
		return "0";
	char buf[512];
	std::snprintf(buf, sizeof buf, "%.9g", v);
	std::string s(buf);
	if (s.find_first_of("eE") == std::string::npos)
		return s;

	const int exponent = static_cast<int>(std::floor(std::log10(std::abs(v))));
	const int decimals = std::max(0, 8 - exponent);
	std::snprintf(buf, sizeof buf, "%.*f", decimals, v);
	s = buf;
	if (s.find('.') != std::string::npos) {
		s.erase(s.find_last_not_of('0') + 1);
		if (s.back() == '.')
			s.pop_back();
	}
	return s;
}

namespace {

Json parse_report_json(std::string_view text, std::string_view kind)
{
	Json j;
	try {
		j = Json::parse(text.begin(), text.end());
	}
	catch (const Json::parse_error& e) {
		throw ParseError(std::string("report syntax error: ") + e.what());
	}
	if (!j.is_object() || j.value("kind", "") != kind)
		throw ParseError("expected a " + std::string(kind) + " document");
	if (j.value("schema_version", 0) != kSchemaVersion)
		throw ParseError("unsupported report schema_version");
	return j;
}

template<class T>
T get(const Json& j, const char* key)
{
	try {
		return j.at(key).get<T>();
	}
	catch (const Json::exception& e) {
		throw ParseError(std::string("report field '") + key + "': " + e.what());
	}
}

} // namespace

std::string save_report(const SolveReport& r)
{
	Json j = Json::object();
	j["schema_version"] = kSchemaVersion;
	j["kind"] = "solve_report";
	j["solver"] = r.solver;
	j["seed"] = r.seed;
	j["value"] = r.value;
	j["upper_bound"] = r.upper_bound;
	j["ratio"] = r.ratio;
	j["optimal"] = r.optimal;
	j["abandoned"] = r.abandoned();
	j["iterations"] = r.iterations;
	j["elapsed_ms"] = r.elapsed_ms;
	j["success"] = Json::array();
	for (bool s : r.success)
		j["success"].push_back(s);
	j["schedule"] = r.schedule.to_matrix();
	j["slots"] = r.schedule.slots();
	return detail::emit_document(j, format_real);
}

SolveReport parse_solve_report(std::string_view text)
{
	const Json j = parse_report_json(text, "solve_report");
	SolveReport r;
	r.solver = get<std::string>(j, "solver");
	r.seed = get<std::uint64_t>(j, "seed");
	r.value = get<double>(j, "value");
	r.upper_bound = get<double>(j, "upper_bound");
	r.ratio = get<double>(j, "ratio");
	r.optimal = get<bool>(j, "optimal");
	r.iterations = get<std::uint64_t>(j, "iterations");
	r.elapsed_ms = get<double>(j, "elapsed_ms");
	r.success = get<std::vector<bool>>(j, "success");
	try {
		r.schedule = Schedule::from_matrix(get<std::vector<std::vector<int>>>(j, "schedule"),
		                                   get<std::size_t>(j, "slots"));
	}
	catch (const ShapeError& e) {
		throw ParseError(std::string("report schedule: ") + e.what());
	}
	return r;
}

std::string save_report(const SimMetrics& m)
{
	Json j = Json::object();
	j["schema_version"] = kSchemaVersion;
	j["kind"] = "sim_metrics";
	j["completed"] = m.completed;
	j["failed_deadline"] = m.failed_deadline;
	j["terminated_at_admission"] = m.terminated_at_admission;
	j["offloaded"] = m.offloaded;
	j["in_flight_at_horizon"] = m.in_flight_at_horizon;
	j["total_jobs"] = m.dispositions();
	Json util = Json::object();
	for (const auto& [node, u] : m.utilization)
		util[node] = u;
	j["utilization"] = std::move(util);
	Json resp = Json::object();
	for (const auto& [label, r] : m.mean_response)
		resp[std::to_string(label)] = r;
	j["mean_response"] = std::move(resp);
	return detail::emit_document(j, format_real);
}

SimMetrics parse_sim_metrics(std::string_view text)
{
	const Json j = parse_report_json(text, "sim_metrics");
	SimMetrics m;
	m.completed = get<std::uint64_t>(j, "completed");
	m.failed_deadline = get<std::uint64_t>(j, "failed_deadline");
	m.terminated_at_admission = get<std::uint64_t>(j, "terminated_at_admission");
	m.offloaded = get<std::uint64_t>(j, "offloaded");
	m.in_flight_at_horizon = get<std::uint64_t>(j, "in_flight_at_horizon");
	const Json util = get<Json>(j, "utilization");
	const Json resp = get<Json>(j, "mean_response");
	if (!util.is_object() || !resp.is_object())
		throw ParseError("utilization and mean_response must be objects");
	try {
		for (const auto& [node, u] : util.items())
			m.utilization[node] = u.get<double>();
	}
	catch (const Json::exception& e) {
		throw ParseError(std::string("report field 'utilization': ") + e.what());
	}
	for (const auto& [label, r] : resp.items()) {
		try {
			m.mean_response[std::stoi(label)] = r.get<double>();
		}
		catch (const std::exception&) {
			throw ParseError("mean_response entry '" + label + "' is malformed");
		}
	}
	return m;
}

} // namespace swapsched
