// swapsched: solve, compare and simulate scenario files from the shell.
//
// Exit codes: 0 success, 1 data / validation / resource-limit failure,
// 2 usage error.

#include <swapsched/errors.hpp>
#include <swapsched/generator.hpp>
#include <swapsched/offload_sim.hpp>
#include <swapsched/report_io.hpp>
#include <swapsched/scenario_io.hpp>
#include <swapsched/solvers.hpp>

#include <CLI11.hpp>

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

namespace {

using namespace swapsched;

constexpr int kExitOk = 0;
constexpr int kExitData = 1;
constexpr int kExitUsage = 2;

// Thrown for bad flag values that CLI11 cannot check on its own.
struct UsageError : std::runtime_error {
	using std::runtime_error::runtime_error;
};

struct SolverChoice {
	bool anytime = false;
	InnerSolver inner = InnerSolver::greedy;

	std::string name() const
	{
		return anytime ? "anytime:" + std::string(to_string(inner)) : std::string(to_string(inner));
	}
};

SolverChoice parse_solver(const std::string& text)
{
	SolverChoice c;
	std::string inner = text;
	if (text.rfind("anytime:", 0) == 0) {
		c.anytime = true;
		inner = text.substr(8);
	}
	try {
		c.inner = parse_inner_solver(inner);
	}
	catch (const DomainError&) {
		throw UsageError("unknown solver '" + text + "' (expected greedy, local, ga, exact or anytime:<one of those>)");
	}
	return c;
}

UsageMode parse_mode(const std::string& text)
{
	try {
		return parse_usage_mode(text);
	}
	catch (const DomainError& e) {
		throw UsageError(e.what());
	}
}

SolveReport run_solver(const SolverChoice& c, const ProblemInstance& inst, UsageMode mode, double budget_ms,
                       std::uint64_t seed)
{
	if (c.anytime)
		return solve_anytime(c.inner, inst, mode, budget_ms, seed).report;
	switch (c.inner) {
	case InnerSolver::greedy: return solve_greedy(inst, mode);
	case InnerSolver::local: return solve_local_search(inst, mode, budget_ms, seed);
	case InnerSolver::ga: return solve_genetic(inst, mode, GaParams{}, seed);
	case InnerSolver::exact: return solve_exact(inst, mode);
	}
	throw UsageError("unreachable solver");
}

void write_text(const std::string& path, const std::string& text)
{
	if (path.empty() || path == "-") {
		std::cout << text;
		return;
	}
	std::ofstream out(path, std::ios::binary);
	if (!out)
		throw ParseError("cannot write '" + path + "'");
	out << text;
	if (!out)
		throw ParseError("write to '" + path + "' failed");
}

ScenarioDocument load(const std::string& path)
{
	ScenarioDocument doc = load_scenario_file(path);
	if (doc.kind == ScenarioKind::optimize)
		for (const auto& w : doc.instance().warnings())
			std::cerr << to_string(w) << '\n';
	return doc;
}

const ProblemInstance& require_optimize(const ScenarioDocument& doc, const std::string& path)
{
	if (doc.kind != ScenarioKind::optimize)
		throw UsageError("'" + path + "' is a simulate scenario; use the simulate command");
	return doc.instance();
}

std::string summary(const SolveReport& r)
{
	char buf[256];
	std::snprintf(buf, sizeof buf, "solver=%s value=%s ratio=%s abandoned=%zu elapsed_ms=%s", r.solver.c_str(),
	              format_real(r.value).c_str(), format_real(r.ratio).c_str(), r.abandoned(),
	              format_real(r.elapsed_ms).c_str());
	return buf;
}

struct Options {
	std::string scenario;
	std::string solver = "greedy";
	std::string mode = "rated";
	double budget_ms = 1000.0;
	std::uint64_t seed = 0;
	std::string out;

	std::vector<std::string> solvers{"greedy", "local", "ga", "exact"};
	std::vector<double> budgets{100.0};
	std::string csv;

	std::string policies;
	std::optional<int> ticks;
	std::string log;

	std::string kind = "optimize";
	std::size_t missions = 3;
	int slots = 6;
	double density = 0.0;
	std::size_t nodes = 3;
	std::size_t jobs = 20;
};

int cmd_solve(const Options& o)
{
	const SolverChoice choice = parse_solver(o.solver);
	const UsageMode mode = parse_mode(o.mode);
	const ScenarioDocument doc = load(o.scenario);
	const auto& inst = require_optimize(doc, o.scenario);
	const SolveReport r = run_solver(choice, inst, mode, o.budget_ms, o.seed);
	write_text(o.out, save_report(r));
	// Keep stdout parseable when the report itself goes there.
	(o.out.empty() || o.out == "-" ? std::cerr : std::cout) << summary(r) << '\n';
	return kExitOk;
}

int cmd_compare(const Options& o)
{
	std::vector<SolverChoice> choices;
	for (const auto& s : o.solvers)
		choices.push_back(parse_solver(s));
	const UsageMode mode = parse_mode(o.mode);
	for (double b : o.budgets)
		if (!(b > 0.0))
			throw UsageError("budgets must be positive");
	const ScenarioDocument doc = load(o.scenario);
	const auto& inst = require_optimize(doc, o.scenario);

	struct Row {
		std::string solver;
		double budget;
		SolveReport report;
	};
	std::vector<Row> rows;
	for (const auto& c : choices)
		for (double b : o.budgets)
			rows.push_back({c.name(), b, run_solver(c, inst, mode, b, o.seed)});
	std::stable_sort(rows.begin(), rows.end(), [](const Row& a, const Row& b) {
		return a.solver != b.solver ? a.solver < b.solver : a.budget < b.budget;
	});

	std::string csv = "solver,budget_ms,value,ratio,elapsed_ms,abandoned\n";
	for (const Row& r : rows) {
		csv += r.solver + ',' + format_real(r.budget) + ',' + format_real(r.report.value) + ','
		       + format_real(r.report.ratio) + ',' + format_real(r.report.elapsed_ms) + ','
		       + std::to_string(r.report.abandoned()) + '\n';
	}
	write_text(o.csv, csv);
	return kExitOk;
}

int cmd_simulate(const Options& o)
{
	const ScenarioDocument doc = load(o.scenario);
	if (doc.kind != ScenarioKind::simulate)
		throw UsageError("'" + o.scenario + "' is an optimize scenario; use the solve command");
	SimScenario sc = doc.simulation();
	if (!o.policies.empty()) {
		const auto comma = o.policies.find(',');
		try {
			sc.admission = parse_admission_policy(o.policies.substr(0, comma));
			if (comma != std::string::npos)
				sc.assignment = parse_assignment_policy(o.policies.substr(comma + 1));
		}
		catch (const DomainError& e) {
			throw UsageError(e.what());
		}
	}
	if (o.ticks) {
		if (*o.ticks < 1)
			throw UsageError("--ticks must be >= 1");
		sc.horizon = *o.ticks;
	}
	const SimResult r = run_simulation(sc, o.seed);
	if (!o.log.empty())
		write_text(o.log, format_event_log(r.log));
	write_text(o.out, save_report(r.metrics));
	return kExitOk;
}

int cmd_gen(const Options& o)
{
	try {
		if (o.kind == "optimize") {
			GenParams p;
			p.missions = o.missions;
			p.slots = o.slots;
			p.density = o.density;
			p.seed = o.seed;
			write_text(o.out, save_scenario(ScenarioDocument(generate_instance(p))));
		}
		else if (o.kind == "simulate") {
			SimGenParams p;
			p.nodes = o.nodes;
			p.jobs = o.jobs;
			if (o.ticks)
				p.horizon = *o.ticks;
			p.seed = o.seed;
			write_text(o.out, save_scenario(ScenarioDocument(generate_sim_scenario(p))));
		}
		else {
			throw UsageError("--kind must be optimize or simulate");
		}
	}
	catch (const DomainError& e) {
		throw UsageError(e.what());
	}
	return kExitOk;
}

int cmd_validate(const Options& o)
{
	std::ifstream in(o.scenario, std::ios::binary);
	if (!in)
		throw ParseError("cannot read scenario file '" + o.scenario + "'");
	const std::string text{std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
	const auto diags = diagnose_scenario(text);
	bool failed = false;
	for (const auto& d : diags) {
		std::cout << to_string(d) << '\n';
		failed = failed || d.severity == Diagnostic::Severity::error;
	}
	if (!failed)
		std::cout << "ok\n";
	return failed ? kExitData : kExitOk;
}

} // namespace

int main(int argc, char** argv)
{
	CLI::App app{"Mission scheduling and edge off-load simulation"};
	app.require_subcommand(1);
	Options o;

	auto* solve = app.add_subcommand("solve", "Solve an optimize scenario with one solver");
	solve->add_option("--scenario", o.scenario, "Scenario file")->required();
	solve->add_option("--solver", o.solver, "greedy | local | ga | exact | anytime:<inner>");
	solve->add_option("--mode", o.mode, "raw | rated");
	solve->add_option("--budget-ms", o.budget_ms, "Wall-clock budget for local and anytime solvers")
		->check(CLI::PositiveNumber);
	solve->add_option("--seed", o.seed, "RNG seed");
	solve->add_option("--out", o.out, "Report file (default stdout)");

	auto* compare = app.add_subcommand("compare", "Run several solvers and budgets, emit CSV");
	compare->add_option("--scenario", o.scenario, "Scenario file")->required();
	compare->add_option("--solvers", o.solvers, "Comma-separated solver list")->delimiter(',');
	compare->add_option("--budgets", o.budgets, "Comma-separated budgets in ms")->delimiter(',');
	compare->add_option("--mode", o.mode, "raw | rated");
	compare->add_option("--seed", o.seed, "RNG seed");
	compare->add_option("--csv", o.csv, "CSV output file (default stdout)");

	auto* simulate = app.add_subcommand("simulate", "Run the off-load simulator");
	simulate->add_option("--scenario", o.scenario, "Scenario file")->required();
	simulate->add_option("--policies", o.policies, "admission[,assignment] override");
	simulate->add_option("--ticks", o.ticks, "Override the horizon");
	simulate->add_option("--seed", o.seed, "Seed (recorded, does not change the event order)");
	simulate->add_option("--out", o.out, "Metrics report file (default stdout)");
	simulate->add_option("--log", o.log, "Event log file");

	auto* gen = app.add_subcommand("gen", "Generate a random scenario");
	gen->add_option("--kind", o.kind, "optimize | simulate");
	gen->add_option("--missions", o.missions, "Mission count");
	gen->add_option("--slots", o.slots, "Slot count");
	gen->add_option("--density", o.density, "Interaction density in [0, 1]");
	gen->add_option("--nodes", o.nodes, "Node count");
	gen->add_option("--jobs", o.jobs, "Job count");
	gen->add_option("--ticks", o.ticks, "Simulation horizon");
	gen->add_option("--seed", o.seed, "RNG seed");
	gen->add_option("--out", o.out, "Output file (default stdout)");

	auto* validate = app.add_subcommand("validate", "Check a scenario file and list diagnostics");
	validate->add_option("--scenario", o.scenario, "Scenario file")->required();

	try {
		app.parse(argc, argv);
	}
	catch (const CLI::ParseError& e) {
		const int code = app.exit(e);
		return code == 0 ? kExitOk : kExitUsage;
	}

	try {
		if (*solve)
			return cmd_solve(o);
		if (*compare)
			return cmd_compare(o);
		if (*simulate)
			return cmd_simulate(o);
		if (*gen)
			return cmd_gen(o);
		return cmd_validate(o);
	}
	catch (const UsageError& e) {
		std::cerr << "usage error: " << e.what() << '\n';
		return kExitUsage;
	}
	catch (const ValidationError& e) {
		for (const auto& d : e.issues())
			std::cerr << to_string(d) << '\n';
		return kExitData;
	}
	catch (const std::exception& e) {
		std::cerr << "error: " << e.what() << '\n';
		return kExitData;
	}
}
