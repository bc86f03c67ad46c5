#include "commands.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <thread>

#include "CLI11.hpp"

namespace suspedf::cli {

namespace {

// Wraps a command body, mapping input problems to exit code 2.
template <typename Fn>
int guarded(std::ostream& err, Fn&& body)
{
	try {
		return body();
	} catch (const FormatError& e) {
		err << "error: " << e.what() << "\n";
	} catch (const ModelError& e) {
		err << "error: " << e.what() << "\n";
	} catch (const std::invalid_argument& e) {
		err << "error: " << e.what() << "\n";
	} catch (const std::domain_error& e) {
		err << "error: " << e.what() << "\n";
	}
	return exit_input_error;
}

TimeValue parse_rational_flag(const std::string& flag, const std::string& literal)
{
	try {
		return TimeValue::parse(literal);
	} catch (const ParseError& e) {
		throw std::invalid_argument(flag + ": " + e.what());
	}
}

void write_file(const std::filesystem::path& path, const std::string& text)
{
	std::ofstream f(path, std::ios::binary);
	if (!f)
		throw std::invalid_argument("cannot write " + path.string());
	f << text;
}

void print_report(std::ostream& out, const TestReport& r)
{
	for (const auto& row : r.rows) {
		out << "  k=" << row.k;
		if (r.test == TestKind::devi)
			out << "  B=" << row.blocking << "  B'=" << row.blocking_prime;
		out << "  lhs=" << row.lhs << "  " << (row.pass ? "pass" : "fail") << "\n";
	}
	out << "  overall: " << (r.overall ? "PASS" : "FAIL") << "\n";
}

} // namespace

TaskSet demo_taskset(const TimeValue& epsilon)
{
	return TaskSet::normalize({Task(1, 6, 5, 1), Task(2, 8, epsilon, 0)});
}

std::vector<SuspensionPattern> demo_patterns(const TaskSet& demo)
{
	return {split_pattern(*demo.find(1), 1), split_pattern(*demo.find(2), 0)};
}

int cmd_analyze(const std::string& taskset_path, const std::string& test, std::ostream& out,
                std::ostream& err)
{
	return guarded(err, [&] {
		auto ts = taskset_from_json(read_json_file(taskset_path));
		TestReport report;
		if (test == "devi")
			report = devi_test(ts);
		else if (test == "oblivious")
			report = suspension_oblivious_test(ts);
		else
			throw std::invalid_argument("--test: expected devi or oblivious, got " + test);
		out << report_to_json(report).dump(2) << "\n";
		return report.overall ? exit_ok : exit_negative;
	});
}

int cmd_simulate(const std::string& taskset_path, const std::string& patterns_path,
                 const std::optional<std::string>& horizon, const std::string& on_miss,
                 std::ostream& out, std::ostream& err)
{
	return guarded(err, [&] {
		auto ts = taskset_from_json(read_json_file(taskset_path));
		auto patterns = patterns_from_json(read_json_file(patterns_path));
		SimOptions opts;
		if (horizon)
			opts.horizon = parse_rational_flag("--horizon", *horizon);
		if (on_miss == "continue")
			opts.on_miss = OnMiss::continue_running;
		else if (on_miss != "stop")
			throw std::invalid_argument("--on-miss: expected stop or continue, got " + on_miss);
		auto trace = simulate_edf(ts, patterns, opts);
		out << trace_to_json(trace).dump(2) << "\n";
		return detect_misses(trace).empty() ? exit_ok : exit_negative;
	});
}

int cmd_render(const std::string& trace_path, const std::string& format,
               const std::optional<std::string>& out_path, std::ostream& out, std::ostream& err)
{
	return guarded(err, [&] {
		auto trace = trace_from_json(read_json_file(trace_path));
		std::string drawing;
		if (format == "svg")
			drawing = render_svg(trace);
		else if (format == "ascii")
			drawing = render_ascii(trace);
		else
			throw std::invalid_argument("--format: expected svg or ascii, got " + format);
		if (out_path)
			write_file(*out_path, drawing);
		else
			out << drawing;
		return exit_ok;
	});
}

int cmd_demo(const std::string& epsilon_literal, const std::optional<std::string>& out_dir,
             std::ostream& out, std::ostream& err)
{
	return guarded(err, [&] {
		TimeValue eps = parse_rational_flag("--epsilon", epsilon_literal);
		if (!eps.is_positive())
			throw std::invalid_argument("--epsilon must be > 0, got " + eps.to_string());
		if (eps > TimeValue(1, 3))
			err << "warning: epsilon " << eps << " is outside (0, 1/3]; Devi's verdict may change\n";

		auto ts = demo_taskset(eps);
		auto patterns = demo_patterns(ts);
		auto devi = devi_test(ts);
		auto oblivious = suspension_oblivious_test(ts);

		SimOptions stop_opts{TimeValue{24}, OnMiss::stop};
		auto trace = simulate_edf(ts, patterns, stop_opts);
		auto misses = detect_misses(trace);
		SimOptions cont_opts{TimeValue{24}, OnMiss::continue_running};
		auto full = simulate_edf(ts, patterns, cont_opts);

		out << "task set (epsilon = " << eps << "):\n";
		for (const auto& t : ts)
			out << "  T" << t.id() << ": period=" << t.period() << " wcet=" << t.wcet()
			    << " suspension=" << t.suspension() << "\n";
		out << "pattern of T1: exec 1, susp 1, exec 4\n";
		out << "devi test:\n";
		print_report(out, devi);
		out << "suspension-oblivious test:\n";
		print_report(out, oblivious);
		out << "EDF simulation, synchronous release, horizon 24, stop at first miss:\n";
		if (misses.empty()) {
			out << "  no deadline miss\n";
		} else {
			const auto& m = misses.front();
			out << "  first deadline miss: t=" << m.time << " task " << m.job.task << " job "
			    << m.job.index << "\n";
			for (const auto& e : full.events)
				if (e.kind == EventKind::complete && e.job == m.job)
					out << "  with on-miss=continue that job completes at t=" << e.time << "\n";
		}

		bool counterexample = devi.overall && !misses.empty();
		if (counterexample)
			out << "verdict: counterexample - devi test passes, yet a deadline is missed\n";
		else
			out << "verdict: not a counterexample for this epsilon\n";

		if (out_dir) {
			std::filesystem::path dir(*out_dir);
			std::filesystem::create_directories(dir);
			write_file(dir / "taskset.json", taskset_to_json(ts).dump(2) + "\n");
			write_file(dir / "patterns.json", patterns_to_json(patterns).dump(2) + "\n");
			write_file(dir / "devi_report.json", report_to_json(devi).dump(2) + "\n");
			write_file(dir / "oblivious_report.json", report_to_json(oblivious).dump(2) + "\n");
			write_file(dir / "trace.json", trace_to_json(trace).dump(2) + "\n");
			write_file(dir / "schedule.svg", render_svg(trace));
			out << "wrote taskset.json patterns.json devi_report.json oblivious_report.json "
			       "trace.json schedule.svg to "
			    << dir.string() << "\n";
		}
		return misses.empty() ? exit_ok : exit_negative;
	});
}

int cmd_search(const std::string& grid_path, std::optional<std::size_t> max_found,
               std::optional<double> time_budget_seconds, unsigned threads, bool quiet,
               std::ostream& out, std::ostream& err)
{
	return guarded(err, [&] {
		auto grid = gridspec_from_json(read_json_file(grid_path));
		SearchBudget budget;
		budget.max_found = max_found;
		if (time_budget_seconds) {
			if (*time_budget_seconds <= 0)
				throw std::invalid_argument("--time-budget must be > 0");
			budget.time_limit = std::chrono::duration<double>(*time_budget_seconds);
		}
		SearchOptions options;
		options.threads = threads;
		if (!quiet)
			options.progress = [&err](const SearchStats& s) {
				err << "checked=" << s.checked << " passed_devi=" << s.passed_devi
				    << " found=" << s.found << "\n";
			};
		auto result = find_counterexamples(grid, budget, options);
		for (const auto& cx : result.found)
			out << counterexample_to_json(cx).dump() << "\n";
		return result.found.empty() ? exit_negative : exit_ok;
	});
}

int run(std::vector<std::string> args, std::ostream& out, std::ostream& err)
{
	CLI::App app{"Suspension-aware EDF analysis, simulation and counterexample search"};
	app.name("suspedf");
	app.require_subcommand(1);

	std::string taskset, patterns, trace, grid, test = "devi", on_miss = "stop", format;
	std::string epsilon = default_epsilon.to_string();
	std::optional<std::string> horizon, out_path, out_dir;
	std::optional<std::size_t> max_found;
	std::optional<double> time_budget;
	unsigned threads = std::max(1u, std::thread::hardware_concurrency());
	bool quiet = false;

	auto* analyze = app.add_subcommand("analyze", "Run a schedulability test on a task set");
	analyze->add_option("--taskset", taskset, "Task-set JSON file")->required();
	analyze->add_option("--test", test, "devi or oblivious")->check(CLI::IsMember({"devi", "oblivious"}));

	auto* simulate = app.add_subcommand("simulate", "Simulate preemptive EDF and print the trace");
	simulate->add_option("--taskset", taskset, "Task-set JSON file")->required();
	simulate->add_option("--patterns", patterns, "Pattern JSON file")->required();
	simulate->add_option("--horizon", horizon, "Rational horizon (default 2 x hyperperiod)");
	simulate->add_option("--on-miss", on_miss, "stop or continue")->check(CLI::IsMember({"stop", "continue"}));

	auto* render = app.add_subcommand("render", "Draw a trace as a Gantt chart");
	render->add_option("--trace", trace, "Trace JSON file")->required();
	render->add_option("--format", format, "svg or ascii")->required()->check(CLI::IsMember({"svg", "ascii"}));
	render->add_option("--out", out_path, "Output file (default: stdout)");

	auto* demo = app.add_subcommand("demo", "Reproduce the two-task counterexample");
	demo->add_option("--epsilon", epsilon, "Rational wcet of the second task");
	demo->add_option("--out-dir", out_dir, "Directory for JSON artifacts and the SVG chart");

	auto* search = app.add_subcommand("search", "Search a grid for Devi-passing sets that miss");
	search->add_option("--grid", grid, "Grid JSON file")->required();
	search->add_option("--max-found", max_found, "Stop after N counterexamples");
	search->add_option("--time-budget", time_budget, "Stop after SECONDS");
	search->add_option("--threads", threads, "Worker threads")->check(CLI::PositiveNumber);
	search->add_flag("--quiet", quiet, "No progress lines on stderr");

	std::reverse(args.begin(), args.end());
	try {
		app.parse(args);
	} catch (const CLI::ParseError& e) {
		int code = app.exit(e, out, err);
		return code == 0 ? exit_ok : exit_input_error;
	}

	if (*analyze)
		return cmd_analyze(taskset, test, out, err);
	if (*simulate)
		return cmd_simulate(taskset, patterns, horizon, on_miss, out, err);
	if (*render)
		return cmd_render(trace, format, out_path, out, err);
	if (*demo)
		return cmd_demo(epsilon, out_dir, out, err);
	return cmd_search(grid, max_found, time_budget, threads, quiet, out, err);
}

} // namespace suspedf::cli
