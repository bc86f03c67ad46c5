// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit if any fails.

#include <chrono>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "commands.hpp"
#include "oracles.hpp"

using namespace suspedf;
using Clock = std::chrono::steady_clock;

namespace {

struct Outcome
{
	bool pass = true;
	std::string detail;

	void require(bool cond, const std::string& what)
	{
		if (!cond && pass) {
			pass = false;
			detail = what;
		}
	}
};

struct Criterion
{
	std::string id;
	std::string title;
	double time_limit_s;
	std::function<Outcome()> body;
};

TaskSet two_task_set(const TimeValue& eps)
{
	return cli::demo_taskset(eps);
}

Outcome devi_exactness()
{
	Outcome o;
	auto r = devi_test(two_task_set(TimeValue(1, 4)));
	o.require(r.rows.size() == 2, "expected two rows");
	if (!o.pass)
		return o;
	o.require(r.rows[0].lhs == TimeValue(1), "k=1 lhs = " + r.rows[0].lhs.to_string());
	o.require(r.rows[0].pass, "k=1 row must pass at equality");
	o.require(r.rows[1].lhs == TimeValue(95, 96), "k=2 lhs = " + r.rows[1].lhs.to_string());
	o.require(r.overall, "overall verdict must be PASS");
	return o;
}

Outcome boundary_sweep()
{
	Outcome o;
	for (TimeValue eps : {TimeValue(1, 100), TimeValue(1, 10), TimeValue(3, 20), TimeValue(1, 3)}) {
		auto r = devi_test(two_task_set(eps));
		auto closed = (TimeValue(23) + TimeValue(3) * eps) / TimeValue(24);
		o.require(r.overall, "eps=" + eps.to_string() + " must PASS");
		o.require(r.rows[1].lhs == closed, "eps=" + eps.to_string() + " k=2 lhs = "
		                                       + r.rows[1].lhs.to_string() + ", expected "
		                                       + closed.to_string());
	}
	auto half = devi_test(two_task_set(TimeValue(1, 2)));
	o.require(!half.overall, "eps=1/2 must FAIL");
	o.require(half.rows[1].lhs == TimeValue(49, 48), "eps=1/2 k=2 lhs = " + half.rows[1].lhs.to_string());
	return o;
}

Outcome figure_reproduction()
{
	Outcome o;
	const TimeValue eps(3, 20);
	auto ts = two_task_set(eps);
	auto ps = cli::demo_patterns(ts);
	auto tr = simulate_edf(ts, ps, {TimeValue(24), OnMiss::stop});

	using Span = std::pair<TimeValue, TimeValue>;
	std::vector<Span> t1, t2, susp;
	for (const auto& iv : tr.intervals)
		if (iv.job)
			(iv.job->task == 1 ? t1 : t2).push_back({iv.start, iv.end});
	for (const auto& w : tr.suspensions)
		susp.push_back({w.start, w.end});

	o.require(t1 == std::vector<Span>{{0, 1}, {2, 6}, {6, 7}, {8, 12},
	                                  {TimeValue(12) + eps, TimeValue(13) + eps},
	                                  {TimeValue(14) + eps, 18}},
	          "tau_1 execution intervals differ");
	o.require(t2 == std::vector<Span>{{1, TimeValue(1) + eps}, {12, TimeValue(12) + eps}},
	          "tau_2 execution intervals differ");
	o.require(susp == std::vector<Span>{{1, 2}, {7, 8}, {TimeValue(13) + eps, TimeValue(14) + eps}},
	          "suspension windows differ");
	auto misses = detect_misses(tr);
	o.require(misses.size() == 1, "expected exactly one miss");
	if (!misses.empty()) {
		o.require(misses[0].time == TimeValue(18), "miss time " + misses[0].time.to_string());
		o.require(misses[0].job == JobRef{1, 2}, "miss must be tau_1's job released at 12");
	}
	o.require(tr.end() == TimeValue(18), "trace must stop at 18");
	o.require(validate_trace(ts, ps, tr).valid, "validator rejects the schedule");

	auto cont = simulate_edf(ts, ps, {TimeValue(24), OnMiss::continue_running});
	bool completed = false;
	for (const auto& e : cont.events)
		if (e.kind == EventKind::complete && e.job == JobRef{1, 2})
			completed = e.time == TimeValue(18) + eps;
	o.require(completed, "with continue, tau_1 job 2 must complete at 18+eps");
	return o;
}

Outcome oblivious_contrast()
{
	Outcome o;
	const TimeValue eps(3, 20);
	auto r = suspension_oblivious_test(two_task_set(eps));
	o.require(!r.overall, "oblivious test must FAIL");
	o.require(r.rows[0].lhs == TimeValue(1) + eps / TimeValue(8),
	          "lhs = " + r.rows[0].lhs.to_string() + ", expected 1 + eps/8");
	return o;
}

Outcome automated_rediscovery()
{
	Outcome o;
	namespace fs = std::filesystem;
	auto dir = fs::temp_directory_path() / "suspedf_acceptance";
	fs::create_directories(dir);
	auto grid = dir / "grid.json";
	std::ofstream(grid) << R"({"n_tasks":2,"periods":["6","8"],"wcet_step":"1/4",)"
	                       R"("suspensions":["0","1"],"prefix_step":"1"})";

	std::ostringstream out, err;
	int code = cli::run({"search", "--grid", grid.string(), "--quiet"}, out, err);
	fs::remove_all(dir);
	o.require(code == cli::exit_ok, "search exit code " + std::to_string(code) + ": " + err.str());

	std::istringstream lines(out.str());
	std::string line;
	std::size_t found = 0, family = 0;
	while (std::getline(lines, line)) {
		auto cx = counterexample_from_json(json::parse(line));
		++found;
		o.require(verify_counterexample(cx), "item " + std::to_string(found) + " fails verification");
		const auto& t = cx.taskset;
		if (t.size() == 2 && t[0].period() == TimeValue(6) && t[0].wcet() == TimeValue(5)
		    && t[0].suspension() == TimeValue(1) && t[1].period() == TimeValue(8)
		    && t[1].suspension().is_zero() && t[1].wcet() <= TimeValue(1, 3))
			++family;
	}
	o.require(found > 0, "no counterexample emitted");
	o.require(family > 0, "no counterexample from the (6,5,1),(8,eps,0) family");
	o.detail = o.pass ? std::to_string(found) + " verified, " + std::to_string(family) + " in the family"
	                  : o.detail;
	return o;
}

Outcome edf_optimality()
{
	Outcome o;
	std::mt19937_64 rng(2024);
	int checked = 0;
	while (checked < 100) {
		auto n = std::uniform_int_distribution<std::size_t>(1, 4)(rng);
		auto ints = oracle::random_int_taskset(rng, n, 12, false);
		std::vector<Task> tasks;
		for (const auto& t : ints)
			tasks.emplace_back(t.id, t.period, t.wcet, 0);
		auto ts = normalize_taskset(tasks);
		if (utilization(ts) > TimeValue(1))
			continue;
		++checked;
		std::vector<SuspensionPattern> ps;
		for (const auto& t : ts)
			ps.push_back(split_pattern(t, 0));
		auto tr = simulate_edf(ts, ps, {hyperperiod(ts), OnMiss::continue_running});
		o.require(detect_misses(tr).empty(), "miss in zero-suspension set #" + std::to_string(checked));
	}
	return o;
}

TaskSet replace(const TaskSet& ts, std::size_t i, const Task& t)
{
	std::vector<Task> tasks(ts.begin(), ts.end());
	tasks[i] = t;
	return normalize_taskset(tasks);
}

Outcome monotonicity()
{
	Outcome o;
	std::mt19937_64 rng(77);
	for (int n = 0; n < 200; ++n) {
		auto ts = oracle::random_rational_taskset(rng, 5);
		auto base = devi_test(ts);
		for (std::size_t i = 0; i < ts.size(); ++i) {
			const Task& t = ts[i];
			auto bump = oracle::random_rational(rng, 8, 5) + TimeValue(1, 101);
			std::vector<TaskSet> variants{
				replace(ts, i, Task(t.id(), t.period(), t.wcet(), t.suspension() + bump))};
			auto room = t.period() - t.wcet();
			if (room.is_positive())
				variants.push_back(replace(ts, i, Task(t.id(), t.period(),
				                                       t.wcet() + room * TimeValue(1, 2), t.suspension())));
			for (const auto& v : variants) {
				auto r = devi_test(v);
				for (std::size_t k = 0; k < ts.size(); ++k)
					o.require(base.rows[k].lhs <= r.rows[k].lhs,
					          "set " + std::to_string(n) + " row " + std::to_string(k + 1) + " decreased");
			}
		}
	}
	return o;
}

// Interval [s, e) of job A moved to a released, unfinished job with a
// later deadline.
bool reassign_to_lower_priority(const TaskSet& ts, ScheduleTrace& tr)
{
	for (auto& iv : tr.intervals) {
		if (!iv.job)
			continue;
		const Task& a = *ts.find(iv.job->task);
		TimeValue a_deadline = a.period() * TimeValue(static_cast<std::int64_t>(iv.job->index + 1));
		for (const auto& e : tr.events) {
			if (e.kind != EventKind::release || e.time > iv.start || e.job == *iv.job)
				continue;
			const Task& b = *ts.find(e.job.task);
			TimeValue b_deadline = e.time + b.period();
			if (b_deadline <= a_deadline)
				continue;
			bool finished = false;
			for (const auto& c : tr.events)
				finished = finished || (c.kind == EventKind::complete && c.job == e.job && c.time <= iv.start);
			if (finished)
				continue;
			iv.job = e.job;
			return true;
		}
	}
	return false;
}

bool shorten_execution(ScheduleTrace& tr)
{
	for (std::size_t i = 0; i < tr.intervals.size(); ++i) {
		auto& iv = tr.intervals[i];
		if (!iv.job)
			continue;
		TimeValue mid = (iv.start + iv.end) / TimeValue(2);
		TimeValue end = iv.end;
		iv.end = mid;
		tr.intervals.insert(tr.intervals.begin() + static_cast<long>(i) + 1,
		                    ScheduleInterval{mid, end, std::nullopt});
		return true;
	}
	return false;
}

bool delete_miss(ScheduleTrace& tr)
{
	for (auto it = tr.events.begin(); it != tr.events.end(); ++it)
		if (it->kind == EventKind::miss) {
			tr.events.erase(it);
			return true;
		}
	return false;
}

Outcome validator_sensitivity()
{
	Outcome o;
	std::mt19937_64 rng(99);
	const std::vector<std::int64_t> periods{4, 5, 6, 8, 10, 12};
	int accepted = 0;
	int attempts = 0;
	while (accepted < 50 && attempts < 5000) {
		++attempts;
		auto n = std::uniform_int_distribution<std::size_t>(2, 3)(rng);
		std::vector<Task> tasks;
		for (std::size_t i = 0; i < n; ++i) {
			TimeValue p(periods[std::uniform_int_distribution<std::size_t>(0, periods.size() - 1)(rng)]);
			TimeValue c = p * TimeValue(std::uniform_int_distribution<std::int64_t>(1, 8)(rng), 16);
			TimeValue s(std::uniform_int_distribution<std::int64_t>(0, 6)(rng), 2);
			tasks.emplace_back(static_cast<TaskId>(i + 1), p, c, s);
		}
		auto ts = normalize_taskset(tasks);
		std::vector<SuspensionPattern> ps;
		for (const auto& t : ts) {
			auto options = enumerate_split_patterns(t, t.wcet() / TimeValue(4));
			ps.push_back(options[std::uniform_int_distribution<std::size_t>(0, options.size() - 1)(rng)]);
		}
		auto tr = simulate_edf(ts, ps, {hyperperiod(ts) * TimeValue(2), OnMiss::continue_running});
		if (detect_misses(tr).empty())
			continue;

		auto reassigned = tr;
		if (!reassign_to_lower_priority(ts, reassigned))
			continue;
		auto shortened = tr;
		shorten_execution(shortened);
		auto deleted = tr;
		delete_miss(deleted);

		++accepted;
		auto tag = " (trace " + std::to_string(accepted) + ")";
		o.require(validate_trace(ts, ps, tr).valid, "original rejected" + tag);
		o.require(!validate_trace(ts, ps, reassigned).valid, "reassignment accepted" + tag);
		o.require(!validate_trace(ts, ps, shortened).valid, "shortened execution accepted" + tag);
		o.require(!validate_trace(ts, ps, deleted).valid, "deleted miss accepted" + tag);
	}
	o.require(accepted == 50, "only " + std::to_string(accepted) + " usable traces generated");
	return o;
}

} // namespace

int main()
{
	std::vector<Criterion> criteria{
		{"AC1", "Devi test exactness on (6,5,1),(8,1/4,0)", 1.0, devi_exactness},
		{"AC2", "boundary sweep over epsilon", 1.0, boundary_sweep},
		{"AC3", "figure schedule reproduction", 1.0, figure_reproduction},
		{"AC4", "suspension-oblivious contrast", 1.0, oblivious_contrast},
		{"AC5", "automated rediscovery by grid search", 300.0, automated_rediscovery},
		{"AC6", "EDF optimality without suspension", 60.0, edf_optimality},
		{"AC7", "monotonicity of Devi's lhs", 60.0, monotonicity},
		{"AC8", "validator sensitivity to mutations", 60.0, validator_sensitivity},
	};

	int failed = 0;
	for (const auto& c : criteria) {
		auto start = Clock::now();
		Outcome o;
		try {
			o = c.body();
		} catch (const std::exception& e) {
			o.pass = false;
			o.detail = std::string("exception: ") + e.what();
		}
		double seconds = std::chrono::duration<double>(Clock::now() - start).count();
		if (seconds >= c.time_limit_s && o.pass) {
			o.pass = false;
			o.detail = "exceeded time limit of " + std::to_string(c.time_limit_s) + " s";
		}
		char timing[32];
		std::snprintf(timing, sizeof timing, "%.3f s", seconds);
		std::cout << (o.pass ? "[PASS] " : "[FAIL] ") << c.id << " " << c.title << " (" << timing << ")";
		if (!o.detail.empty())
			std::cout << " - " << o.detail;
		std::cout << "\n";
		failed += o.pass ? 0 : 1;
	}
	std::cout << (failed == 0 ? "all acceptance criteria passed" : std::to_string(failed) + " criteria failed")
	          << "\n";
	return failed == 0 ? 0 : 1;
}
