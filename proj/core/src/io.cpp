#include "suspedf/io.hpp"

#include <fstream>
#include <sstream>

namespace suspedf {

namespace {

[[noreturn]] void bad(const std::string& path, const std::string& what)
{
	throw FormatError(path + ": " + what);
}

const json& field(const json& obj, const char* name, const std::string& path)
{
	if (!obj.is_object())
		bad(path, "expected an object");
	auto it = obj.find(name);
	if (it == obj.end())
		bad(path + "." + name, "missing field");
	return *it;
}

const json& array_field(const json& obj, const char* name, const std::string& path)
{
	const json& a = field(obj, name, path);
	if (!a.is_array())
		bad(path + "." + name, "expected an array");
	return a;
}

long long integer_from_json(const json& j, const std::string& path)
{
	if (!j.is_number_integer())
		bad(path, "expected an integer");
	return j.get<long long>();
}

std::size_t index_from_json(const json& j, const std::string& path)
{
	long long v = integer_from_json(j, path);
	if (v < 0)
		bad(path, "expected a nonnegative integer");
	return static_cast<std::size_t>(v);
}

bool bool_from_json(const json& j, const std::string& path)
{
	if (!j.is_boolean())
		bad(path, "expected a boolean");
	return j.get<bool>();
}

std::string string_from_json(const json& j, const std::string& path)
{
	if (!j.is_string())
		bad(path, "expected a string");
	return j.get<std::string>();
}

std::vector<TimeValue> rationals_from_json(const json& j, const std::string& path)
{
	if (!j.is_array())
		bad(path, "expected an array");
	std::vector<TimeValue> out;
	for (std::size_t i = 0; i < j.size(); ++i)
		out.push_back(rational_from_json(j[i], path + "[" + std::to_string(i) + "]"));
	return out;
}

json rationals_to_json(const std::vector<TimeValue>& vs)
{
	json a = json::array();
	for (const auto& v : vs)
		a.push_back(rational_to_json(v));
	return a;
}

template <typename Fn>
auto with_path(const std::string& path, Fn&& fn) -> decltype(fn())
{
	try {
		return fn();
	} catch (const FormatError&) {
		throw;
	} catch (const std::invalid_argument& e) {
		bad(path, e.what());
	}
}

} // namespace

TimeValue rational_from_json(const json& j, const std::string& path)
{
	if (j.is_number_float())
		bad(path, "floating-point values are not accepted; use \"p/q\"");
	if (j.is_number_integer())
		return TimeValue(j.get<std::int64_t>());
	if (!j.is_string())
		bad(path, "expected a rational literal string");
	try {
		return TimeValue::parse(j.get<std::string>());
	} catch (const ParseError& e) {
		bad(path, e.what());
	}
}

json rational_to_json(const TimeValue& t)
{
	return t.to_string();
}

json taskset_to_json(const TaskSet& ts)
{
	json tasks = json::array();
	for (const auto& t : ts)
		tasks.push_back({{"id", t.id()},
		                 {"period", rational_to_json(t.period())},
		                 {"wcet", rational_to_json(t.wcet())},
		                 {"suspension", rational_to_json(t.suspension())}});
	return {{"tasks", tasks}};
}

TaskSet taskset_from_json(const json& j)
{
	const json& arr = array_field(j, "tasks", "taskset");
	std::vector<Task> tasks;
	for (std::size_t i = 0; i < arr.size(); ++i) {
		std::string path = "tasks[" + std::to_string(i) + "]";
		const json& t = arr[i];
		auto id = integer_from_json(field(t, "id", path), path + ".id");
		auto period = rational_from_json(field(t, "period", path), path + ".period");
		auto wcet = rational_from_json(field(t, "wcet", path), path + ".wcet");
		auto susp = rational_from_json(field(t, "suspension", path), path + ".suspension");
		tasks.push_back(with_path(path, [&] {
			return Task(static_cast<TaskId>(id), period, wcet, susp);
		}));
	}
	return with_path("tasks", [&] { return TaskSet::normalize(std::move(tasks)); });
}

json pattern_to_json(const SuspensionPattern& p)
{
	json segs = json::array();
	for (const auto& s : p.segments())
		segs.push_back({{"kind", s.kind == SegmentKind::execute ? "exec" : "susp"},
		                {"dur", rational_to_json(s.duration)}});
	return {{"task_id", p.task_id()}, {"segments", segs}};
}

SuspensionPattern pattern_from_json(const json& j, const std::string& path)
{
	auto id = integer_from_json(field(j, "task_id", path), path + ".task_id");
	const json& arr = array_field(j, "segments", path);
	std::vector<Segment> segs;
	for (std::size_t i = 0; i < arr.size(); ++i) {
		std::string sp = path + ".segments[" + std::to_string(i) + "]";
		auto kind = string_from_json(field(arr[i], "kind", sp), sp + ".kind");
		SegmentKind k;
		if (kind == "exec")
			k = SegmentKind::execute;
		else if (kind == "susp")
			k = SegmentKind::suspend;
		else
			bad(sp + ".kind", "expected \"exec\" or \"susp\", got \"" + kind + "\"");
		segs.push_back({k, rational_from_json(field(arr[i], "dur", sp), sp + ".dur")});
	}
	return with_path(path, [&] { return SuspensionPattern(static_cast<TaskId>(id), segs); });
}

json patterns_to_json(const std::vector<SuspensionPattern>& ps)
{
	json arr = json::array();
	for (const auto& p : ps)
		arr.push_back(pattern_to_json(p));
	return {{"patterns", arr}};
}

std::vector<SuspensionPattern> patterns_from_json(const json& j)
{
	const json* arr = &j;
	if (j.is_object() && j.contains("patterns"))
		arr = &array_field(j, "patterns", "document");
	else if (j.is_object())
		return {pattern_from_json(j)};
	if (!arr->is_array())
		bad("patterns", "expected an array of patterns");
	std::vector<SuspensionPattern> out;
	for (std::size_t i = 0; i < arr->size(); ++i)
		out.push_back(pattern_from_json((*arr)[i], "patterns[" + std::to_string(i) + "]"));
	return out;
}

json report_to_json(const TestReport& r)
{
	json rows = json::array();
	for (const auto& row : r.rows)
		rows.push_back({{"k", row.k},
		                {"B", rational_to_json(row.blocking)},
		                {"Bprime", rational_to_json(row.blocking_prime)},
		                {"lhs", rational_to_json(row.lhs)},
		                {"pass", row.pass}});
	return {{"test", r.test == TestKind::devi ? "devi" : "oblivious"},
	        {"rows", rows},
	        {"overall", r.overall}};
}

TestReport report_from_json(const json& j)
{
	auto test = string_from_json(field(j, "test", "report"), "report.test");
	TestReport r;
	if (test == "devi")
		r.test = TestKind::devi;
	else if (test == "oblivious")
		r.test = TestKind::suspension_oblivious;
	else
		bad("report.test", "unknown test \"" + test + "\"");
	const json& rows = array_field(j, "rows", "report");
	for (std::size_t i = 0; i < rows.size(); ++i) {
		std::string p = "report.rows[" + std::to_string(i) + "]";
		const json& row = rows[i];
		r.rows.push_back({index_from_json(field(row, "k", p), p + ".k"),
		                  rational_from_json(field(row, "B", p), p + ".B"),
		                  rational_from_json(field(row, "Bprime", p), p + ".Bprime"),
		                  rational_from_json(field(row, "lhs", p), p + ".lhs"),
		                  bool_from_json(field(row, "pass", p), p + ".pass")});
	}
	r.overall = bool_from_json(field(j, "overall", "report"), "report.overall");
	return r;
}

json event_to_json(const TraceEvent& e)
{
	return {{"t", rational_to_json(e.time)},
	        {"kind", to_string(e.kind)},
	        {"task", e.job.task},
	        {"job", e.job.index}};
}

TraceEvent event_from_json(const json& j, const std::string& path)
{
	auto kind = string_from_json(field(j, "kind", path), path + ".kind");
	EventKind k;
	if (kind == "release")
		k = EventKind::release;
	else if (kind == "complete")
		k = EventKind::complete;
	else if (kind == "miss")
		k = EventKind::miss;
	else
		bad(path + ".kind", "unknown event kind \"" + kind + "\"");
	return {k, rational_from_json(field(j, "t", path), path + ".t"),
	        {static_cast<TaskId>(integer_from_json(field(j, "task", path), path + ".task")),
	         index_from_json(field(j, "job", path), path + ".job")}};
}

json trace_to_json(const ScheduleTrace& t)
{
	json intervals = json::array();
	for (const auto& iv : t.intervals) {
		json o = {{"s", rational_to_json(iv.start)}, {"e", rational_to_json(iv.end)}};
		if (iv.job) {
			o["kind"] = "exec";
			o["task"] = iv.job->task;
			o["job"] = iv.job->index;
		} else {
			o["kind"] = "idle";
		}
		intervals.push_back(std::move(o));
	}
	json susp = json::array();
	for (const auto& w : t.suspensions)
		susp.push_back({{"s", rational_to_json(w.start)},
		                {"e", rational_to_json(w.end)},
		                {"task", w.job.task},
		                {"job", w.job.index}});
	json events = json::array();
	for (const auto& e : t.events)
		events.push_back(event_to_json(e));
	return {{"horizon", rational_to_json(t.horizon)},
	        {"intervals", intervals},
	        {"suspensions", susp},
	        {"events", events}};
}

ScheduleTrace trace_from_json(const json& j)
{
	ScheduleTrace t;
	t.horizon = rational_from_json(field(j, "horizon", "trace"), "trace.horizon");
	const json& ivs = array_field(j, "intervals", "trace");
	for (std::size_t i = 0; i < ivs.size(); ++i) {
		std::string p = "trace.intervals[" + std::to_string(i) + "]";
		ScheduleInterval iv{rational_from_json(field(ivs[i], "s", p), p + ".s"),
		                    rational_from_json(field(ivs[i], "e", p), p + ".e"),
		                    std::nullopt};
		auto kind = string_from_json(field(ivs[i], "kind", p), p + ".kind");
		if (kind == "exec")
			iv.job = JobRef{static_cast<TaskId>(integer_from_json(field(ivs[i], "task", p), p + ".task")),
			                index_from_json(field(ivs[i], "job", p), p + ".job")};
		else if (kind != "idle")
			bad(p + ".kind", "expected \"exec\" or \"idle\", got \"" + kind + "\"");
		t.intervals.push_back(std::move(iv));
	}
	const json& sus = array_field(j, "suspensions", "trace");
	for (std::size_t i = 0; i < sus.size(); ++i) {
		std::string p = "trace.suspensions[" + std::to_string(i) + "]";
		t.suspensions.push_back(
			{rational_from_json(field(sus[i], "s", p), p + ".s"),
		     rational_from_json(field(sus[i], "e", p), p + ".e"),
		     {static_cast<TaskId>(integer_from_json(field(sus[i], "task", p), p + ".task")),
		      index_from_json(field(sus[i], "job", p), p + ".job")}});
	}
	const json& evs = array_field(j, "events", "trace");
	for (std::size_t i = 0; i < evs.size(); ++i)
		t.events.push_back(event_from_json(evs[i], "trace.events[" + std::to_string(i) + "]"));
	return t;
}

json gridspec_to_json(const GridSpec& g)
{
	json o = {{"n_tasks", g.n_tasks},
	          {"periods", rationals_to_json(g.period_choices)},
	          {"wcet_step", rational_to_json(g.wcet_step)},
	          {"prefix_step", rational_to_json(g.pattern_prefix_step)},
	          {"on_miss", g.on_miss == OnMiss::stop ? "stop" : "continue"}};
	if (!g.suspension_choices.empty())
		o["suspensions"] = rationals_to_json(g.suspension_choices);
	if (g.suspension_step)
		o["suspension_step"] = rational_to_json(*g.suspension_step);
	if (g.horizon)
		o["horizon"] = rational_to_json(*g.horizon);
	return o;
}

GridSpec gridspec_from_json(const json& j)
{
	if (!j.is_object())
		bad("grid", "expected an object");
	GridSpec g;
	if (j.contains("n_tasks"))
		g.n_tasks = index_from_json(j["n_tasks"], "grid.n_tasks");
	g.period_choices = rationals_from_json(field(j, "periods", "grid"), "grid.periods");
	g.wcet_step = rational_from_json(field(j, "wcet_step", "grid"), "grid.wcet_step");
	g.pattern_prefix_step = rational_from_json(field(j, "prefix_step", "grid"), "grid.prefix_step");
	if (j.contains("suspensions"))
		g.suspension_choices = rationals_from_json(j["suspensions"], "grid.suspensions");
	if (j.contains("suspension_step"))
		g.suspension_step = rational_from_json(j["suspension_step"], "grid.suspension_step");
	if (j.contains("horizon"))
		g.horizon = rational_from_json(j["horizon"], "grid.horizon");
	if (j.contains("on_miss")) {
		auto m = string_from_json(j["on_miss"], "grid.on_miss");
		if (m == "stop")
			g.on_miss = OnMiss::stop;
		else if (m == "continue")
			g.on_miss = OnMiss::continue_running;
		else
			bad("grid.on_miss", "expected \"stop\" or \"continue\"");
	}
	with_path("grid", [&] {
		g.validate();
		return 0;
	});
	return g;
}

json counterexample_to_json(const Counterexample& cx)
{
	return {{"taskset", taskset_to_json(cx.taskset)},
	        {"patterns", patterns_to_json(cx.patterns)["patterns"]},
	        {"devi_report", report_to_json(cx.devi_report)},
	        {"trace", trace_to_json(cx.trace)},
	        {"first_miss", event_to_json(cx.first_miss)}};
}

Counterexample counterexample_from_json(const json& j)
{
	return Counterexample{taskset_from_json(field(j, "taskset", "counterexample")),
	                      patterns_from_json(field(j, "patterns", "counterexample")),
	                      report_from_json(field(j, "devi_report", "counterexample")),
	                      trace_from_json(field(j, "trace", "counterexample")),
	                      event_from_json(field(j, "first_miss", "counterexample"),
	                                      "counterexample.first_miss")};
}

json parse_document(const std::string& text, const std::string& source)
{
	try {
		return json::parse(text);
	} catch (const json::parse_error& e) {
		throw FormatError(source + ": invalid JSON: " + e.what());
	}
}

json read_json_file(const std::string& path)
{
	std::ifstream in(path);
	if (!in)
		throw FormatError(path + ": cannot open file");
	std::ostringstream buf;
	buf << in.rdbuf();
	return parse_document(buf.str(), path);
}

} // namespace suspedf
