#include "suspedf/validator.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>

namespace suspedf {

namespace {

std::string describe(const JobRef& j)
{
	return "task " + std::to_string(j.task) + " job " + std::to_string(j.index);
}

struct Piece
{
	TimeValue start;
	TimeValue end;
};

struct Timeline
{
	JobRef ref;
	const Task* task = nullptr;
	TimeValue release;
	TimeValue deadline;
	std::vector<Piece> executed;
	std::vector<Piece> suspended; // unclipped
	std::optional<TimeValue> completion;
	TimeValue executed_by_end;

	bool suspended_at(const TimeValue& t) const
	{
		for (const auto& w : suspended)
			if (w.start <= t && t < w.end)
				return true;
		return false;
	}

	bool ready_at(const TimeValue& t) const
	{
		if (t < release)
			return false;
		if (completion && *completion <= t)
			return false;
		return !suspended_at(t);
	}
};

struct Violation
{
	TraceVerdict verdict;
};

[[noreturn]] void fail(std::string what, std::optional<TimeValue> at = std::nullopt)
{
	throw Violation{TraceVerdict::violation(std::move(what), std::move(at))};
}

void check_structure(const ScheduleTrace& trace)
{
	if (!trace.horizon.is_positive())
		fail("horizon must be > 0");
	if (trace.intervals.empty())
		fail("trace has no intervals");
	TimeValue cursor;
	for (const auto& iv : trace.intervals) {
		if (iv.start != cursor)
			fail(iv.start < cursor ? "overlapping intervals" : "gap between intervals", cursor);
		if (!(iv.start < iv.end))
			fail("interval with start >= end", iv.start);
		cursor = iv.end;
	}
	if (cursor > trace.horizon)
		fail("trace extends past its horizon", trace.horizon);
}

// Replays the pattern against the job's own execution intervals.
void rebuild(Timeline& job, const SuspensionPattern& pattern, const TimeValue& trace_end)
{
	const auto& pieces = job.executed;
	for (const auto& p : pieces)
		if (p.start < job.release)
			fail(describe(job.ref) + " executes before its release", p.start);

	std::size_t next_piece = 0;
	TimeValue used_in_piece; // consumed from pieces[next_piece]
	TimeValue now = job.release;
	TimeValue executed;
	auto segs = pattern.segments();

	for (std::size_t s = 0; s < segs.size() && executed != job.task->wcet(); ++s) {
		const Segment& seg = segs[s];
		if (seg.kind == SegmentKind::suspend) {
			Piece window{now, now + seg.duration};
			job.suspended.push_back(window);
			if (next_piece < pieces.size()) {
				TimeValue resume = pieces[next_piece].start + used_in_piece;
				if (resume < window.end)
					fail(describe(job.ref) + " executes while suspended", resume);
			}
			now = window.end;
			if (now > trace_end)
				break;
			continue;
		}

		TimeValue need = seg.duration;
		while (need.is_positive() && next_piece < pieces.size()) {
			const Piece& p = pieces[next_piece];
			TimeValue avail = (p.end - p.start) - used_in_piece;
			TimeValue take = std::min(avail, need);
			need -= take;
			executed += take;
			used_in_piece += take;
			now = p.start + used_in_piece;
			if (used_in_piece == p.end - p.start) {
				++next_piece;
				used_in_piece = TimeValue{};
			}
		}
		if (need.is_positive())
			break; // still executing when the trace ends
	}

	if (executed == job.task->wcet())
		job.completion = now;

	if (next_piece < pieces.size())
		fail(describe(job.ref) + " executes beyond its pattern (wcet "
		         + job.task->wcet().to_string() + ")",
		     pieces[next_piece].start + used_in_piece);
	job.executed_by_end = executed;
}

TimeValue executed_until(const Timeline& job, const TimeValue& t)
{
	TimeValue sum;
	for (const auto& p : job.executed) {
		if (p.start >= t)
			break;
		sum += std::min(p.end, t) - p.start;
	}
	return sum;
}

bool event_less(const TraceEvent& a, const TraceEvent& b)
{
	if (a.time != b.time)
		return a.time < b.time;
	if (a.kind != b.kind)
		return a.kind < b.kind;
	return a.job < b.job;
}

bool window_less(const SuspensionWindow& a, const SuspensionWindow& b)
{
	if (a.start != b.start)
		return a.start < b.start;
	if (a.job != b.job)
		return a.job < b.job;
	return a.end < b.end;
}

void validate(const TaskSet& ts, std::span<const SuspensionPattern> patterns,
              const ScheduleTrace& trace)
{
	std::map<TaskId, const SuspensionPattern*> pattern_of;
	for (const auto& p : patterns) {
		if (!pattern_of.emplace(p.task_id(), &p).second)
			fail("duplicate pattern for task " + std::to_string(p.task_id()));
	}
	for (const auto& t : ts) {
		auto it = pattern_of.find(t.id());
		if (it == pattern_of.end())
			fail("missing pattern for task " + std::to_string(t.id()));
		if (!it->second->conforms_to(t))
			fail("pattern does not conform to task " + std::to_string(t.id()));
	}
	if (pattern_of.size() != ts.size())
		fail("pattern for a task outside the task set");

	check_structure(trace);
	const TimeValue end = trace.end();

	// (a) jobs released strictly before the end of the trace
	std::map<JobRef, Timeline> jobs;
	for (const auto& t : ts) {
		for (std::size_t j = 0;; ++j) {
			TimeValue release = t.period() * TimeValue(static_cast<std::int64_t>(j));
			if (release >= end)
				break;
			Timeline tl;
			tl.ref = {t.id(), j};
			tl.task = &t;
			tl.release = release;
			tl.deadline = release + t.deadline();
			jobs.emplace(tl.ref, std::move(tl));
		}
	}
	for (const auto& iv : trace.intervals) {
		if (iv.is_idle())
			continue;
		auto it = jobs.find(*iv.job);
		if (it == jobs.end())
			fail("interval names unreleased or unknown " + describe(*iv.job), iv.start);
		it->second.executed.push_back({iv.start, iv.end});
	}

	// (c) per-job pattern conformance
	for (auto& [ref, job] : jobs)
		rebuild(job, *pattern_of.at(ref.task), end);

	std::vector<SuspensionWindow> expected_windows;
	for (const auto& [ref, job] : jobs)
		for (const auto& w : job.suspended) {
			TimeValue clipped = std::min(w.end, end);
			if (w.start < clipped)
				expected_windows.push_back({w.start, clipped, ref});
		}
	auto recorded_windows = trace.suspensions;
	std::sort(expected_windows.begin(), expected_windows.end(), window_less);
	std::sort(recorded_windows.begin(), recorded_windows.end(), window_less);
	if (expected_windows != recorded_windows) {
		for (std::size_t i = 0; i < std::max(expected_windows.size(), recorded_windows.size()); ++i) {
			if (i >= recorded_windows.size())
				fail("missing suspension window of " + describe(expected_windows[i].job),
				     expected_windows[i].start);
			if (i >= expected_windows.size() || !(expected_windows[i] == recorded_windows[i]))
				fail("suspension window of " + describe(recorded_windows[i].job)
				         + " does not match its pattern",
				     recorded_windows[i].start);
		}
	}

	// (d) releases, completions and misses
	std::vector<TraceEvent> expected_events;
	for (const auto& [ref, job] : jobs) {
		expected_events.push_back({EventKind::release, job.release, ref});
		if (job.completion)
			expected_events.push_back({EventKind::complete, *job.completion, ref});
		if (job.deadline <= end && executed_until(job, job.deadline) < job.task->wcet())
			expected_events.push_back({EventKind::miss, job.deadline, ref});
	}
	auto recorded_events = trace.events;
	std::sort(expected_events.begin(), expected_events.end(), event_less);
	std::sort(recorded_events.begin(), recorded_events.end(), event_less);
	for (std::size_t i = 0; i < std::max(expected_events.size(), recorded_events.size()); ++i) {
		if (i >= recorded_events.size()) {
			const auto& e = expected_events[i];
			fail(std::string("missing ") + to_string(e.kind) + " event of " + describe(e.job), e.time);
		}
		if (i >= expected_events.size() || !(expected_events[i] == recorded_events[i])) {
			const auto& e = recorded_events[i];
			if (i < expected_events.size() && event_less(expected_events[i], e)) {
				const auto& x = expected_events[i];
				fail(std::string("missing ") + to_string(x.kind) + " event of " + describe(x.job),
				     x.time);
			}
			fail(std::string("unexpected ") + to_string(e.kind) + " event of " + describe(e.job),
			     e.time);
		}
	}
	if (end < trace.horizon) {
		bool miss_at_end = std::any_of(expected_events.begin(), expected_events.end(),
		                               [&](const TraceEvent& e) {
			                               return e.kind == EventKind::miss && e.time == end;
		                               });
		if (!miss_at_end)
			fail("trace stops before its horizon without a deadline miss", end);
	}

	// (b) EDF priority and work conservation on every piece
	std::set<TimeValue> cuts;
	for (const auto& [ref, job] : jobs) {
		cuts.insert(job.release);
		if (job.completion)
			cuts.insert(*job.completion);
		for (const auto& w : job.suspended)
			cuts.insert(w.end);
	}

	const Timeline* previous = nullptr;
	for (const auto& iv : trace.intervals) {
		auto first = cuts.lower_bound(iv.start);
		std::vector<TimeValue> starts{iv.start};
		for (auto it = first; it != cuts.end() && *it < iv.end; ++it)
			if (*it > iv.start)
				starts.push_back(*it);

		for (const auto& at : starts) {
			std::vector<const Timeline*> ready;
			for (const auto& [ref, job] : jobs)
				if (job.ready_at(at))
					ready.push_back(&job);

			if (iv.is_idle()) {
				if (!ready.empty())
					fail("processor idles while " + describe(ready.front()->ref) + " is ready", at);
				previous = nullptr;
				continue;
			}

			const Timeline& running = jobs.at(*iv.job);
			if (!running.ready_at(at))
				fail(describe(running.ref) + " executes while not ready", at);

			const Timeline* best = nullptr;
			for (const auto* cand : ready) {
				if (!best || cand->deadline < best->deadline)
					best = cand;
				else if (cand->deadline == best->deadline) {
					bool cand_continues = previous == cand;
					bool best_continues = previous == best;
					if (cand_continues || (!best_continues && cand->ref < best->ref))
						best = cand;
				}
			}
			if (best->ref != running.ref) {
				std::ostringstream msg;
				msg << "EDF rule: " << describe(running.ref) << " (deadline " << running.deadline
				    << ") runs while " << describe(best->ref) << " (deadline " << best->deadline
				    << ") is ready";
				fail(msg.str(), at);
			}
			previous = &running;
		}
	}
}

} // namespace

TraceVerdict validate_trace(const TaskSet& ts, std::span<const SuspensionPattern> patterns,
                            const ScheduleTrace& trace)
{
	try {
		validate(ts, patterns, trace);
	} catch (const Violation& v) {
		return v.verdict;
	}
	return TraceVerdict::ok();
}

} // namespace suspedf
