#include "suspedf/simulator.hpp"

#include <algorithm>
#include <string>

namespace suspedf {

const char* to_string(EventKind kind)
{
	switch (kind) {
	case EventKind::complete: return "complete";
	case EventKind::miss: return "miss";
	case EventKind::release: return "release";
	}
	return "unknown";
}

namespace {

std::vector<const SuspensionPattern*> match_patterns(const TaskSet& ts,
                                                     std::span<const SuspensionPattern> patterns)
{
	std::vector<const SuspensionPattern*> by_task(ts.size(), nullptr);
	for (const auto& p : patterns) {
		auto idx = ts.index_of(p.task_id());
		if (!idx)
			throw SimulationError("pattern for unknown task " + std::to_string(p.task_id()));
		if (by_task[*idx])
			throw SimulationError("duplicate pattern for task " + std::to_string(p.task_id()));
		p.check_against(ts[*idx]);
		by_task[*idx] = &p;
	}
	for (std::size_t i = 0; i < ts.size(); ++i)
		if (!by_task[i])
			throw SimulationError("missing pattern for task " + std::to_string(ts[i].id()));
	return by_task;
}

class Engine
{
public:
	Engine(const TaskSet& ts, std::vector<const SuspensionPattern*> patterns,
	       const TimeValue& horizon, OnMiss on_miss)
		: ts_(ts), patterns_(std::move(patterns)), on_miss_(on_miss),
		  next_job_(ts.size(), 0)
	{
		trace_.horizon = horizon;
	}

	ScheduleTrace run()
	{
		TimeValue now;
		std::optional<JobRef> previous;
		for (;;) {
			expire_suspensions(now);
			if (check_deadlines(now))
				break;
			if (now == trace_.horizon)
				break;
			release_jobs(now);

			Job* chosen = pick(previous);
			TimeValue next = next_event(now, chosen);
			advance(now, next, chosen);
			previous = chosen ? std::optional<JobRef>(chosen->ref) : std::nullopt;
			now = next;
			std::erase_if(jobs_, [](const Job& j) { return j.state == JobState::finished; });
		}
		close_open_suspensions(now);
		std::stable_sort(trace_.suspensions.begin(), trace_.suspensions.end(),
		                 [](const SuspensionWindow& a, const SuspensionWindow& b) {
			                 if (a.start != b.start)
				                 return a.start < b.start;
			                 return a.job < b.job;
		                 });
		return std::move(trace_);
	}

private:
	std::span<const Segment> segments_of(const Job& job) const
	{
		return patterns_[job.task_index]->segments();
	}

	// Positions the job at its current segment, completing it once C_i
	// has been executed.
	void enter_segment(Job& job, const TimeValue& now)
	{
		const Task& task = ts_[job.task_index];
		auto segs = segments_of(job);
		if (job.executed_total == task.wcet() || job.segment >= segs.size()) {
			job.state = JobState::finished;
			trace_.events.push_back({EventKind::complete, now, job.ref});
			return;
		}
		const Segment& seg = segs[job.segment];
		job.segment_remaining = seg.duration;
		if (seg.kind == SegmentKind::execute) {
			job.state = JobState::ready;
		} else {
			job.state = JobState::suspended;
			job.suspended_since = now;
		}
	}

	void expire_suspensions(const TimeValue& now)
	{
		for (auto& job : jobs_) {
			if (job.state != JobState::suspended)
				continue;
			if (job.suspended_since + job.segment_remaining != now)
				continue;
			trace_.suspensions.push_back({job.suspended_since, now, job.ref});
			++job.segment;
			enter_segment(job, now);
		}
	}

	// Returns true when the run has to stop here.
	bool check_deadlines(const TimeValue& now)
	{
		bool stop = false;
		for (auto& job : jobs_) {
			if (job.missed || job.state == JobState::finished || job.abs_deadline != now)
				continue;
			job.missed = true;
			trace_.events.push_back({EventKind::miss, now, job.ref});
			stop = stop || on_miss_ == OnMiss::stop;
		}
		return stop;
	}

	void release_jobs(const TimeValue& now)
	{
		for (std::size_t i = 0; i < ts_.size(); ++i) {
			const Task& task = ts_[i];
			TimeValue release = task.period() * TimeValue(static_cast<std::int64_t>(next_job_[i]));
			if (release != now)
				continue;
			Job job;
			job.ref = {task.id(), next_job_[i]};
			job.task_index = i;
			job.release = release;
			job.abs_deadline = release + task.deadline();
			++next_job_[i];
			trace_.events.push_back({EventKind::release, now, job.ref});
			enter_segment(job, now);
			jobs_.push_back(std::move(job));
		}
	}

	Job* pick(const std::optional<JobRef>& previous)
	{
		Job* best = nullptr;
		for (auto& job : jobs_) {
			if (job.state != JobState::ready && job.state != JobState::running)
				continue;
			if (!best || job.abs_deadline < best->abs_deadline) {
				best = &job;
				continue;
			}
			if (job.abs_deadline > best->abs_deadline)
				continue;
			bool job_continues = previous == job.ref;
			bool best_continues = previous == best->ref;
			if (job_continues || (!best_continues && job.ref < best->ref))
				best = &job;
		}
		return best;
	}

	TimeValue next_event(const TimeValue& now, const Job* chosen) const
	{
		TimeValue next = trace_.horizon;
		auto consider = [&](const TimeValue& t) {
			if (t > now && t < next)
				next = t;
		};
		for (std::size_t i = 0; i < ts_.size(); ++i)
			consider(ts_[i].period() * TimeValue(static_cast<std::int64_t>(next_job_[i])));
		for (const auto& job : jobs_) {
			if (job.state == JobState::suspended)
				consider(job.suspended_since + job.segment_remaining);
			if (!job.missed && job.state != JobState::finished)
				consider(job.abs_deadline);
		}
		if (chosen)
			consider(now + chosen->segment_remaining);
		return next;
	}

	void advance(const TimeValue& from, const TimeValue& to, Job* chosen)
	{
		std::optional<JobRef> activity;
		if (chosen)
			activity = chosen->ref;
		auto& iv = trace_.intervals;
		if (!iv.empty() && iv.back().job == activity && iv.back().end == from)
			iv.back().end = to;
		else
			iv.push_back({from, to, activity});

		for (auto& job : jobs_)
			if (job.state == JobState::running)
				job.state = JobState::ready;
		if (!chosen)
			return;

		TimeValue delta = to - from;
		chosen->executed_total += delta;
		chosen->segment_remaining -= delta;
		chosen->state = JobState::running;
		if (chosen->segment_remaining.is_zero()) {
			++chosen->segment;
			enter_segment(*chosen, to);
		}
	}

	void close_open_suspensions(const TimeValue& end)
	{
		for (const auto& job : jobs_)
			if (job.state == JobState::suspended && job.suspended_since < end)
				trace_.suspensions.push_back({job.suspended_since, end, job.ref});
	}

	const TaskSet& ts_;
	std::vector<const SuspensionPattern*> patterns_;
	OnMiss on_miss_;
	std::vector<std::size_t> next_job_;
	std::vector<Job> jobs_;
	ScheduleTrace trace_;
};

} // namespace

ScheduleTrace simulate_edf(const TaskSet& ts, std::span<const SuspensionPattern> patterns,
                           const SimOptions& opts)
{
	auto by_task = match_patterns(ts, patterns);
	TimeValue horizon = opts.horizon ? *opts.horizon : hyperperiod(ts) * TimeValue{2};
	if (!horizon.is_positive())
		throw SimulationError("horizon must be > 0, got " + horizon.to_string());
	return Engine(ts, std::move(by_task), horizon, opts.on_miss).run();
}

std::vector<TraceEvent> detect_misses(const ScheduleTrace& trace)
{
	std::vector<TraceEvent> misses;
	for (const auto& e : trace.events)
		if (e.kind == EventKind::miss)
			misses.push_back(e);
	std::stable_sort(misses.begin(), misses.end(),
	                 [](const TraceEvent& a, const TraceEvent& b) { return a.time < b.time; });
	return misses;
}

} // namespace suspedf
