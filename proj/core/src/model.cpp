#include "suspedf/model.hpp"

#include <algorithm>
#include <set>

namespace suspedf {

const char* to_string(ModelErrc code)
{
	switch (code) {
	case ModelErrc::empty_taskset: return "empty_taskset";
	case ModelErrc::duplicate_task_id: return "duplicate_task_id";
	case ModelErrc::nonpositive_period: return "nonpositive_period";
	case ModelErrc::nonpositive_wcet: return "nonpositive_wcet";
	case ModelErrc::negative_suspension: return "negative_suspension";
	case ModelErrc::wcet_exceeds_period: return "wcet_exceeds_period";
	case ModelErrc::prefix_out_of_range: return "prefix_out_of_range";
	case ModelErrc::nonpositive_step: return "nonpositive_step";
	case ModelErrc::negative_segment: return "negative_segment";
	case ModelErrc::pattern_task_mismatch: return "pattern_task_mismatch";
	case ModelErrc::pattern_execution_mismatch: return "pattern_execution_mismatch";
	case ModelErrc::pattern_suspension_exceeded: return "pattern_suspension_exceeded";
	}
	return "unknown";
}

Task::Task(TaskId id, TimeValue period, TimeValue wcet, TimeValue suspension)
	: id_(id), period_(std::move(period)), wcet_(std::move(wcet)),
	  suspension_(std::move(suspension))
{
	auto where = "task " + std::to_string(id_) + ": ";
	if (!period_.is_positive())
		throw ModelError(ModelErrc::nonpositive_period,
		                 where + "period must be > 0, got " + period_.to_string());
	if (!wcet_.is_positive())
		throw ModelError(ModelErrc::nonpositive_wcet,
		                 where + "wcet must be > 0, got " + wcet_.to_string());
	if (suspension_.is_negative())
		throw ModelError(ModelErrc::negative_suspension,
		                 where + "suspension must be >= 0, got " + suspension_.to_string());
	if (wcet_ > period_)
		throw ModelError(ModelErrc::wcet_exceeds_period,
		                 where + "wcet " + wcet_.to_string() + " exceeds period "
		                     + period_.to_string());
}

TaskSet TaskSet::normalize(std::vector<Task> tasks)
{
	if (tasks.empty())
		throw ModelError(ModelErrc::empty_taskset, "task set must not be empty");

	std::set<TaskId> seen;
	for (const auto& t : tasks)
		if (!seen.insert(t.id()).second)
			throw ModelError(ModelErrc::duplicate_task_id,
			                 "duplicate task id " + std::to_string(t.id()));

	std::sort(tasks.begin(), tasks.end(), [](const Task& a, const Task& b) {
		if (a.period() != b.period())
			return a.period() < b.period();
		return a.id() < b.id();
	});
	return TaskSet(std::move(tasks));
}

const Task* TaskSet::find(TaskId id) const
{
	for (const auto& t : tasks_)
		if (t.id() == id)
			return &t;
	return nullptr;
}

std::optional<std::size_t> TaskSet::index_of(TaskId id) const
{
	for (std::size_t i = 0; i < tasks_.size(); ++i)
		if (tasks_[i].id() == id)
			return i;
	return std::nullopt;
}

TimeValue utilization(const TaskSet& ts)
{
	TimeValue u;
	for (const auto& t : ts)
		u += t.utilization();
	return u;
}

TimeValue hyperperiod(const TaskSet& ts)
{
	std::vector<TimeValue> periods;
	periods.reserve(ts.size());
	for (const auto& t : ts)
		periods.push_back(t.period());
	return rational_lcm(periods);
}

SuspensionPattern::SuspensionPattern(TaskId task_id, std::vector<Segment> segments)
	: task_id_(task_id)
{
	for (auto& seg : segments) {
		if (seg.duration.is_negative())
			throw ModelError(ModelErrc::negative_segment,
			                 "task " + std::to_string(task_id)
			                     + ": negative segment duration " + seg.duration.to_string());
		if (seg.duration.is_zero())
			continue;
		if (!segments_.empty() && segments_.back().kind == seg.kind)
			segments_.back().duration += seg.duration;
		else
			segments_.push_back(std::move(seg));
	}
}

SuspensionPattern SuspensionPattern::make(const Task& task, std::vector<Segment> segments)
{
	SuspensionPattern p(task.id(), std::move(segments));
	p.check_against(task);
	return p;
}

TimeValue SuspensionPattern::total_execution() const
{
	TimeValue sum;
	for (const auto& s : segments_)
		if (s.kind == SegmentKind::execute)
			sum += s.duration;
	return sum;
}

TimeValue SuspensionPattern::total_suspension() const
{
	TimeValue sum;
	for (const auto& s : segments_)
		if (s.kind == SegmentKind::suspend)
			sum += s.duration;
	return sum;
}

void SuspensionPattern::check_against(const Task& task) const
{
	auto where = "pattern for task " + std::to_string(task_id_) + ": ";
	if (task.id() != task_id_)
		throw ModelError(ModelErrc::pattern_task_mismatch,
		                 where + "applied to task " + std::to_string(task.id()));
	auto exec = total_execution();
	if (exec != task.wcet())
		throw ModelError(ModelErrc::pattern_execution_mismatch,
		                 where + "executes " + exec.to_string() + " but wcet is "
		                     + task.wcet().to_string());
	auto susp = total_suspension();
	if (susp > task.suspension())
		throw ModelError(ModelErrc::pattern_suspension_exceeded,
		                 where + "suspends " + susp.to_string() + " but the budget is "
		                     + task.suspension().to_string());
}

bool SuspensionPattern::conforms_to(const Task& task) const
{
	try {
		check_against(task);
		return true;
	} catch (const ModelError&) {
		return false;
	}
}

SuspensionPattern split_pattern(const Task& task, const TimeValue& prefix)
{
	if (prefix.is_negative() || prefix > task.wcet())
		throw ModelError(ModelErrc::prefix_out_of_range,
		                 "task " + std::to_string(task.id()) + ": prefix " + prefix.to_string()
		                     + " outside [0, " + task.wcet().to_string() + "]");
	if (task.suspension().is_zero())
		return SuspensionPattern(task.id(), {{SegmentKind::execute, task.wcet()}});
	return SuspensionPattern(task.id(), {
		{SegmentKind::execute, prefix},
		{SegmentKind::suspend, task.suspension()},
		{SegmentKind::execute, task.wcet() - prefix},
	});
}

std::vector<SuspensionPattern> enumerate_split_patterns(const Task& task, const TimeValue& grid_step)
{
	if (!grid_step.is_positive())
		throw ModelError(ModelErrc::nonpositive_step,
		                 "pattern grid step must be > 0, got " + grid_step.to_string());

	std::vector<SuspensionPattern> out;
	auto add = [&](const TimeValue& prefix) {
		auto p = split_pattern(task, prefix);
		if (std::find(out.begin(), out.end(), p) == out.end())
			out.push_back(std::move(p));
	};
	for (TimeValue x; x <= task.wcet(); x += grid_step)
		add(x);
	add(task.wcet());
	return out;
}

} // namespace suspedf
