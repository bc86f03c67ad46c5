#ifndef SUSPEDF_MODEL_HPP
#define SUSPEDF_MODEL_HPP

#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "suspedf/time_value.hpp"

namespace suspedf {

using TaskId = int;

enum class ModelErrc {
	empty_taskset,
	duplicate_task_id,
	nonpositive_period,
	nonpositive_wcet,
	negative_suspension,
	wcet_exceeds_period,
	prefix_out_of_range,
	nonpositive_step,
	negative_segment,
	pattern_task_mismatch,
	pattern_execution_mismatch,
	pattern_suspension_exceeded,
};

const char* to_string(ModelErrc code);

class ModelError : public std::invalid_argument
{
public:
	ModelError(ModelErrc code, const std::string& what)
		: std::invalid_argument(what), code_(code)
	{
	}

	ModelErrc code() const { return code_; }

private:
	ModelErrc code_;
};

/* Periodic implicit-deadline task with dynamic self-suspension.
 *
 * Every job executes for at most wcet and suspends for at most
 * suspension time units in total; its relative deadline equals the
 * period.
 */
class Task
{
public:
	Task(TaskId id, TimeValue period, TimeValue wcet, TimeValue suspension);

	TaskId id() const { return id_; }
	const TimeValue& period() const { return period_; }
	const TimeValue& wcet() const { return wcet_; }
	const TimeValue& suspension() const { return suspension_; }
	const TimeValue& deadline() const { return period_; }

	TimeValue utilization() const { return wcet_ / period_; }

	friend bool operator==(const Task&, const Task&) = default;

private:
	TaskId id_;
	TimeValue period_;
	TimeValue wcet_;
	TimeValue suspension_;
};

// Nonempty, ordered by (period, id), ids pairwise distinct.
class TaskSet
{
public:
	// normalize_taskset: sorts and validates.
	static TaskSet normalize(std::vector<Task> tasks);

	std::span<const Task> tasks() const { return tasks_; }
	std::size_t size() const { return tasks_.size(); }
	const Task& operator[](std::size_t i) const { return tasks_[i]; }
	auto begin() const { return tasks_.begin(); }
	auto end() const { return tasks_.end(); }

	const Task* find(TaskId id) const;
	std::optional<std::size_t> index_of(TaskId id) const;

	friend bool operator==(const TaskSet&, const TaskSet&) = default;

private:
	explicit TaskSet(std::vector<Task> tasks) : tasks_(std::move(tasks)) {}

	std::vector<Task> tasks_;
};

inline TaskSet normalize_taskset(std::vector<Task> tasks)
{
	return TaskSet::normalize(std::move(tasks));
}

// Sum of C_i / T_i.
TimeValue utilization(const TaskSet& ts);

// Least t > 0 with t / T_i a positive integer for all i.
TimeValue hyperperiod(const TaskSet& ts);

enum class SegmentKind { execute, suspend };

struct Segment
{
	SegmentKind kind;
	TimeValue duration;

	friend bool operator==(const Segment&, const Segment&) = default;
};

/* Execute/suspend shape followed by every job of one task.
 *
 * Always stored in canonical form: zero-length segments are dropped
 * and adjacent segments of the same kind are merged.
 */
class SuspensionPattern
{
public:
	SuspensionPattern(TaskId task_id, std::vector<Segment> segments);

	// Canonicalizes, then checks conformance against the task.
	static SuspensionPattern make(const Task& task, std::vector<Segment> segments);

	TaskId task_id() const { return task_id_; }
	std::span<const Segment> segments() const { return segments_; }

	TimeValue total_execution() const;
	TimeValue total_suspension() const;

	// Throws ModelError unless the pattern belongs to the task, executes
	// exactly C_i and suspends at most S_i.
	void check_against(const Task& task) const;
	bool conforms_to(const Task& task) const;

	friend bool operator==(const SuspensionPattern&, const SuspensionPattern&) = default;

private:
	TaskId task_id_;
	std::vector<Segment> segments_;
};

// [Execute(prefix), Suspend(S_i), Execute(C_i - prefix)] in canonical form.
SuspensionPattern split_pattern(const Task& task, const TimeValue& prefix);

// split_pattern for prefixes 0, step, 2 step, ..., C_i; deduplicated.
std::vector<SuspensionPattern> enumerate_split_patterns(const Task& task, const TimeValue& grid_step);

} // namespace suspedf

#endif
