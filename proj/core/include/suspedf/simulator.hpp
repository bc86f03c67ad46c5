#ifndef SUSPEDF_SIMULATOR_HPP
#define SUSPEDF_SIMULATOR_HPP

#include <compare>
#include <optional>
#include <span>
#include <stdexcept>
#include <vector>

#include "suspedf/model.hpp"

namespace suspedf {

class SimulationError : public std::invalid_argument
{
public:
	using std::invalid_argument::invalid_argument;
};

// The j-th job (0-based) of a task, released at j * T_i.
struct JobRef
{
	TaskId task = 0;
	std::size_t index = 0;

	friend auto operator<=>(const JobRef&, const JobRef&) = default;
};

// Execute interval; an empty job means the processor idles.
struct ScheduleInterval
{
	TimeValue start;
	TimeValue end;
	std::optional<JobRef> job;

	bool is_idle() const { return !job.has_value(); }
	friend bool operator==(const ScheduleInterval&, const ScheduleInterval&) = default;
};

struct SuspensionWindow
{
	TimeValue start;
	TimeValue end;
	JobRef job;

	friend bool operator==(const SuspensionWindow&, const SuspensionWindow&) = default;
};

// Declaration order is also the order of same-instant events in a trace.
enum class EventKind { complete, miss, release };

const char* to_string(EventKind kind);

struct TraceEvent
{
	EventKind kind;
	TimeValue time;
	JobRef job;

	friend bool operator==(const TraceEvent&, const TraceEvent&) = default;
};

/* Interval-level record of one simulation run.
 *
 * intervals cover [0, end()] contiguously. Suspension windows that were
 * still open when the run stopped are clipped to end().
 */
struct ScheduleTrace
{
	TimeValue horizon;
	std::vector<ScheduleInterval> intervals;
	std::vector<SuspensionWindow> suspensions;
	std::vector<TraceEvent> events;

	TimeValue end() const { return intervals.empty() ? TimeValue{} : intervals.back().end; }

	friend bool operator==(const ScheduleTrace&, const ScheduleTrace&) = default;
};

enum class OnMiss { stop, continue_running };

struct SimOptions
{
	// Defaults to twice the hyperperiod.
	std::optional<TimeValue> horizon;
	OnMiss on_miss = OnMiss::stop;
};

enum class JobState { ready, running, suspended, finished };

// Run-time state of one job inside the simulator.
struct Job
{
	JobRef ref;
	std::size_t task_index;
	TimeValue release;
	TimeValue abs_deadline;
	std::size_t segment = 0;
	TimeValue segment_remaining;
	TimeValue executed_total;
	TimeValue suspended_since;
	JobState state = JobState::ready;
	bool missed = false;
};

/* Preemptive EDF on one processor with synchronous periodic releases.
 *
 * Each job follows its task's pattern: execute segments consume
 * processor time, suspend segments consume wall-clock time starting the
 * instant the previous segment ends. A job is complete once it has
 * executed C_i; a trailing suspend segment has no effect. Equal
 * deadlines: the running job keeps the processor, otherwise the lowest
 * (task id, job index) wins. Completing exactly at the deadline is a
 * meet. Jobs are released at times strictly before the horizon.
 */
ScheduleTrace simulate_edf(const TaskSet& ts, std::span<const SuspensionPattern> patterns,
                           const SimOptions& opts = {});

std::vector<TraceEvent> detect_misses(const ScheduleTrace& trace);

} // namespace suspedf

#endif
