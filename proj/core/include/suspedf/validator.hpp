#ifndef SUSPEDF_VALIDATOR_HPP
#define SUSPEDF_VALIDATOR_HPP

#include <optional>
#include <span>
#include <string>

#include "suspedf/simulator.hpp"

namespace suspedf {

struct TraceVerdict
{
	bool valid = true;
	std::string description;
	std::optional<TimeValue> time;

	static TraceVerdict ok() { return {}; }
	static TraceVerdict violation(std::string what, std::optional<TimeValue> at = std::nullopt)
	{
		return {false, std::move(what), std::move(at)};
	}

	explicit operator bool() const { return valid; }
};

/* Checks a trace against the task set and patterns without re-running
 * the scheduler.
 *
 * Job timelines (suspension windows, completion) are rebuilt from each
 * job's own execution intervals and pattern. The EDF rule and work
 * conservation are then checked on every piece of the schedule between
 * consecutive releases, completions, suspension ends and interval
 * boundaries. Malformed traces are reported as violations. Returns the
 * first violation found.
 */
TraceVerdict validate_trace(const TaskSet& ts, std::span<const SuspensionPattern> patterns,
                            const ScheduleTrace& trace);

} // namespace suspedf

#endif
