#ifndef SUSPEDF_SEARCH_HPP
#define SUSPEDF_SEARCH_HPP

#include <chrono>
#include <functional>
#include <optional>
#include <vector>

#include "suspedf/analysis.hpp"
#include "suspedf/simulator.hpp"

namespace suspedf {

struct GridSpec
{
	std::size_t n_tasks = 2;
	std::vector<TimeValue> period_choices;
	TimeValue wcet_step;
	// Explicit suspension values; when empty, suspension_step generates
	// {0, step, 2 step, ...} up to the task's period.
	std::vector<TimeValue> suspension_choices;
	std::optional<TimeValue> suspension_step;
	TimeValue pattern_prefix_step;
	// Per-candidate horizon; twice the candidate's hyperperiod when empty.
	std::optional<TimeValue> horizon;
	OnMiss on_miss = OnMiss::stop;

	// Throws std::invalid_argument on a malformed grid.
	void validate() const;
};

/* Deterministic enumeration of every task set in a grid.
 *
 * Per-task tuples (period, wcet, suspension) are ordered
 * lexicographically; a task set is a non-decreasing sequence of n
 * tuples, so every normalized set appears exactly once. Ids are 1..n in
 * tuple order.
 */
class TaskSetEnumerator
{
public:
	explicit TaskSetEnumerator(const GridSpec& spec);

	std::optional<TaskSet> next();
	std::size_t tuple_count() const { return tuples_.size(); }

private:
	struct Tuple
	{
		TimeValue period, wcet, suspension;
	};

	std::vector<Tuple> tuples_;
	std::vector<std::size_t> cursor_;
	bool done_ = false;
};

std::vector<TaskSet> enumerate_tasksets(const GridSpec& spec);

struct Counterexample
{
	TaskSet taskset;
	std::vector<SuspensionPattern> patterns;
	TestReport devi_report;
	ScheduleTrace trace;
	TraceEvent first_miss;
};

// Evaluates one candidate: Devi PASS, then every pattern combination in
// lexicographic order until the first miss.
std::optional<Counterexample> check_candidate(const TaskSet& ts, const GridSpec& spec);

struct SearchBudget
{
	std::optional<std::size_t> max_found;
	std::optional<std::chrono::duration<double>> time_limit;
};

struct SearchStats
{
	std::size_t checked = 0;
	std::size_t passed_devi = 0;
	std::size_t found = 0;
};

struct SearchOptions
{
	unsigned threads = 1;
	std::size_t batch_size = 512;
	std::function<void(const SearchStats&)> progress;
};

struct SearchResult
{
	std::vector<Counterexample> found;
	SearchStats stats;
	bool exhausted_grid = false;
};

/* Runs check_candidate over the grid. Candidates are evaluated in
 * batches (in parallel when threads > 1) and merged in enumeration
 * order, so output is identical for any thread count. Every item is
 * passed through verify_counterexample before it is reported.
 */
SearchResult find_counterexamples(const GridSpec& spec, const SearchBudget& budget = {},
                                  const SearchOptions& options = {});

// Recomputes Devi's verdict, validates the trace and locates first_miss.
bool verify_counterexample(const Counterexample& cx);

} // namespace suspedf

#endif
