#include "suspedf/search.hpp"

#include <algorithm>
#include <future>
#include <stdexcept>

#include "suspedf/validator.hpp"

namespace suspedf {

void GridSpec::validate() const
{
	if (n_tasks == 0)
		throw std::invalid_argument("grid: n_tasks must be >= 1");
	if (period_choices.empty())
		throw std::invalid_argument("grid: period_choices must not be empty");
	for (const auto& p : period_choices)
		if (!p.is_positive())
			throw std::invalid_argument("grid: periods must be > 0, got " + p.to_string());
	if (!wcet_step.is_positive())
		throw std::invalid_argument("grid: wcet_step must be > 0");
	if (!pattern_prefix_step.is_positive())
		throw std::invalid_argument("grid: pattern_prefix_step must be > 0");
	if (suspension_choices.empty() && !suspension_step)
		throw std::invalid_argument("grid: need suspension_choices or suspension_step");
	if (suspension_choices.empty() && !suspension_step->is_positive())
		throw std::invalid_argument("grid: suspension_step must be > 0");
	for (const auto& s : suspension_choices)
		if (s.is_negative())
			throw std::invalid_argument("grid: suspensions must be >= 0, got " + s.to_string());
	if (horizon && !horizon->is_positive())
		throw std::invalid_argument("grid: horizon must be > 0");
}

TaskSetEnumerator::TaskSetEnumerator(const GridSpec& spec)
{
	spec.validate();

	auto periods = spec.period_choices;
	std::sort(periods.begin(), periods.end());
	periods.erase(std::unique(periods.begin(), periods.end()), periods.end());

	for (const auto& period : periods) {
		std::vector<TimeValue> suspensions = spec.suspension_choices;
		if (suspensions.empty())
			for (TimeValue s; s <= period; s += *spec.suspension_step)
				suspensions.push_back(s);
		std::sort(suspensions.begin(), suspensions.end());
		suspensions.erase(std::unique(suspensions.begin(), suspensions.end()), suspensions.end());

		for (TimeValue c = spec.wcet_step; c <= period; c += spec.wcet_step)
			for (const auto& s : suspensions)
				tuples_.push_back({period, c, s});
	}

	cursor_.assign(spec.n_tasks, 0);
	done_ = tuples_.empty();
}

std::optional<TaskSet> TaskSetEnumerator::next()
{
	if (done_)
		return std::nullopt;

	std::vector<Task> tasks;
	tasks.reserve(cursor_.size());
	for (std::size_t i = 0; i < cursor_.size(); ++i) {
		const auto& t = tuples_[cursor_[i]];
		tasks.emplace_back(static_cast<TaskId>(i + 1), t.period, t.wcet, t.suspension);
	}

	// advance to the next non-decreasing index sequence
	std::size_t pos = cursor_.size();
	while (pos > 0 && cursor_[pos - 1] + 1 == tuples_.size())
		--pos;
	if (pos == 0) {
		done_ = true;
	} else {
		std::size_t v = ++cursor_[pos - 1];
		for (std::size_t i = pos; i < cursor_.size(); ++i)
			cursor_[i] = v;
	}

	return TaskSet::normalize(std::move(tasks));
}

std::vector<TaskSet> enumerate_tasksets(const GridSpec& spec)
{
	std::vector<TaskSet> out;
	TaskSetEnumerator e(spec);
	while (auto ts = e.next())
		out.push_back(std::move(*ts));
	return out;
}

std::optional<Counterexample> check_candidate(const TaskSet& ts, const GridSpec& spec)
{
	auto report = devi_test(ts);
	if (!report.overall)
		return std::nullopt;

	std::vector<std::vector<SuspensionPattern>> choices;
	for (const auto& t : ts)
		choices.push_back(enumerate_split_patterns(t, spec.pattern_prefix_step));

	SimOptions opts{spec.horizon, spec.on_miss};
	std::vector<std::size_t> pick(ts.size(), 0);
	for (;;) {
		std::vector<SuspensionPattern> patterns;
		for (std::size_t i = 0; i < ts.size(); ++i)
			patterns.push_back(choices[i][pick[i]]);

		auto trace = simulate_edf(ts, patterns, opts);
		auto misses = detect_misses(trace);
		if (!misses.empty()) {
			auto first = misses.front();
			return Counterexample{ts, std::move(patterns), std::move(report), std::move(trace),
			                      std::move(first)};
		}

		// last task's prefix varies fastest
		std::size_t pos = ts.size();
		while (pos > 0 && pick[pos - 1] + 1 == choices[pos - 1].size()) {
			pick[pos - 1] = 0;
			--pos;
		}
		if (pos == 0)
			return std::nullopt;
		++pick[pos - 1];
	}
}

SearchResult find_counterexamples(const GridSpec& spec, const SearchBudget& budget,
                                  const SearchOptions& options)
{
	using clock = std::chrono::steady_clock;
	const auto started = clock::now();

	SearchResult result;
	TaskSetEnumerator candidates(spec);
	unsigned threads = std::max(1u, options.threads);
	std::size_t batch_size = std::max<std::size_t>(1, options.batch_size);

	auto budget_reached = [&] {
		if (budget.max_found && result.found.size() >= *budget.max_found)
			return true;
		return budget.time_limit && clock::now() - started >= *budget.time_limit;
	};

	while (!budget_reached()) {
		std::vector<TaskSet> batch;
		while (batch.size() < batch_size) {
			auto ts = candidates.next();
			if (!ts)
				break;
			batch.push_back(std::move(*ts));
		}
		if (batch.empty()) {
			result.exhausted_grid = true;
			break;
		}

		std::vector<std::optional<Counterexample>> outcome(batch.size());
		std::vector<char> passed(batch.size(), 0);
		auto work = [&](std::size_t first, std::size_t stride) {
			for (std::size_t i = first; i < batch.size(); i += stride) {
				passed[i] = devi_test(batch[i]).overall;
				if (passed[i])
					outcome[i] = check_candidate(batch[i], spec);
			}
		};
		if (threads == 1) {
			work(0, 1);
		} else {
			std::vector<std::future<void>> workers;
			for (unsigned w = 0; w < threads; ++w)
				workers.push_back(std::async(std::launch::async, work, w, threads));
			for (auto& f : workers)
				f.get();
		}

		for (std::size_t i = 0; i < batch.size(); ++i) {
			if (budget.max_found && result.found.size() >= *budget.max_found)
				break;
			++result.stats.checked;
			result.stats.passed_devi += passed[i] ? 1 : 0;
			if (!outcome[i])
				continue;
			if (!verify_counterexample(*outcome[i]))
				throw std::logic_error("search produced a counterexample that fails verification");
			result.found.push_back(std::move(*outcome[i]));
			++result.stats.found;
		}
		if (options.progress)
			options.progress(result.stats);
	}
	return result;
}

bool verify_counterexample(const Counterexample& cx)
{
	try {
		if (!devi_test(cx.taskset).overall)
			return false;
		for (const auto& t : cx.taskset) {
			auto it = std::find_if(cx.patterns.begin(), cx.patterns.end(),
			                       [&](const SuspensionPattern& p) { return p.task_id() == t.id(); });
			if (it == cx.patterns.end() || !it->conforms_to(t))
				return false;
		}
		if (!validate_trace(cx.taskset, cx.patterns, cx.trace))
			return false;
		auto misses = detect_misses(cx.trace);
		if (misses.empty())
			return false;
		return std::find(misses.begin(), misses.end(), cx.first_miss) != misses.end()
		       && cx.first_miss.time == misses.front().time;
	} catch (const std::exception&) {
		return false;
	}
}

} // namespace suspedf
