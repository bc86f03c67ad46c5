#include "suspedf/analysis.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace suspedf {

namespace {

void check_k(const TaskSet& ts, std::size_t k)
{
	if (k < 1 || k > ts.size())
		throw std::out_of_range("k = " + std::to_string(k) + " outside [1, "
		                        + std::to_string(ts.size()) + "]");
}

} // namespace

const char* to_string(TestKind kind)
{
	switch (kind) {
	case TestKind::devi: return "devi";
	case TestKind::suspension_oblivious: return "suspension_oblivious";
	}
	return "unknown";
}

TimeValue devi_blocking(const TaskSet& ts, std::size_t k)
{
	check_k(ts, k);
	TimeValue sum;
	for (std::size_t i = 0; i < k; ++i)
		sum += std::min(ts[i].suspension(), ts[i].wcet());
	return sum;
}

TimeValue devi_blocking_prime(const TaskSet& ts, std::size_t k)
{
	check_k(ts, k);
	TimeValue worst;
	for (std::size_t i = 0; i < k; ++i)
		worst = std::max(worst, std::max(TimeValue{0}, ts[i].suspension() - ts[i].wcet()));
	return worst;
}

TestReport devi_test(const TaskSet& ts)
{
	TestReport report{TestKind::devi, {}, true};
	TimeValue util;
	for (std::size_t k = 1; k <= ts.size(); ++k) {
		const Task& tk = ts[k - 1];
		util += tk.utilization();
		auto b = devi_blocking(ts, k);
		auto bp = devi_blocking_prime(ts, k);
		auto lhs = (b + bp) / tk.period() + util;
		bool pass = lhs <= TimeValue{1};
		report.rows.push_back({k, b, bp, lhs, pass});
		report.overall = report.overall && pass;
	}
	return report;
}

TestReport suspension_oblivious_test(const TaskSet& ts)
{
	TimeValue lhs;
	for (const auto& t : ts)
		lhs += (t.wcet() + t.suspension()) / t.period();
	bool pass = lhs <= TimeValue{1};
	return TestReport{TestKind::suspension_oblivious, {{ts.size(), {}, {}, lhs, pass}}, pass};
}

} // namespace suspedf
