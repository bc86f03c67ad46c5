#ifndef SUSPEDF_ANALYSIS_HPP
#define SUSPEDF_ANALYSIS_HPP

#include <string_view>
#include <vector>

#include "suspedf/model.hpp"

namespace suspedf {

enum class TestKind { devi, suspension_oblivious };

const char* to_string(TestKind kind);

struct TestRow
{
	std::size_t k;      // 1-based prefix length
	TimeValue blocking; // B_k
	TimeValue blocking_prime; // B_k'
	TimeValue lhs;
	bool pass;

	friend bool operator==(const TestRow&, const TestRow&) = default;
};

struct TestReport
{
	TestKind test;
	std::vector<TestRow> rows;
	bool overall;

	friend bool operator==(const TestReport&, const TestReport&) = default;
};

// B_k = sum_{i <= k} min(S_i, C_i); k is 1-based.
TimeValue devi_blocking(const TaskSet& ts, std::size_t k);

// B_k' = max_{i <= k} max(0, S_i - C_i); k is 1-based.
TimeValue devi_blocking_prime(const TaskSet& ts, std::size_t k);

/* Devi's suspension-aware EDF test for implicit-deadline tasks.
 *
 * Row k checks (B_k + B_k') / T_k + sum_{i <= k} C_i / T_i <= 1. All n
 * rows are always evaluated; the verdict is their conjunction and
 * equality passes.
 */
TestReport devi_test(const TaskSet& ts);

// Treats suspension as execution: sum (C_i + S_i) / T_i <= 1, one row at k = n.
TestReport suspension_oblivious_test(const TaskSet& ts);

} // namespace suspedf

#endif
