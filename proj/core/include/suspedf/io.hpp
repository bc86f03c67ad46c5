#ifndef SUSPEDF_IO_HPP
#define SUSPEDF_IO_HPP

#include <stdexcept>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "suspedf/analysis.hpp"
#include "suspedf/search.hpp"
#include "suspedf/simulator.hpp"

namespace suspedf {

// Malformed document; the message starts with the offending field path.
class FormatError : public std::runtime_error
{
public:
	using std::runtime_error::runtime_error;
};

using nlohmann::json;

// Rationals are JSON strings "p" or "p/q". Integers are tolerated,
// floats never.
TimeValue rational_from_json(const json& j, const std::string& path);
json rational_to_json(const TimeValue& t);

json taskset_to_json(const TaskSet& ts);
TaskSet taskset_from_json(const json& j);

json pattern_to_json(const SuspensionPattern& p);
SuspensionPattern pattern_from_json(const json& j, const std::string& path = "pattern");

json patterns_to_json(const std::vector<SuspensionPattern>& ps);
// Accepts {"patterns":[...]}, a bare array, or a single pattern object.
std::vector<SuspensionPattern> patterns_from_json(const json& j);

json report_to_json(const TestReport& r);
TestReport report_from_json(const json& j);

json trace_to_json(const ScheduleTrace& t);
ScheduleTrace trace_from_json(const json& j);

json event_to_json(const TraceEvent& e);
TraceEvent event_from_json(const json& j, const std::string& path);

json gridspec_to_json(const GridSpec& g);
GridSpec gridspec_from_json(const json& j);

json counterexample_to_json(const Counterexample& cx);
Counterexample counterexample_from_json(const json& j);

// Parses text, mapping syntax errors to FormatError.
json parse_document(const std::string& text, const std::string& source);
json read_json_file(const std::string& path);

} // namespace suspedf

#endif
