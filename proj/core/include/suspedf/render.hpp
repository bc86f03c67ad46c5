#ifndef SUSPEDF_RENDER_HPP
#define SUSPEDF_RENDER_HPP

#include <stdexcept>
#include <string>

#include "suspedf/simulator.hpp"

namespace suspedf {

class RenderError : public std::invalid_argument
{
public:
	using std::invalid_argument::invalid_argument;
};

// Gantt chart, one lane per task: execution boxes, hatched suspension
// boxes, release and period-boundary arrows, and a red "deadline miss"
// marker per miss. One time unit is 40 px.
std::string render_svg(const ScheduleTrace& trace);

// Fixed-width chart; one column per gcd of all event times.
std::string render_ascii(const ScheduleTrace& trace);

inline constexpr double svg_units_per_time = 40.0;
inline constexpr std::size_t ascii_max_columns = 4000;

} // namespace suspedf

#endif
