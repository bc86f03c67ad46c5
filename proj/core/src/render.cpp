#include "suspedf/render.hpp"

#include <cmath>
#include <cstdio>
#include <map>
#include <set>
#include <sstream>

namespace suspedf {

namespace {

constexpr double margin_left = 60;
constexpr double margin_top = 40;
constexpr double lane_height = 70;
constexpr double box_height = 28;
constexpr double arrow_height = 48;

void check_renderable(const ScheduleTrace& trace)
{
	if (!trace.horizon.is_positive())
		throw RenderError("trace horizon must be > 0");
	if (trace.intervals.empty())
		throw RenderError("trace has no intervals");
}

std::vector<TaskId> lanes_of(const ScheduleTrace& trace)
{
	std::set<TaskId> ids;
	for (const auto& iv : trace.intervals)
		if (iv.job)
			ids.insert(iv.job->task);
	for (const auto& w : trace.suspensions)
		ids.insert(w.job.task);
	for (const auto& e : trace.events)
		ids.insert(e.job.task);
	return {ids.begin(), ids.end()};
}

std::string num(double v)
{
	char buf[32];
	std::snprintf(buf, sizeof buf, "%.2f", v);
	std::string s = buf;
	while (s.back() == '0')
		s.pop_back();
	if (s.back() == '.')
		s.pop_back();
	return s == "-0" ? "0" : s;
}

double x_of(const TimeValue& t)
{
	return margin_left + t.to_double() * svg_units_per_time;
}

} // namespace

std::string render_svg(const ScheduleTrace& trace)
{
	check_renderable(trace);
	auto lanes = lanes_of(trace);
	std::map<TaskId, std::size_t> lane_of;
	for (std::size_t i = 0; i < lanes.size(); ++i)
		lane_of[lanes[i]] = i;

	const TimeValue end = trace.end();
	const double width = x_of(end) + 60;
	const double height = margin_top + lane_height * static_cast<double>(lanes.size()) + 40;
	auto base = [&](TaskId id) {
		return margin_top + lane_height * static_cast<double>(lane_of.at(id) + 1);
	};

	std::ostringstream svg;
	svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << num(width) << "\" height=\""
	    << num(height) << "\" font-family=\"sans-serif\" font-size=\"12\">\n";
	svg << "<defs>\n"
	       "<pattern id=\"hatch\" width=\"6\" height=\"6\" patternUnits=\"userSpaceOnUse\">"
	       "<path d=\"M0,3 H6\" stroke=\"black\" stroke-width=\"1\"/></pattern>\n"
	       "<marker id=\"head\" markerWidth=\"8\" markerHeight=\"8\" refX=\"4\" refY=\"4\" orient=\"auto\">"
	       "<path d=\"M0,0 L8,4 L0,8 z\"/></marker>\n"
	       "<marker id=\"redhead\" markerWidth=\"8\" markerHeight=\"8\" refX=\"4\" refY=\"4\" orient=\"auto\">"
	       "<path d=\"M0,0 L8,4 L0,8 z\" fill=\"red\"/></marker>\n"
	       "</defs>\n";

	// time axis
	const double axis_y = height - 25;
	svg << "<line class=\"axis\" x1=\"" << num(margin_left) << "\" y1=\"" << num(axis_y) << "\" x2=\""
	    << num(width - 20) << "\" y2=\"" << num(axis_y) << "\" stroke=\"black\"/>\n";
	long long last_tick = static_cast<long long>(std::floor(end.to_double()));
	long long tick_step = std::max(1LL, last_tick / 50);
	for (long long t = 0; t <= last_tick; t += tick_step) {
		double x = x_of(TimeValue(t));
		svg << "<text class=\"tick\" x=\"" << num(x) << "\" y=\"" << num(axis_y + 15)
		    << "\" text-anchor=\"middle\">" << t << "</text>\n";
	}

	for (TaskId id : lanes) {
		double y = base(id);
		svg << "<text class=\"lane\" x=\"" << num(margin_left - 10) << "\" y=\"" << num(y - 8)
		    << "\" text-anchor=\"end\">T" << id << "</text>\n";
		svg << "<line class=\"baseline\" x1=\"" << num(margin_left) << "\" y1=\"" << num(y)
		    << "\" x2=\"" << num(x_of(end)) << "\" y2=\"" << num(y) << "\" stroke=\"black\"/>\n";
	}

	for (const auto& iv : trace.intervals) {
		if (!iv.job)
			continue;
		double x = x_of(iv.start);
		svg << "<rect class=\"exec\" x=\"" << num(x) << "\" y=\"" << num(base(iv.job->task) - box_height)
		    << "\" width=\"" << num(x_of(iv.end) - x) << "\" height=\"" << num(box_height)
		    << "\" fill=\"#9ecae1\" stroke=\"black\"/>\n";
	}

	for (const auto& w : trace.suspensions) {
		double x = x_of(w.start);
		svg << "<rect class=\"susp\" x=\"" << num(x) << "\" y=\"" << num(base(w.job.task) - box_height)
		    << "\" width=\"" << num(x_of(w.end) - x) << "\" height=\"" << num(box_height)
		    << "\" fill=\"url(#hatch)\" stroke=\"black\"/>\n";
	}

	for (const auto& e : trace.events) {
		double x = x_of(e.time);
		double y = base(e.job.task);
		if (e.kind == EventKind::release) {
			const char* cls = e.job.index == 0 ? "release" : "period-boundary";
			svg << "<line class=\"" << cls << "\" x1=\"" << num(x) << "\" y1=\"" << num(y) << "\" x2=\""
			    << num(x) << "\" y2=\"" << num(y - arrow_height) << "\" stroke=\"black\""
			    << " marker-end=\"url(#head)\"";
			if (e.job.index != 0)
				svg << " marker-start=\"url(#head)\"";
			svg << "/>\n";
		} else if (e.kind == EventKind::miss) {
			svg << "<g class=\"miss\"><line x1=\"" << num(x) << "\" y1=\"" << num(y - arrow_height + 6)
			    << "\" x2=\"" << num(x) << "\" y2=\"" << num(y) << "\" stroke=\"red\""
			    << " marker-end=\"url(#redhead)\"/><text x=\"" << num(x) << "\" y=\""
			    << num(y - arrow_height - 2) << "\" fill=\"red\" text-anchor=\"middle\">deadline miss</text></g>\n";
		}
	}
	svg << "</svg>\n";
	return svg.str();
}

std::string render_ascii(const ScheduleTrace& trace)
{
	check_renderable(trace);
	const TimeValue end = trace.end();

	std::vector<TimeValue> times{end};
	for (const auto& iv : trace.intervals) {
		times.push_back(iv.start);
		times.push_back(iv.end);
	}
	for (const auto& w : trace.suspensions) {
		times.push_back(w.start);
		times.push_back(w.end);
	}
	for (const auto& e : trace.events)
		times.push_back(e.time);
	TimeValue step = rational_gcd(times);

	mpz_class cols_z = floor_div(end, step);
	if (cols_z > static_cast<unsigned long>(ascii_max_columns))
		throw RenderError("ASCII chart would need " + cols_z.get_str() + " columns (step "
		                  + step.to_string() + "); use svg");
	auto cols = static_cast<std::size_t>(cols_z.get_ui());
	auto col = [&](const TimeValue& t) { return static_cast<std::size_t>(floor_div(t, step).get_ui()); };

	auto lanes = lanes_of(trace);
	std::map<TaskId, std::string> rows, marks;
	for (TaskId id : lanes) {
		rows[id] = std::string(cols, '.');
		marks[id] = std::string(cols + 1, ' ');
	}
	for (const auto& iv : trace.intervals)
		if (iv.job)
			for (auto c = col(iv.start); c < col(iv.end); ++c)
				rows[iv.job->task][c] = '#';
	for (const auto& w : trace.suspensions)
		for (auto c = col(w.start); c < col(w.end); ++c)
			rows[w.job.task][c] = '~';
	for (const auto& e : trace.events) {
		char& m = marks[e.job.task][col(e.time)];
		if (e.kind == EventKind::miss)
			m = 'X';
		else if (e.kind == EventKind::release && m != 'X')
			m = '^';
	}

	std::ostringstream out;
	out << "time 0.." << end << ", 1 column = " << step << "\n";
	for (TaskId id : lanes) {
		std::string label = "T" + std::to_string(id);
		label.resize(std::max<std::size_t>(label.size(), 4), ' ');
		out << label << "|" << rows[id] << "|\n";
		out << std::string(label.size() + 1, ' ') << marks[id] << "\n";
	}
	out << "legend: # executing  ~ suspended  . not executing  ^ release  X deadline miss\n";
	return out.str();
}

} // namespace suspedf
