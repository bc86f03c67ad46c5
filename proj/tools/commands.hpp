#ifndef SUSPEDF_TOOLS_COMMANDS_HPP
#define SUSPEDF_TOOLS_COMMANDS_HPP

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "suspedf/suspedf.hpp"

namespace suspedf::cli {

// Exit codes shared by every command.
enum ExitCode : int { exit_ok = 0, exit_negative = 1, exit_input_error = 2 };

// tau_1 = (T 6, C 5, S 1), tau_2 = (T 8, C epsilon, S 0).
TaskSet demo_taskset(const TimeValue& epsilon);

// tau_1 executes 1, suspends 1, executes 4; tau_2 executes epsilon.
std::vector<SuspensionPattern> demo_patterns(const TaskSet& demo);

inline const TimeValue default_epsilon{3, 20};

int cmd_analyze(const std::string& taskset_path, const std::string& test, std::ostream& out,
                std::ostream& err);

int cmd_simulate(const std::string& taskset_path, const std::string& patterns_path,
                 const std::optional<std::string>& horizon, const std::string& on_miss,
                 std::ostream& out, std::ostream& err);

int cmd_render(const std::string& trace_path, const std::string& format,
               const std::optional<std::string>& out_path, std::ostream& out, std::ostream& err);

int cmd_demo(const std::string& epsilon, const std::optional<std::string>& out_dir,
             std::ostream& out, std::ostream& err);

int cmd_search(const std::string& grid_path, std::optional<std::size_t> max_found,
               std::optional<double> time_budget_seconds, unsigned threads, bool quiet,
               std::ostream& out, std::ostream& err);

// Full command line without the program name.
int run(std::vector<std::string> args, std::ostream& out, std::ostream& err);

} // namespace suspedf::cli

#endif
