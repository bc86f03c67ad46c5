#include "doctest.h"

#include <filesystem>
#include <fstream>
#include <sstream>

#include <unistd.h>

#include "commands.hpp"

using namespace suspedf;
namespace fs = std::filesystem;

namespace {

struct Run
{
	int code;
	std::string out;
	std::string err;
};

Run run(std::vector<std::string> args)
{
	std::ostringstream out, err;
	int code = cli::run(std::move(args), out, err);
	return {code, out.str(), err.str()};
}

struct TempDir
{
	fs::path path;

	TempDir()
	{
		static int counter = 0;
		path = fs::temp_directory_path()
		       / ("suspedf_cli_test_" + std::to_string(::getpid()) + "_" + std::to_string(counter++));
		fs::create_directories(path);
	}
	~TempDir() { fs::remove_all(path); }

	std::string write(const std::string& name, const std::string& text) const
	{
		std::ofstream(path / name) << text;
		return (path / name).string();
	}
};

const char* two_task_quarter =
	R"({"tasks":[{"id":1,"period":"6","wcet":"5","suspension":"1"},{"id":2,"period":"8","wcet":"1/4","suspension":"0"}]})";

} // namespace

TEST_CASE("[cli] analyze")
{
	TempDir dir;
	auto ts = dir.write("ts.json", two_task_quarter);

	auto devi = run({"analyze", "--taskset", ts, "--test", "devi"});
	CHECK(devi.code == 0);
	auto report = json::parse(devi.out);
	CHECK(report["overall"] == true);
	CHECK(report["rows"][1]["lhs"] == "95/96");

	auto obl = run({"analyze", "--taskset", ts, "--test", "oblivious"});
	CHECK(obl.code == 1);
	CHECK(json::parse(obl.out)["rows"][0]["lhs"] == "33/32");

	auto floats = dir.write("f.json",
	                        R"({"tasks":[{"id":1,"period":"8","wcet":0.25,"suspension":"0"}]})");
	auto bad = run({"analyze", "--taskset", floats});
	CHECK(bad.code == 2);
	CHECK(bad.err.find("tasks[0].wcet") != std::string::npos);

	CHECK(run({"analyze", "--taskset", (dir.path / "missing.json").string()}).code == 2);
	CHECK(run({"analyze", "--taskset", ts, "--test", "rm"}).code == 2);
	CHECK(run({"analyze"}).code == 2);
}

TEST_CASE("[cli] simulate")
{
	TempDir dir;
	auto ts = dir.write("ts.json", two_task_quarter);
	auto ps = dir.write("ps.json", R"({"patterns":[
		{"task_id":1,"segments":[{"kind":"exec","dur":"1"},{"kind":"susp","dur":"1"},{"kind":"exec","dur":"4"}]},
		{"task_id":2,"segments":[{"kind":"exec","dur":"1/4"}]}]})");

	auto r = run({"simulate", "--taskset", ts, "--patterns", ps, "--horizon", "24"});
	CHECK(r.code == 1);
	auto trace = trace_from_json(json::parse(r.out));
	REQUIRE(detect_misses(trace).size() == 1);
	CHECK(detect_misses(trace)[0].time == TimeValue(18));

	auto cont = run({"simulate", "--taskset", ts, "--patterns", ps, "--on-miss", "continue"});
	CHECK(cont.code == 1);
	CHECK(trace_from_json(json::parse(cont.out)).horizon == TimeValue(48));

	auto plain_ts = dir.write("plain.json",
	                          R"({"tasks":[{"id":1,"period":"2","wcet":"1","suspension":"0"},{"id":2,"period":"4","wcet":"1","suspension":"0"}]})");
	auto plain_ps = dir.write("plain_ps.json",
	                          R"([{"task_id":1,"segments":[{"kind":"exec","dur":"1"}]},{"task_id":2,"segments":[{"kind":"exec","dur":"1"}]}])");
	CHECK(run({"simulate", "--taskset", plain_ts, "--patterns", plain_ps}).code == 0);

	auto mismatch = run({"simulate", "--taskset", plain_ts, "--patterns", ps});
	CHECK(mismatch.code == 2);
	CHECK_FALSE(mismatch.err.empty());
	CHECK(run({"simulate", "--taskset", ts, "--patterns", ps, "--horizon", "0"}).code == 2);
	CHECK(run({"simulate", "--taskset", ts, "--patterns", ps, "--horizon", "2.5"}).code == 2);
}

TEST_CASE("[cli] render")
{
	TempDir dir;
	auto demo = run({"demo", "--out-dir", dir.path.string()});
	REQUIRE(demo.code == 1);
	auto trace = (dir.path / "trace.json").string();

	auto out_svg = (dir.path / "again.svg").string();
	CHECK(run({"render", "--trace", trace, "--format", "svg", "--out", out_svg}).code == 0);
	std::ifstream f(out_svg);
	std::string svg((std::istreambuf_iterator<char>(f)), std::istreambuf_iterator<char>());
	CHECK(svg.find("deadline miss") != std::string::npos);
	CHECK(svg.find("deadline miss") == svg.rfind("deadline miss"));

	auto ascii = run({"render", "--trace", trace, "--format", "ascii"});
	CHECK(ascii.code == 0);
	CHECK(ascii.out.find("legend") != std::string::npos);

	auto empty = dir.write("empty.json", R"({"horizon":"0","intervals":[],"suspensions":[],"events":[]})");
	CHECK(run({"render", "--trace", empty, "--format", "svg"}).code == 2);
	CHECK(run({"render", "--trace", trace, "--format", "png"}).code == 2);
}

TEST_CASE("[cli] demo")
{
	auto a = run({"demo"});
	CHECK(a.code == 1);
	CHECK(a.out.find("lhs=469/480  pass") != std::string::npos);
	CHECK(a.out.find("first deadline miss: t=18 task 1 job 2") != std::string::npos);
	CHECK(a.out.find("completes at t=363/20") != std::string::npos);
	CHECK(a.out.find("verdict: counterexample") != std::string::npos);
	CHECK(run({"demo"}).out == a.out);

	auto boundary = run({"demo", "--epsilon", "1/3"});
	CHECK(boundary.code == 1);
	CHECK(boundary.out.find("k=2  B=1  B'=0  lhs=1  pass") != std::string::npos);
	CHECK(boundary.err.empty());

	auto half = run({"demo", "--epsilon", "1/2"});
	CHECK(half.out.find("lhs=49/48  fail") != std::string::npos);
	CHECK(half.out.find("not a counterexample for this epsilon") != std::string::npos);
	CHECK(half.err.find("warning") != std::string::npos);

	CHECK(run({"demo", "--epsilon", "0"}).code == 2);
	CHECK(run({"demo", "--epsilon", "-1/4"}).code == 2);
	CHECK(run({"demo", "--epsilon", "0.15"}).code == 2);
}

TEST_CASE("[cli] search")
{
	TempDir dir;
	auto grid = dir.write("grid.json",
	                      R"({"n_tasks":2,"periods":["6","8"],"wcet_step":"1/4","suspensions":["0","1"],"prefix_step":"1"})");
	auto r = run({"search", "--grid", grid, "--max-found", "2", "--threads", "2"});
	CHECK(r.code == 0);
	std::istringstream lines(r.out);
	std::string line;
	int n = 0;
	while (std::getline(lines, line)) {
		CHECK(verify_counterexample(counterexample_from_json(json::parse(line))));
		++n;
	}
	CHECK(n == 2);
	CHECK(r.err.find("checked=") != std::string::npos);
	CHECK(r.err.find("found=2") != std::string::npos);

	auto none = dir.write("none.json",
	                      R"({"n_tasks":2,"periods":["3","4"],"wcet_step":"1","suspensions":["0"],"prefix_step":"1"})");
	auto empty = run({"search", "--grid", none, "--quiet"});
	CHECK(empty.code == 1);
	CHECK(empty.out.empty());
	CHECK(empty.err.empty());

	auto broken = dir.write("broken.json", R"({"periods":["6"],)");
	CHECK(run({"search", "--grid", broken}).code == 2);
	CHECK(run({"search", "--grid", grid, "--threads", "0"}).code == 2);
}

TEST_CASE("[cli] usage errors and help")
{
	CHECK(run({}).code == 2);
	CHECK(run({"frobnicate"}).code == 2);
	CHECK(run({"--help"}).code == 0);
}
