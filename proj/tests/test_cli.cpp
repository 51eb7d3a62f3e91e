#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "lvie/cli.hpp"

namespace fs = std::filesystem;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = lvie::run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

std::string config(const char* name) { return std::string(LVIE_SOURCE_DIR) + "/configs/" + name; }

std::vector<std::string> lines_of(const std::string& text) {
  std::vector<std::string> lines;
  std::istringstream in(text);
  for (std::string line; std::getline(in, line);) lines.push_back(line);
  return lines;
}

}  // namespace

TEST_CASE("list-problems") {
  const auto r = run({"list-problems"});
  CHECK(r.code == 0);
  CHECK(r.out.find("model1") != std::string::npos);
  CHECK(r.out.find("model2") != std::string::npos);
}

TEST_CASE("solve writes the nodal solution") {
  const fs::path path = fs::temp_directory_path() / "lvie_cli_solve.csv";
  const auto r = run({"solve", "--builtin", "model1", "--h", "1/32", "--out", path.string()});
  REQUIRE(r.code == 0);
  CHECK(r.out.find("N=34") != std::string::npos);
  CHECK(r.out.find("eps=1.9") != std::string::npos);

  std::ifstream in(path);
  std::stringstream buf;
  buf << in.rdbuf();
  const auto lines = lines_of(buf.str());
  REQUIRE(lines.size() == 36);  // header plus N + 1 nodes
  CHECK(lines[0] == "t,x");
  CHECK(lines[1].rfind("0.0000000000000000e+00,", 0) == 0);
  fs::remove(path);

  const auto to_stdout = run({"solve", "--builtin", "model2", "--h", "0.25", "--solver", "structured"});
  CHECK(to_stdout.code == 0);
  CHECK(lines_of(to_stdout.out).front() == "t,x");
  CHECK(to_stdout.err.find("nodes=") != std::string::npos);
}

TEST_CASE("user errors exit with status 1") {
  const auto zero = run({"solve", "--builtin", "model1", "--h", "0"});
  CHECK(zero.code == 1);
  CHECK(zero.err.find("h must be positive") != std::string::npos);

  CHECK(run({"solve", "--builtin", "model1", "--h", "2"}).code == 1);
  CHECK(run({"solve", "--builtin", "model3", "--h", "1/8"}).code == 1);
  CHECK(run({"solve", "--builtin", "model1"}).code == 1);
  CHECK(run({"solve", "--builtin", "model1", "--config", config("model1.cfg"), "--h", "1/8"}).code == 1);

  const auto missing = run({"solve", "--config", "/nonexistent/x.cfg", "--h", "1/8"});
  CHECK(missing.code == 1);
  CHECK(missing.err.find("cannot open") != std::string::npos);

  CHECK(run({"study", "--builtin", "model1", "--format", "xml"}).code == 1);
  CHECK(run({"frobnicate"}).code == 1);
  CHECK(run({}).code == 1);
  CHECK(run({"--help"}).code == 0);
}

TEST_CASE("config files reproduce the builtins") {
  const auto a = run({"study", "--builtin", "model1", "--levels", "3", "--no-timing"});
  const auto b = run({"study", "--config", config("model1.cfg"), "--levels", "3", "--no-timing"});
  REQUIRE(a.code == 0);
  REQUIRE(b.code == 0);
  CHECK(a.out == b.out);

  const auto c = run({"study", "--builtin", "model2", "--levels", "3", "--no-timing"});
  const auto d = run({"study", "--config", config("model2.cfg"), "--levels", "3", "--no-timing"});
  CHECK(c.out == d.out);
}

TEST_CASE("study formats") {
  const auto md = run({"study", "--builtin", "model2", "--h0", "1/8", "--levels", "6", "--format", "md", "--no-timing"});
  REQUIRE(md.code == 0);
  const auto lines = lines_of(md.out);
  REQUIRE(lines.size() == 8);
  CHECK(lines[2].rfind("| 1/8 | 7.99", 0) == 0);
  CHECK(lines[7].rfind("| 1/256 |", 0) == 0);

  const auto csv = run({"study", "--builtin", "model1", "--levels", "2"});
  REQUIRE(csv.code == 0);
  CHECK(lines_of(csv.out).at(0) == "h,N,eps,r,wall_time_s");
  CHECK(lines_of(csv.out).size() == 3);
}

TEST_CASE("analyze") {
  const auto one = run({"analyze", "--builtin", "model1"});
  REQUIRE(one.code == 0);
  const auto lines = lines_of(one.out);
  REQUIRE(lines.size() == 2);
  CHECK(lines[0] == "lambda,detA,rank,classification,orthogonality_defect");
  CHECK(lines[1].find(",2,unique,") != std::string::npos);

  const auto sweep = run({"analyze", "--builtin", "model2", "--lambda-from", "-1", "--lambda-to", "1", "--steps", "11"});
  REQUIRE(sweep.code == 0);
  CHECK(lines_of(sweep.out).size() == 12);

  const auto family = run({"analyze", "--config", config("singular_family.cfg")});
  REQUIRE(family.code == 0);
  CHECK(family.out.find("family(1)") != std::string::npos);
  const auto none = run({"analyze", "--config", config("singular_inconsistent.cfg")});
  REQUIRE(none.code == 0);
  CHECK(none.out.find("no_solution") != std::string::npos);

  CHECK(run({"analyze", "--builtin", "model1", "--lambda-from", "0"}).code == 1);
  CHECK(run({"solve", "--config", config("singular_inconsistent.cfg"), "--h", "1/8"}).code == 1);
}
