#include <sys/wait.h>

#include <cstdlib>
#include <sstream>

#include <gtest/gtest.h>

#include "tilecraft/cli.hpp"

using tilecraft::cli::json;

namespace {

struct Run {
  int code;
  std::string out, err;
  json report() const { return json::parse(out); }
};

Run run(std::vector<std::string> args) {
  args.insert(args.begin(), "tilecraft");
  std::vector<const char*> argv;
  for (auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  int code = tilecraft::cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

std::string inst(const std::string& name) { return std::string(TILECRAFT_INSTANCES) + "/" + name; }

}  // namespace

TEST(Decide, ExitCodesAndCertificates) {
  auto cb = run({"decide", inst("checkerboard.json")});
  EXPECT_EQ(cb.code, 0);
  EXPECT_EQ(cb.report()["outcome"]["witness"]["rows"], json::parse("[[0,1],[1,0]]"));
  EXPECT_EQ(cb.report()["exit_code"], 0);

  auto cb_ascii = run({"decide", inst("checkerboard.json"), "--ascii"});
  EXPECT_EQ(cb_ascii.out, "NonEmptyPeriodic: 2x2 torus\n01\n10\n");

  auto e = run({"decide", inst("left0_right1.json")});
  EXPECT_EQ(e.code, 1);
  EXPECT_EQ(e.report()["outcome"]["certificate"]["n"], 3);

  auto u = run({"decide", inst("full_shift.json"), "--budget", "0"});
  EXPECT_EQ(u.code, 2);
  EXPECT_EQ(u.report()["outcome"]["kind"], "Undecided");
  EXPECT_TRUE(u.report()["outcome"].contains("note"));

  auto par = run({"decide", inst("checkerboard.json"), "--parallel"});
  EXPECT_EQ(par.code, 0);
  EXPECT_EQ(par.report()["outcome"]["witness"], cb.report()["outcome"]["witness"]);
}

TEST(Decide, InputErrors) {
  auto bad = run({"decide", inst("malformed.json")});
  EXPECT_EQ(bad.code, 3);
  EXPECT_NE(bad.err.find("malformed.json:5:1"), std::string::npos) << bad.err;

  auto schema = run({"decide", inst("bad_schema.json")});
  EXPECT_EQ(schema.code, 4);
  EXPECT_NE(schema.err.find("allowed[1]"), std::string::npos) << schema.err;

  EXPECT_EQ(run({"decide", inst("no_such_file.json")}).code, 5);
  EXPECT_EQ(run({}).code, 5);
  EXPECT_EQ(run({"decide"}).code, 5);
  EXPECT_EQ(run({"decide", inst("checkerboard.json"), "--budget", "lots"}).code, 5);
  EXPECT_EQ(run({"frobnicate", inst("checkerboard.json")}).code, 5);
  EXPECT_EQ(run({"--help"}).code, 0);
}

TEST(Decide, BudgetFromEnvironment) {
  ::setenv("TILECRAFT_BUDGET", "3", 1);
  auto r = run({"decide", inst("checkerboard.json")});
  EXPECT_EQ(r.code, 2);
  EXPECT_EQ(r.report()["budget"], 3);
  EXPECT_EQ(run({"decide", inst("checkerboard.json"), "--budget", "100000"}).code, 0);
  ::setenv("TILECRAFT_BUDGET", "many", 1);
  EXPECT_EQ(run({"decide", inst("checkerboard.json")}).code, 5);
  ::unsetenv("TILECRAFT_BUDGET");
  EXPECT_EQ(run({"decide", inst("checkerboard.json")}).report()["budget"], 10000000);
}

TEST(Report, DigestAndDeterminism) {
  EXPECT_EQ(tilecraft::cli::sha256_hex("abc"), "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
  auto a = run({"decide", inst("ledrappier.json")}).report();
  auto b = run({"decide", inst("ledrappier.json")}).report();
  EXPECT_EQ(a["input_digest"].get<std::string>().rfind("sha256:", 0), 0u);
  EXPECT_TRUE(a.contains("wall_time_ms"));
  a.erase("wall_time_ms");
  b.erase("wall_time_ms");
  EXPECT_EQ(a.dump(), b.dump());
  EXPECT_EQ(a["command"], "decide");
}

TEST(Complexity, Examples) {
  auto cb = run({"complexity", inst("config_checkerboard.json"), "--shape", "rect 2 2", "--window", "0 0 12 12"});
  EXPECT_EQ(cb.code, 0);
  EXPECT_EQ(cb.report()["outcome"]["count"], 2);
  EXPECT_EQ(cb.report()["outcome"]["bound"], 4);

  for (const char* shape : {"rect 1 1", "rect 3 2", "[[0,0],[2,1]]"}) {
    auto c = run({"complexity", inst("config_constant.json"), "--shape", shape});
    EXPECT_EQ(c.code, 0);
    EXPECT_EQ(c.report()["outcome"]["count"], 1);
  }

  auto five = run({"complexity", inst("config_five_patterns.json"), "--shape", "rect 2 2"});
  EXPECT_EQ(five.code, 1);
  EXPECT_EQ(five.report()["outcome"]["count"], 5);

  EXPECT_EQ(run({"complexity", inst("config_five_patterns.json"), "--shape", "rect 2 2", "--window", "0 0 9 9"}).code, 5);
  EXPECT_EQ(run({"complexity", inst("config_constant.json"), "--shape", "disc 3"}).code, 5);
}

TEST(Annihilator, Examples) {
  auto p = run({"annihilator", inst("config_periods_2_3.json")});
  EXPECT_EQ(p.code, 0);
  EXPECT_EQ(p.report()["outcome"]["factored"], "(x^2 - 1)*(y^3 - 1)");
  EXPECT_EQ(p.report()["outcome"]["polynomial"], "x^2*y^3 - y^3 - x^2 + 1");
  EXPECT_EQ(p.report()["outcome"]["verified"], true);

  auto cb = run({"annihilator", inst("config_checkerboard.json"), "--support", "rect 2 2"});
  EXPECT_EQ(cb.code, 0);
  EXPECT_EQ(cb.report()["outcome"]["verified"], true);
  EXPECT_EQ(cb.report()["outcome"]["nullity"], 2);
  EXPECT_NE(cb.report()["outcome"]["polynomial"], "0");

  auto db = run({"annihilator", inst("config_de_bruijn.json")});
  EXPECT_EQ(db.code, 1);
  EXPECT_EQ(db.report()["outcome"]["found"], false);
}

TEST(Determinism, Examples) {
  auto cb = run({"determinism", inst("checkerboard.json"), "--dir", "1,0"});
  EXPECT_EQ(cb.code, 0);
  EXPECT_EQ(cb.report()["outcome"][0]["label"], "two-sided");

  auto fs = run({"determinism", inst("full_shift.json"), "--dir", "1,0", "--k", "3"});
  EXPECT_EQ(fs.code, 1);
  EXPECT_EQ(fs.report()["outcome"][0]["label"], "non-deterministic");
  EXPECT_EQ(fs.report()["outcome"][0]["forward"]["verdict"], "NonForced");

  auto led = run({"determinism", inst("ledrappier.json"), "--dir", "1,0", "--ascii"});
  EXPECT_EQ(led.out, "(1,0): one-sided\n");

  auto inc = run({"determinism", inst("full_shift.json"), "--dir", "1,0", "--budget", "1"});
  EXPECT_EQ(inc.code, 2);

  EXPECT_EQ(run({"determinism", inst("checkerboard.json"), "--dir", "0,0"}).code, 5);
  EXPECT_EQ(run({"determinism", inst("checkerboard.json"), "--dir", "east"}).code, 5);
}

TEST(Balanced, Examples) {
  auto c0 = run({"balanced", inst("config_constant.json"), "--u", "0,1", "--shape", "rect 2 2", "--window", "0 0 10 10"});
  EXPECT_EQ(c0.code, 0);
  const auto counts = c0.report()["outcome"]["counts"];
  EXPECT_EQ(counts["patterns"], 1);
  EXPECT_EQ(counts["inner_patterns"], 1);
  EXPECT_EQ(counts["edge_size"], 2);

  auto cb = run({"balanced", inst("config_checkerboard.json"), "--u", "1,0", "--n", "2", "--m", "2"});
  EXPECT_EQ(cb.code, 0);
  EXPECT_EQ(cb.report()["outcome"]["report"]["balanced"], true);

  auto five = run({"balanced", inst("config_five_patterns.json"), "--u", "0,1", "--n", "2", "--m", "2", "--area", "1",
                   "--window", "0 0 4 4"});
  EXPECT_EQ(five.code, 1);
  EXPECT_EQ(five.report()["outcome"]["low_complexity_warning"], true);

  EXPECT_EQ(run({"balanced", inst("config_constant.json"), "--u", "0,1", "--shape", "[[0,0],[2,0]]"}).code, 5);
  EXPECT_EQ(run({"balanced", inst("config_constant.json"), "--u", "0,1"}).code, 5);
}

TEST(Binary, ExitStatusPropagates) {
  auto status = [](const std::string& args) {
    const std::string cmd = std::string(TILECRAFT_BINARY) + " " + args + " > /dev/null 2>&1";
    const int s = std::system(cmd.c_str());
    return WIFEXITED(s) ? WEXITSTATUS(s) : -1;
  };
  EXPECT_EQ(status("decide " + inst("checkerboard.json")), 0);
  EXPECT_EQ(status("decide " + inst("left0_right1.json")), 1);
  EXPECT_EQ(status("decide " + inst("full_shift.json") + " --budget 0"), 2);
  EXPECT_EQ(status("decide " + inst("malformed.json")), 3);
  EXPECT_EQ(status("decide " + inst("bad_schema.json")), 4);
}
