#include <sys/wait.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <gtest/gtest.h>

#include "ramsey/colorings.hpp"

using ramsey::json;

namespace {

struct Run {
  int code = -1;
  std::string out;
  std::string err;
  json j() const { return json::parse(out); }
};

std::filesystem::path scratch() {
  auto dir = std::filesystem::temp_directory_path() / ("ramsey_cli_test_" + std::to_string(::getpid()));
  std::filesystem::create_directories(dir);
  return dir;
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Run cli(const std::string& args, const std::string& env = "") {
  const auto err_path = scratch() / "stderr.txt";
  const std::string cmd = env + (env.empty() ? "" : " ") + RAMSEY_CLI_PATH + " " + args + " 2>" + err_path.string();
  Run r;
  FILE* pipe = ::popen(cmd.c_str(), "r");
  if (pipe == nullptr) return r;
  char buf[4096];
  std::size_t got = 0;
  while ((got = std::fread(buf, 1, sizeof buf, pipe)) > 0) r.out.append(buf, got);
  const int status = ::pclose(pipe);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  r.err = slurp(err_path);
  return r;
}

}  // namespace

TEST(Cli, UsageErrorsExitTwo) {
  EXPECT_EQ(cli("").code, 2);
  EXPECT_EQ(cli("frobnicate").code, 2);
  EXPECT_EQ(cli("delta").code, 2);  // --set is required
  EXPECT_EQ(cli("--help").code, 0);
  EXPECT_EQ(cli("delta --set nope").code, 2);
  EXPECT_EQ(cli("delta --set '{\"kind\":\"geometric\"'").code, 2);
}

TEST(Cli, SetEnumerationAndGrowth) {
  auto r = cli("set --set fibonacci --bound 15");
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(r.j()["elements"], json::parse("[1,2,3,5,8,13]"));
  auto inline_json = cli("set --set '{\"kind\":\"nonmultiples\",\"m\":3}' --bound 8");
  EXPECT_EQ(inline_json.j()["elements"], json::parse("[1,2,4,5,7,8]"));
  auto file = scratch() / "set.json";
  std::ofstream(file) << R"({"kind":"polynomial","coeffs":["1/2","1/2","0"]})";
  EXPECT_EQ(cli("set --set " + file.string() + " --bound 30").j()["elements"], json::parse("[1,3,6,10,15,21,28]"));

  auto growth = cli("set --set fibonacci --growth 3");
  EXPECT_EQ(growth.code, 1);
  EXPECT_EQ(growth.j()["growth"]["counterexample"]["d_next"], "2");
  EXPECT_EQ(cli("set --set even_fibonacci --bound 100000000 --growth 4").code, 0);
  EXPECT_EQ(cli("set --set fibonacci --growth 1.5").code, 2);
  // huge elements come back as strings
  auto big = cli("set --set geometric:2 --bound 100000000000000000000000");
  EXPECT_TRUE(big.j()["elements"].back().is_string());
}

TEST(Cli, AlphaTrace) {
  auto r = cli("alpha --q 1,4,16,64 -r 2 --delta 1 --steps 4");
  ASSERT_EQ(r.code, 0) << r.err;
  auto c = r.j()["certificate"];
  EXPECT_EQ(c["alpha"], "341/1024");
  EXPECT_EQ(c["z"], json::parse(R"(["0","1","5","21"])"));
  EXPECT_EQ(c["intervals"][3]["lo"], "169/512");
  EXPECT_EQ(c["intervals"][3]["hi"], "43/128");
  EXPECT_EQ(c["eps"], "1/8");

  auto from_set = cli("alpha --set geometric:4 --delta 1 --steps 20");
  ASSERT_EQ(from_set.code, 0) << from_set.err;
  EXPECT_EQ(from_set.j()["certificate"]["z"].size(), 20U);

  auto bad = cli("alpha --q 1,2 --delta 1");
  EXPECT_EQ(bad.code, 2);
  EXPECT_NE(bad.err.find("n = 1"), std::string::npos);
  auto decimal = cli("alpha --q 1,4 --delta 0.5");
  EXPECT_EQ(decimal.code, 2);
  EXPECT_NE(decimal.err.find("decimals"), std::string::npos);
}

TEST(Cli, Pipeline) {
  auto geo = cli("pipeline --set geometric:4 -r 2 --delta 1 --steps 20 -N 20000");
  ASSERT_EQ(geo.code, 0) << geo.err;
  EXPECT_EQ(geo.j()["verdict"], "pass");
  EXPECT_EQ(geo.j()["parameters"]["bound"], "5");
  EXPECT_EQ(geo.j()["parameters"]["eps"], "1/8");

  auto fib = cli("pipeline --set fibonacci -r 2 --delta 1/2");
  EXPECT_EQ(fib.code, 2);
  EXPECT_NE(fib.err.find("growth factor 7/2"), std::string::npos) << fib.err;

  auto three = cli("pipeline --set geometric:8 -r 3 --delta 1 -N 20000");
  ASSERT_EQ(three.code, 0) << three.err;
  EXPECT_EQ(three.j()["parameters"]["eps"], "4/21");
  EXPECT_EQ(three.j()["parameters"]["bound"], "3");

  // too few steps to cover every gap up to N
  EXPECT_EQ(cli("pipeline --set geometric:4 --steps 3 -N 20000").code, 2);
}

TEST(Cli, ColorScanRoundTrip) {
  auto path = scratch() / "chi.json";
  auto r = cli("color --coloring sqrt5over8 -N 50000 --out " + path.string());
  ASSERT_EQ(r.code, 0) << r.err;
  auto chi = ramsey::coloring_from_rle_json(json::parse(slurp(path)));
  EXPECT_EQ(chi, ramsey::preset_coloring("sqrt5over8", 50000));

  auto ap = cli("scan --coloring " + path.string() + " --set fibonacci --structure ap --max-k 5");
  EXPECT_EQ(ap.code, 0) << ap.err;
  EXPECT_EQ(ap.j()["result"]["length"], 5);
  EXPECT_EQ(cli("scan --coloring " + path.string() + " --set fibonacci --structure ap --max-k 4").code, 1);

  auto ef = cli("scan --coloring oneplusphiover4 -N 50000 --set even_fibonacci --max-k 3");
  EXPECT_EQ(ef.code, 0) << ef.err;
  EXPECT_EQ(ef.j()["result"]["length"], 3);

  EXPECT_EQ(cli("color --coloring block:2 -N 8 --format text").out, "11221122\n");
  auto text = scratch() / "chi.txt";
  cli("color --coloring residue:3 -N 30 --format text --out " + text.string());
  auto pair = cli("scan --coloring " + text.string() + " --set nonmultiples:3 --structure pair");
  EXPECT_EQ(pair.j()["result"]["length"], 1);
  EXPECT_EQ(cli("scan --coloring sqrt5over8 --set fibonacci").code, 2);  // preset needs -N
}

TEST(Cli, DeltaAndWitness) {
  auto witness = scratch() / "w.json";
  auto r = cli("delta --set nonmultiples:3 -k 2 -r 2 --budget 10 --emit-witness " + witness.string());
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(r.j()["verdict"], "delta");
  EXPECT_EQ(r.j()["delta"], 3);
  EXPECT_EQ(json::parse(slurp(witness))["runs"], json::parse("[[1,1],[2,1]]"));

  auto unknown = cli("delta --set explicit:1 -k 2 -r 2 --budget 50");
  EXPECT_EQ(unknown.j()["verdict"], "unknown");
  EXPECT_EQ(unknown.j()["witness"]["N"], 50);
  EXPECT_EQ(cli("delta --set explicit:1 -k 2 -r 2 --budget 0").code, 2);
}

TEST(Cli, ThreadCountDoesNotChangeResults) {
  auto strip = [](json j) {
    j.erase("elapsed_ms");
    j.erase("threads");
    return j;
  };
  auto one = cli("delta --set nonmultiples:3 -k 8 -r 2 --budget 200", "RAMSEY_THREADS=1");
  auto four = cli("delta --set nonmultiples:3 -k 8 -r 2 --budget 200", "RAMSEY_THREADS=4");
  ASSERT_EQ(one.code, 0);
  EXPECT_EQ(one.j()["threads"], 1);
  EXPECT_EQ(four.j()["threads"], 4);
  EXPECT_EQ(strip(one.j()), strip(four.j()));
  auto flag = cli("delta --set nonmultiples:3 -k 8 -r 2 --budget 200 --threads 3", "RAMSEY_THREADS=1");
  EXPECT_EQ(flag.j()["threads"], 3);
  EXPECT_EQ(strip(flag.j()), strip(one.j()));
}

TEST(Cli, Chromatic) {
  auto pow2 = cli("chromatic --set geometric:2 -N 5 --min-lower 3");
  ASSERT_EQ(pow2.code, 0) << pow2.err;
  EXPECT_GE(pow2.j()["lower"].get<int>(), 3);
  auto v3 = cli("chromatic --set nonmultiples:3 -N 12 --exact-limit 12");
  EXPECT_EQ(v3.j()["lower"], 3);
  EXPECT_EQ(v3.j()["upper"], 3);
  EXPECT_TRUE(v3.j()["exact"].get<bool>());
  EXPECT_EQ(cli("chromatic --set explicit:1 -N 10 --min-lower 3").code, 1);
}

TEST(Cli, Complexity) {
  auto golden = cli("complexity --coloring golden -N 10000 --assert-sturmian");
  ASSERT_EQ(golden.code, 0) << golden.err;
  EXPECT_EQ(golden.j()["complexity"], json::parse("[2,3,4,5,6,7,8,9,10,11,12,13]"));
  EXPECT_EQ(cli("complexity --coloring residue:2 -N 100 --assert-sturmian").code, 1);
}

TEST(Cli, Reproduce) {
  auto quick = cli("reproduce --scale quick");
  ASSERT_EQ(quick.code, 0) << quick.err;
  EXPECT_TRUE(quick.j()["pass"].get<bool>());
  EXPECT_EQ(quick.j()["claims"].size(), 12U);
  EXPECT_NE(quick.err.find("all claims pass"), std::string::npos);

  auto control = cli("reproduce --only dist_sqrt5_fib,fib_ap_sqrt5 --override-alpha sqrt5over8=1/2");
  EXPECT_EQ(control.code, 1);
  EXPECT_EQ(control.j()["claims"][0]["verdict"], "fail");

  EXPECT_EQ(cli("reproduce --only nope").code, 2);
  EXPECT_EQ(cli("reproduce --override-alpha nope=1/2").code, 2);
  EXPECT_EQ(cli("reproduce --scale medium").code, 2);
}
